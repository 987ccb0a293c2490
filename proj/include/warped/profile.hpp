#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warped/expr.hpp"

namespace warped {

// Radial curvature function k(t), immutable after construction.
//
// Four backings:
//   constant    k(t) = K
//   rational    P(t-c)/Q(t-c), coefficients low-to-high degree
//   expression  parsed syntax tree
//   tabulated   sorted (t, k) samples, monotone cubic interpolation
//
// The declared domain is [0, t_max]; t_max is absent for profiles valid
// for all t >= 0. Evaluation outside the domain or at a pole throws
// EvalError (non-finite values are never returned silently).
class CurvatureProfile {
  public:
    enum class Kind { Constant, Rational, Expression, Tabulated };

    static CurvatureProfile constant(double K, std::string text = {});
    static CurvatureProfile rational(std::vector<double> num, std::vector<double> den, double shift,
                                     std::string text = {});
    static CurvatureProfile expression(ExprPtr ast, std::string text = {});
    // Throws std::invalid_argument unless abscissae start at 0 and
    // strictly increase.
    static CurvatureProfile tabulated(std::vector<double> t, std::vector<double> k);

    Kind kind() const
    {
        return kind_;
    }
    const char* kind_name() const;
    const std::string& text() const
    {
        return text_;
    }
    std::optional<double> t_max() const
    {
        return t_max_;
    }

    // Returns a copy with the declared domain restricted to [0, t_max].
    CurvatureProfile with_domain(double t_max) const;

    double evaluate(double t) const;

  private:
    CurvatureProfile() = default;
    friend CurvatureProfile scale_profile(const CurvatureProfile&, double);

    Kind kind_ = Kind::Constant;
    double K_ = 0.0;
    std::vector<double> num_, den_;
    double shift_ = 0.0;
    ExprPtr ast_;
    std::vector<double> tab_t_, tab_k_, tab_slope_;
    std::optional<double> t_max_;
    std::string text_;
};

struct SymmetryReport {
    double l = 0.0;
    double max_asymmetry = 0.0;
    double tolerance = 0.0;
    bool symmetric = false;
    int samples = 0;
};

// Parses an expression and classifies it: a bare polynomial becomes
// constant (degree 0) or rational (denominator 1); a top-level ratio of
// polynomials becomes rational with expanded coefficients; everything
// else stays an expression tree.
CurvatureProfile parse_profile(const std::string& text);

// Canonical reparsable text. Rational profiles are printed in Horner
// form so the reparse evaluates bit-identically. Not defined for
// tabulated profiles (those round-trip through JSON instead).
std::string print_profile(const CurvatureProfile& profile);

// Max over an equispaced grid on (0, l/2) of |k(t) - k(l-t)|.
SymmetryReport check_symmetry(const CurvatureProfile& profile, double l, double tolerance = 1e-9,
                              int samples = 1024);

// k_s(t) := s^2 * k(s*t), domain [0, t_max/s].
CurvatureProfile scale_profile(const CurvatureProfile& profile, double s);

// Named profiles: "sphere" (constant K), "flat" (K=0), and the two
// rational examples "paper-a", "paper-b".
CurvatureProfile builtin_profile(const std::string& name, double K = 1.0);

} // namespace warped
