#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "warped/model.hpp"

namespace warped {

// Regular solution phi of
//   phi'' + (n-1)(f'/f) phi' + (Lambda - m(m+n-2)/f^2) phi = 0
// on (0, r]. The coefficient (n-1) f'/f ~ (n-1)/t is singular at the
// pole, so integration starts at a series offset eps with the two-term
// Frobenius expansion phi ~ t^m (1 + c2 t^2); below eps the series is
// used directly. Normalization: phi(0) = 1 for m = 0, leading
// coefficient 1 for m >= 1.
class RadialEigenfunction {
  public:
    RadialEigenfunction() = default;
    RadialEigenfunction(int m, double c2, double eps, DenseSolution tail)
        : m_(m), c2_(c2), eps_(eps), tail_(std::move(tail))
    {
    }

    double value(double t) const;
    double derivative(double t) const;
    double eps() const
    {
        return eps_;
    }
    const DenseSolution& tail() const
    {
        return tail_;
    }

  private:
    int m_ = 0;
    double c2_ = 0.0;
    double eps_ = 0.0;
    DenseSolution tail_;
};

struct ShootResult {
    double lambda_trial = 0.0;
    double phi_end = 0.0;
    double dphi_end = 0.0;
    int interior_nodes = 0;
    RadialEigenfunction phi;
};

struct EigenResult {
    double lambda = 0.0;
    int mode_m = 0;
    double radius = 0.0;
    RadialEigenfunction phi;
    std::vector<std::array<double, 2>> samples; // (t, phi)
    int node_count = 0;
    double boundary_residual = 0.0;
    double rayleigh_defect = 0.0;
    double cross_check_diff = 0.0; // |shooting - oracle|; 0 until cross-checked
    std::string method = "shooting";
};

ShootResult shoot(const ModelSpace& model, int m, double lambda, double r, OdeTolerance tol = {});

// Smallest Lambda with phi(r) = 0 and no interior node: bracket growth
// (doubling) followed by bisection on the sign of phi_end, stopping when
// the interval width is <= tolerance * max(1, Lambda).
EigenResult lambda1_ball(const ModelSpace& model, double r, int m = 0, double tolerance = 1e-8);

std::vector<double> eigenfunction_samples(const ModelSpace& model, const EigenResult& result,
                                          const std::vector<double>& grid);

// Radial Rayleigh quotient with weight f^{n-1} by composite Simpson;
// phi(t) must return (value, derivative).
double rayleigh_quotient(const ModelSpace& model,
                         const std::function<std::array<double, 2>(double)>& phi, double r);

} // namespace warped
