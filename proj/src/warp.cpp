#include "warped/warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "warped/errors.hpp"

namespace warped {

namespace {

Rhs2 warp_rhs(const CurvatureProfile& profile)
{
    return [&profile](double t, const Vec2& y) -> Vec2 {
        return {y[1], -profile.evaluate(t) * y[0]};
    };
}

void require_domain(const CurvatureProfile& profile, double end, const char* who)
{
    if (auto tm = profile.t_max(); tm && end > *tm * (1.0 + 1e-12))
        throw std::invalid_argument(std::string(who) + ": profile domain ends at t = " +
                                    format_double(*tm) + " < " + format_double(end));
}

} // namespace

std::array<double, 2> WarpFunction::eval(double t) const
{
    if (!(t >= 0.0) || t > l * (1.0 + 1e-12))
        throw EvalError("warp evaluated outside [0, l], t = " + format_double(t));
    return sol.value(std::min(t, l));
}

double WarpFunction::d2f(double t) const
{
    if (!(t >= 0.0) || t > l * (1.0 + 1e-12))
        throw EvalError("warp evaluated outside [0, l], t = " + format_double(t));
    return sol.derivative(std::min(t, l))[1];
}

WarpFunction integrate_warp(const CurvatureProfile& profile, double l, OdeTolerance tol)
{
    if (!(l > 0.0))
        throw std::invalid_argument("integrate_warp: l must be positive");
    require_domain(profile, l, "integrate_warp");
    DenseSolution sol = integrate(warp_rhs(profile), {0.0, 1.0}, 0.0, l, tol);
    return WarpFunction{profile, l, std::move(sol), tol};
}

ClosingLength find_closing_length(const CurvatureProfile& profile, double t_max, double tolerance)
{
    if (!(t_max > 0.0))
        throw std::invalid_argument("find_closing_length: t_max must be positive");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("find_closing_length: tolerance must be positive");
    require_domain(profile, t_max, "find_closing_length");

    // Stop as soon as one accepted step carries f to or below zero; the
    // remaining interval (where the profile may even be undefined) is
    // never touched.
    auto crosses = [](const DenseStep& step) {
        DenseSolution one({step}, step.t0, step.t0 + step.h);
        for (int i = 1; i <= 8; ++i)
            if (one.value(step.t0 + step.h * (i / 8.0))[0] <= 0.0)
                return true;
        return false;
    };
    DenseSolution sol = integrate(warp_rhs(profile), {0.0, 1.0}, 0.0, t_max, {}, crosses);

    const DenseStep& lastStep = sol.steps().back();
    double t_hi = lastStep.t0 + lastStep.h;
    if (sol.value(t_hi)[0] > 0.0 && !crosses(lastStep))
        return {};

    // Bracket inside the final step, then bisect the dense output.
    double a = lastStep.t0;
    double b = t_hi;
    for (int i = 1; i <= 8; ++i) {
        double tt = lastStep.t0 + lastStep.h * (i / 8.0);
        if (sol.value(tt)[0] <= 0.0) {
            b = tt;
            break;
        }
        a = tt;
    }
    for (int iter = 0; iter < 200 && b - a > 1e-13 * std::max(1.0, b); ++iter) {
        double mid = 0.5 * (a + b);
        (sol.value(mid)[0] <= 0.0 ? b : a) = mid;
    }
    double root = 0.5 * (a + b);
    double residual = std::abs(sol.value(root)[0]);
    if (residual > tolerance)
        throw SolveError("closing-length refinement stalled: |f| = " + format_double(residual));
    return {true, root, residual};
}

AdmissibilityReport check_admissibility(const WarpFunction& warp, double tolerance)
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("check_admissibility: tolerance must be positive");
    const int N = 2048;
    const double l = warp.l;

    AdmissibilityReport rep;
    rep.tolerance = tolerance;
    rep.closes = std::abs(warp.f(l)) <= tolerance;
    rep.end_slope = warp.df(l);

    rep.positive_interior = true;
    for (int i = 1; i < N; ++i) {
        double t = l * i / N;
        double fv = warp.f(t);
        if (!(fv > 0.0))
            rep.positive_interior = false;
        rep.max_symmetry_defect = std::max(rep.max_symmetry_defect, std::abs(fv - warp.f(l - t)));
    }
    for (int i = 0; i <= N; ++i) {
        double t = l * i / N;
        double res = std::abs(warp.d2f(t) + warp.profile.evaluate(t) * warp.f(t));
        rep.ode_residual = std::max(rep.ode_residual, res);
    }
    return rep;
}

} // namespace warped
