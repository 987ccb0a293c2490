#pragma once

#include <array>

#include "warped/ode.hpp"
#include "warped/profile.hpp"

namespace warped {

// Solution of f'' + k(t) f = 0 with f(0) = 0, f'(0) = 1 over [0, l].
// l is the end of the integrated domain; for closing profiles it is the
// closing length (first positive zero of f).
struct WarpFunction {
    CurvatureProfile profile;
    double l = 0.0;
    DenseSolution sol;
    OdeTolerance tolerance;

    // Interpolated (f, f'); exact (0, 1) at t = 0. Interpolation error
    // is bounded by roughly 10x the integrator tolerance.
    std::array<double, 2> eval(double t) const;
    double f(double t) const
    {
        return eval(t)[0];
    }
    double df(double t) const
    {
        return eval(t)[1];
    }
    // Second derivative from the dense interpolant (d/dt of the f'
    // component), not from the ODE right-hand side.
    double d2f(double t) const;
};

struct AdmissibilityReport {
    bool closes = false;            // |f(l)| <= tolerance
    bool positive_interior = false; // f > 0 at all interior grid points
    double end_slope = 0.0;         // f'(l); -1 for symmetric closing profiles
    double max_symmetry_defect = 0.0;
    double ode_residual = 0.0; // max |f'' + k f| on the grid
    double tolerance = 0.0;
};

// First-class outcome: flat/hyperbolic profiles legitimately never
// close.
struct ClosingLength {
    bool closes = false;
    double l = 0.0;      // valid only when closes
    double residual = 0.0; // |f(l)| at the located zero
};

WarpFunction integrate_warp(const CurvatureProfile& profile, double l, OdeTolerance tol = {});

// Integrates from t = 0 and locates the first zero of f in (0, t_max]
// by sign scanning on the dense output plus bisection to ~1e-12 in t.
ClosingLength find_closing_length(const CurvatureProfile& profile, double t_max,
                                  double tolerance = 1e-10);

// Evaluates every report field on a grid of >= 1024 points.
AdmissibilityReport check_admissibility(const WarpFunction& warp, double tolerance = 1e-8);

} // namespace warped
