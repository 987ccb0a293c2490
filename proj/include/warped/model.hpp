#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "warped/warp.hpp"

namespace warped {

// Spherically symmetric manifold [0, l) x_f S^{n-1} with metric
// dt^2 + f(t)^2 |dxi|^2. `closes` records whether f(l) = 0 (within the
// builder's tolerance); non-closing models are legitimate inputs for
// ball eigenvalue problems.
struct ModelSpace {
    int n = 2;
    WarpFunction warp;
    std::string description;
    bool closes = false;

    ModelSpace(int n_, WarpFunction warp_, std::string desc, bool closes_)
        : n(n_), warp(std::move(warp_)), description(std::move(desc)), closes(closes_)
    {
        if (n < 2)
            throw std::invalid_argument("ModelSpace: dimension must be >= 2");
    }

    double l() const
    {
        return warp.l;
    }

    // Radial sectional curvature -f''/f recovered from the dense
    // solution; agrees with k(t) up to solver error. Defined on (0, l).
    double radial_curvature(double t) const
    {
        return -warp.d2f(t) / warp.f(t);
    }

    // Ric(d/dt, d/dt) = -(n-1) f''/f.
    double radial_ricci(double t) const
    {
        return (n - 1) * radial_curvature(t);
    }
};

} // namespace warped
