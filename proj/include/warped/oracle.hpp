#pragma once

#include <variant>
#include <vector>

#include "warped/model.hpp"

namespace warped {

struct BallProblem {
    double r = 0.0;
    int m = 0;
};
struct ClosedProblem {
    int m = 0;
};

// Generalized symmetric tridiagonal pencil (A, B) from the cell-centered
// discretization of -(f^{n-1} phi')' + m(m+n-2) f^{n-3} phi = L f^{n-1} phi.
// B is the positive diagonal mass matrix. No unknown sits at a pole: the
// grid is staggered by half a cell, and pole boundary conditions are
// realized by vanishing face weights.
struct TridiagonalPencil {
    std::vector<double> diag;    // stiffness diagonal, potential folded in
    std::vector<double> offdiag; // size N-1, entries <= 0
    std::vector<double> mass;    // diagonal of B, strictly positive
    std::vector<double> grid;    // cell centers
    double h = 0.0;
    std::variant<BallProblem, ClosedProblem> problem;
};

// Dirichlet ball of radius r: natural closure at t = 0, ghost-cell
// reflection (phi_ghost = -phi_N) at t = r.
TridiagonalPencil discretize_ball(const ModelSpace& model, double r, int m, int N);

// Closed manifold over (0, l): natural closures at both poles. For
// m = 0 the constants are exactly in the kernel.
TridiagonalPencil discretize_closed(const ModelSpace& model, int m, int N);

// The `count` smallest generalized eigenvalues, increasing, via
// Sturm-sequence bisection on B^{-1/2} A B^{-1/2}.
std::vector<double> smallest_eigenvalues(const TridiagonalPencil& pencil, int count);

// Eigenvector (of the symmetrized problem; same sign pattern as phi) by
// shifted inverse iteration. Deterministic.
std::vector<double> pencil_eigenvector(const TridiagonalPencil& pencil, double lambda);

// Sign changes of a sample sequence, exact zeros counted as one change.
int count_sign_changes(const std::vector<double>& values);

double richardson_extrapolate(double value_N, double value_2N, int order);

// Smallest ball eigenvalue at grids N/2 and N, Richardson-extrapolated.
double ball_lambda1_extrapolated(const ModelSpace& model, double r, int m, int N);

// First `count` closed eigenvalues at grids N/2 and N, extrapolated
// index by index.
std::vector<double> closed_spectrum_extrapolated(const ModelSpace& model, int m, int count, int N);

} // namespace warped
