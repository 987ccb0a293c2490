#pragma once

#include <array>
#include <functional>
#include <vector>

namespace warped {

using Vec2 = std::array<double, 2>;
using Rhs2 = std::function<Vec2(double, const Vec2&)>;

struct OdeTolerance {
    double rel = 1e-10;
    double abs = 1e-12;
};

// Interpolation coefficients of one accepted step; the contiguous
// extension is evaluated via
//   y(t0 + th*h) = c0 + th*(c1 + (1-th)*(c2 + th*(c3 + (1-th)*c4))).
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec2, 5> c{};
};

// Piecewise-polynomial solution with continuous value and derivative.
class DenseSolution {
  public:
    DenseSolution() = default;
    DenseSolution(std::vector<DenseStep> steps, double t_begin, double t_end);

    double t_begin() const
    {
        return t_begin_;
    }
    double t_end() const
    {
        return t_end_;
    }
    const std::vector<DenseStep>& steps() const
    {
        return steps_;
    }

    Vec2 value(double t) const;
    // d/dt of the interpolant, component-wise.
    Vec2 derivative(double t) const;

  private:
    const DenseStep& locate(double t) const;

    std::vector<DenseStep> steps_;
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
};

// Adaptive Dormand-Prince 5(4) from t0 to t1 (t1 > t0). The optional
// stop_after predicate sees each accepted step; returning true ends the
// integration after that step (used for event location on the dense
// output). Throws SolveError on step-size underflow and propagates
// exceptions from the right-hand side.
DenseSolution integrate(const Rhs2& rhs, Vec2 y0, double t0, double t1,
                        OdeTolerance tol = {},
                        const std::function<bool(const DenseStep&)>& stop_after = {});

} // namespace warped
