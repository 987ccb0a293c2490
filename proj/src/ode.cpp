#include "warped/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "warped/errors.hpp"

namespace warped {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0,
                 A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;
// Embedded 4th-order error weights.
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
// Dense-output weights (Hairer's contd5).
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

Vec2 axpy(const Vec2& y, double h, const Vec2& a)
{
    return {y[0] + h * a[0], y[1] + h * a[1]};
}

double initial_step(const Rhs2& rhs, double t0, const Vec2& y0, const Vec2& f0, double span,
                    const OdeTolerance& tol)
{
    auto scaled_norm = [&](const Vec2& v) {
        double s0 = v[0] / (tol.abs + tol.rel * std::abs(y0[0]));
        double s1 = v[1] / (tol.abs + tol.rel * std::abs(y0[1]));
        return std::sqrt(0.5 * (s0 * s0 + s1 * s1));
    };
    double d0 = scaled_norm(y0);
    double d1 = scaled_norm(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    Vec2 y1 = axpy(y0, h0, f0);
    Vec2 f1 = rhs(t0 + h0, y1);
    double d2 = scaled_norm({f1[0] - f0[0], f1[1] - f0[1]}) / h0;
    double dm = std::max(d1, d2);
    double h1 = dm <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, span});
}

} // namespace

DenseSolution::DenseSolution(std::vector<DenseStep> steps, double t_begin, double t_end)
    : steps_(std::move(steps)), t_begin_(t_begin), t_end_(t_end)
{
}

const DenseStep& DenseSolution::locate(double t) const
{
    if (steps_.empty())
        throw EvalError("dense solution is empty");
    double slack = 1e-9 * (t_end_ - t_begin_) + 1e-300;
    if (t < t_begin_ - slack || t > t_end_ + slack)
        throw EvalError("dense solution evaluated outside [" + std::to_string(t_begin_) + ", " +
                        std::to_string(t_end_) + "]");
    auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                               [](double v, const DenseStep& s) { return v < s.t0; });
    if (it != steps_.begin())
        --it;
    return *it;
}

Vec2 DenseSolution::value(double t) const
{
    const DenseStep& s = locate(t);
    double th = (t - s.t0) / s.h;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
        out[i] = s.c[0][i] +
                 th * (s.c[1][i] + (1.0 - th) * (s.c[2][i] + th * (s.c[3][i] + (1.0 - th) * s.c[4][i])));
    }
    return out;
}

Vec2 DenseSolution::derivative(double t) const
{
    const DenseStep& s = locate(t);
    double th = (t - s.t0) / s.h;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
        double dp = s.c[1][i] + (1.0 - 2.0 * th) * s.c[2][i] + th * (2.0 - 3.0 * th) * s.c[3][i] +
                    2.0 * th * (1.0 - th) * (1.0 - 2.0 * th) * s.c[4][i];
        out[i] = dp / s.h;
    }
    return out;
}

DenseSolution integrate(const Rhs2& rhs, Vec2 y0, double t0, double t1, OdeTolerance tol,
                        const std::function<bool(const DenseStep&)>& stop_after)
{
    if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("integrate: need finite t1 > t0");
    if (!(tol.rel >= 1e-13 && tol.rel <= 1e-4))
        throw std::invalid_argument("integrate: relative tolerance outside [1e-13, 1e-4]");

    const double span = t1 - t0;
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t1), 1.0);

    double t = t0;
    Vec2 y = y0;
    Vec2 k1 = rhs(t, y);
    double h = initial_step(rhs, t0, y0, k1, span, tol);

    std::vector<DenseStep> steps;
    steps.reserve(256);
    bool just_rejected = false;

    for (long iter = 0; t < t1; ++iter) {
        if (iter > 20'000'000)
            throw SolveError("integrator exceeded step budget");
        bool last = false;
        if (t + 1.0001 * h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (h < hmin)
            throw SolveError("step size underflow at t = " + std::to_string(t));

        Vec2 k2 = rhs(t + C2 * h, axpy(y, h, {A21 * k1[0], A21 * k1[1]}));
        Vec2 k3 = rhs(t + C3 * h, axpy(y, h,
                                       {A31 * k1[0] + A32 * k2[0], A31 * k1[1] + A32 * k2[1]}));
        Vec2 k4 = rhs(t + C4 * h,
                      axpy(y, h,
                           {A41 * k1[0] + A42 * k2[0] + A43 * k3[0],
                            A41 * k1[1] + A42 * k2[1] + A43 * k3[1]}));
        Vec2 k5 = rhs(t + C5 * h,
                      axpy(y, h,
                           {A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0],
                            A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1]}));
        Vec2 k6 = rhs(t + h,
                      axpy(y, h,
                           {A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0],
                            A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1]}));
        Vec2 ynew = axpy(y, h,
                         {B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0],
                          B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1]});
        Vec2 k7 = rhs(t + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(0.5 * err);

        if (err <= 1.0) {
            DenseStep step;
            step.t0 = t;
            step.h = h;
            for (int i = 0; i < 2; ++i) {
                double dy = ynew[i] - y[i];
                step.c[0][i] = y[i];
                step.c[1][i] = dy;
                step.c[2][i] = h * k1[i] - dy;
                step.c[3][i] = dy - h * k7[i] - step.c[2][i];
                step.c[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                                    D6 * k6[i] + D7 * k7[i]);
            }
            steps.push_back(step);
            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7; // FSAL
            if (stop_after && stop_after(steps.back())) {
                double t_stop = steps.back().t0 + steps.back().h;
                return DenseSolution(std::move(steps), t0, t_stop);
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, just_rejected ? 1.0 : 5.0);
            h *= fac;
            just_rejected = false;
        } else {
            double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            h *= fac;
            just_rejected = true;
        }
    }
    return DenseSolution(std::move(steps), t0, t1);
}

} // namespace warped
