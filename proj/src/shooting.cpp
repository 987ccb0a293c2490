#include "warped/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "warped/errors.hpp"

namespace warped {

namespace {

double series_offset(const ModelSpace& model, double r)
{
    double scale = model.closes ? model.l() : r;
    return 1e-6 * scale;
}

// Frobenius coefficient of the t^{m+2} term: phi ~ t^m (1 + c2 t^2).
double series_c2(const ModelSpace& model, int m, double lambda)
{
    double k0 = model.warp.profile.evaluate(0.0);
    int n = model.n;
    return ((k0 / 3.0) * m * (m + 2 * n - 3) - lambda) / (2.0 * (2 * m + n));
}

} // namespace

double RadialEigenfunction::value(double t) const
{
    if (t < eps_) {
        double tm = 1.0;
        for (int i = 0; i < m_; ++i)
            tm *= t;
        return tm * (1.0 + c2_ * t * t);
    }
    return tail_.value(t)[0];
}

double RadialEigenfunction::derivative(double t) const
{
    if (t < eps_) {
        // d/dt of t^m (1 + c2 t^2) = t^{m-1} (m + (m+2) c2 t^2)
        double tm1 = 1.0;
        for (int i = 0; i + 1 < m_; ++i)
            tm1 *= t;
        if (m_ == 0)
            return 2.0 * c2_ * t;
        return tm1 * (m_ + (m_ + 2) * c2_ * t * t);
    }
    return tail_.value(t)[1];
}

ShootResult shoot(const ModelSpace& model, int m, double lambda, double r, OdeTolerance tol)
{
    if (m < 0)
        throw std::invalid_argument("shoot: angular index m must be >= 0");
    if (!(r > 0.0) || r > model.l() * (1.0 + 1e-12))
        throw std::invalid_argument("shoot: radius outside (0, l]");

    const int n = model.n;
    const double mu = double(m) * (m + n - 2);
    const WarpFunction& warp = model.warp;

    double eps = series_offset(model, r);
    double c2 = series_c2(model, m, lambda);

    Vec2 y0;
    {
        double tm1 = 1.0; // eps^{m-1}
        for (int i = 0; i + 1 < m; ++i)
            tm1 *= eps;
        double tm = m == 0 ? 1.0 : tm1 * eps;
        y0[0] = tm * (1.0 + c2 * eps * eps);
        y0[1] = m == 0 ? 2.0 * c2 * eps : tm1 * (m + (m + 2) * c2 * eps * eps);
    }

    Rhs2 rhs = [&warp, n, mu, lambda](double t, const Vec2& y) -> Vec2 {
        auto fv = warp.eval(t);
        double coef = (n - 1) * fv[1] / fv[0];
        double pot = lambda - (mu == 0.0 ? 0.0 : mu / (fv[0] * fv[0]));
        return {y[1], -coef * y[1] - pot * y[0]};
    };

    DenseSolution sol = integrate(rhs, y0, eps, r, tol);

    ShootResult res;
    res.lambda_trial = lambda;
    Vec2 end = sol.value(r);
    res.phi_end = end[0];
    res.dphi_end = end[1];

    // Node counting: >= 8 dense samples per accepted step, endpoint
    // excluded, exact zeros counted once.
    std::vector<double> samples;
    samples.reserve(sol.steps().size() * 8 + 1);
    samples.push_back(y0[0]);
    double cutoff = r * (1.0 - 1e-12);
    for (const DenseStep& step : sol.steps()) {
        for (int i = 1; i <= 8; ++i) {
            double t = step.t0 + step.h * (i / 8.0);
            if (t >= cutoff)
                break;
            samples.push_back(sol.value(t)[0]);
        }
    }
    int changes = 0;
    int prev = (samples[0] > 0.0) - (samples[0] < 0.0);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        int s = (samples[i] > 0.0) - (samples[i] < 0.0);
        if (s == 0) {
            ++changes;
            prev = -prev;
            continue;
        }
        if (s != prev) {
            ++changes;
            prev = s;
        }
    }
    res.interior_nodes = changes;
    res.phi = RadialEigenfunction(m, c2, eps, std::move(sol));
    return res;
}

EigenResult lambda1_ball(const ModelSpace& model, double r, int m, double tolerance)
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("lambda1_ball: tolerance must be positive");
    if (model.closes && r > model.l() * (1.0 - 1e-9))
        throw std::invalid_argument(
            "lambda1_ball: Dirichlet problem is degenerate at the closing pole; need r < l");

    auto overshoots = [&](double lambda) {
        ShootResult s = shoot(model, m, lambda, r);
        return s.interior_nodes >= 1 || s.phi_end <= 0.0;
    };

    const double pi = std::numbers::pi;
    double lo = 0.0;
    double hi = std::max(pi * pi / (r * r), 4.0 * model.n / (r * r));
    int growth = 0;
    while (!overshoots(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++growth > 60)
            throw SolveError("lambda1_ball: bracket growth failed");
    }
    int iters = 0;
    while (hi - lo > tolerance * std::max(1.0, lo)) {
        if (++iters > 256)
            throw SolveError("lambda1_ball: bisection did not converge in 256 iterations");
        double mid = 0.5 * (lo + hi);
        (overshoots(mid) ? hi : lo) = mid;
    }

    double lambda = 0.5 * (lo + hi);
    ShootResult shot = shoot(model, m, lambda, r);
    if (shot.interior_nodes != 0)
        shot = shoot(model, m, lo, r); // stay on the nodeless side

    EigenResult res;
    res.lambda = lambda;
    res.mode_m = m;
    res.radius = r;
    res.node_count = shot.interior_nodes;
    res.boundary_residual = std::abs(shot.phi_end);
    res.phi = shot.phi;
    res.samples.reserve(129);
    for (int i = 0; i <= 128; ++i) {
        double t = r * i / 128.0;
        res.samples.push_back({t, res.phi.value(t)});
    }
    double rq = rayleigh_quotient(
        model, [&](double t) { return std::array<double, 2>{res.phi.value(t), res.phi.derivative(t)}; },
        r);
    res.rayleigh_defect = std::abs(rq - lambda) / std::max(1.0, lambda);
    res.method = "shooting";
    return res;
}

std::vector<double> eigenfunction_samples(const ModelSpace& model, const EigenResult& result,
                                          const std::vector<double>& grid)
{
    (void)model;
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        if (t < 0.0 || t > result.radius * (1.0 + 1e-12))
            throw EvalError("eigenfunction sample outside [0, r], t = " + format_double(t));
        out.push_back(result.phi.value(std::min(t, result.radius)));
    }
    return out;
}

double rayleigh_quotient(const ModelSpace& model,
                         const std::function<std::array<double, 2>(double)>& phi, double r)
{
    if (!(r > 0.0) || r > model.l() * (1.0 + 1e-12))
        throw std::invalid_argument("rayleigh_quotient: radius outside (0, l]");
    const int n = model.n;
    const int M = 4096; // composite Simpson, order 4
    const double h = r / M;

    auto weight = [&](double t) {
        double f = model.warp.f(t);
        double w = 1.0;
        for (int i = 0; i < n - 1; ++i)
            w *= f;
        return w;
    };
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= M; ++i) {
        double t = i * h;
        double c = (i == 0 || i == M) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        auto [v, dv] = phi(t);
        double w = weight(t);
        num += c * dv * dv * w;
        den += c * v * v * w;
    }
    if (!(den > 0.0))
        throw std::invalid_argument("rayleigh_quotient: phi vanishes identically");
    return num / den;
}

} // namespace warped
