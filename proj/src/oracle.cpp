#include "warped/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "warped/errors.hpp"

namespace warped {

namespace {

double ipow(double base, int e)
{
    if (e < 0)
        return 1.0 / ipow(base, -e);
    double r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

struct SymTri {
    std::vector<double> c; // diagonal
    std::vector<double> e; // off-diagonal, size n-1
};

SymTri symmetrize(const TridiagonalPencil& p)
{
    SymTri t;
    std::size_t n = p.diag.size();
    t.c.resize(n);
    t.e.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        t.c[i] = p.diag[i] / p.mass[i];
    for (std::size_t i = 0; i + 1 < n; ++i)
        t.e[i] = p.offdiag[i] / std::sqrt(p.mass[i] * p.mass[i + 1]);
    return t;
}

// Eigenvalues below sigma by LDL^T pivot signs. A zero pivot (sigma
// hits an eigenvalue of a leading submatrix) counts as negative.
int count_below(const SymTri& t, double sigma)
{
    const double pivmin = 1e-290;
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < t.c.size(); ++i) {
        double e2 = i == 0 ? 0.0 : t.e[i - 1] * t.e[i - 1];
        d = t.c[i] - sigma - e2 / d;
        if (std::abs(d) < pivmin)
            d = -pivmin;
        if (d < 0.0)
            ++count;
    }
    return count;
}

std::pair<double, double> gershgorin(const SymTri& t)
{
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    std::size_t n = t.c.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = (i > 0 ? std::abs(t.e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.e[i]) : 0.0);
        lo = std::min(lo, t.c[i] - radius);
        hi = std::max(hi, t.c[i] + radius);
    }
    return {lo, hi};
}

double kth_eigenvalue(const SymTri& t, int k, double glo, double ghi)
{
    double lo = glo, hi = ghi;
    for (int iter = 0; iter < 300; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)}))
            break;
        if (count_below(t, mid) >= k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Tridiagonal solve with partial pivoting (fill-in on the second
// superdiagonal), as used by classic inverse-iteration codes.
void solve_shifted(const SymTri& t, double sigma, std::vector<double>& x)
{
    std::size_t n = t.c.size();
    std::vector<double> d(n), u(n, 0.0), v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = t.c[i] - sigma;
    // Row i holds [d, u, v]; sub[i] couples row i+1.
    std::vector<double> sub(t.e);
    for (std::size_t i = 0; i + 1 < n; ++i)
        u[i] = t.e[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double lower = sub[i];
        if (std::abs(lower) > std::abs(d[i])) {
            std::swap(d[i], sub[i]);
            std::swap(u[i], d[i + 1]);
            std::swap(v[i], u[i + 1]);
            std::swap(x[i], x[i + 1]);
            lower = sub[i];
        }
        double piv = d[i];
        if (piv == 0.0)
            piv = 1e-280;
        double mult = lower / piv;
        d[i + 1] -= mult * u[i];
        u[i + 1] -= mult * v[i];
        x[i + 1] -= mult * x[i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        if (i + 1 < n)
            s -= u[i] * x[i + 1];
        if (i + 2 < n)
            s -= v[i] * x[i + 2];
        double piv = d[i];
        if (piv == 0.0)
            piv = 1e-280;
        x[i] = s / piv;
    }
}

void validate_pencil_inputs(const ModelSpace& model, int m, int N, int n_min)
{
    if (m < 0)
        throw std::invalid_argument("angular index m must be >= 0");
    if (N < n_min)
        throw std::invalid_argument("grid size N must be >= " + std::to_string(n_min));
    (void)model;
}

} // namespace

TridiagonalPencil discretize_ball(const ModelSpace& model, double r, int m, int N)
{
    validate_pencil_inputs(model, m, N, 16);
    if (!(r > 0.0) || r > model.l() * (1.0 + 1e-12))
        throw std::invalid_argument("discretize_ball: radius outside (0, l]");
    if (model.closes && r > model.l() * (1.0 - 1e-9))
        throw std::invalid_argument(
            "discretize_ball: Dirichlet condition is degenerate at the closing pole; need r < l");

    const int n = model.n;
    const double mu = double(m) * (m + n - 2);
    const double h = r / N;

    TridiagonalPencil p;
    p.h = h;
    p.problem = BallProblem{r, m};
    p.diag.resize(N);
    p.offdiag.resize(N - 1);
    p.mass.resize(N);
    p.grid.resize(N);

    std::vector<double> w(N + 1); // face weights f(i h)^{n-1}
    w[0] = 0.0;                   // f(0) = 0 exactly
    for (int i = 1; i <= N; ++i)
        w[i] = ipow(model.warp.f(i * h), n - 1);

    for (int i = 1; i <= N; ++i) {
        double tc = (i - 0.5) * h;
        double fc = model.warp.f(tc);
        p.grid[i - 1] = tc;
        p.mass[i - 1] = ipow(fc, n - 1) * h;
        double pot = mu == 0.0 ? 0.0 : mu * ipow(fc, n - 3) * h;
        double wr = (i == N) ? 2.0 * w[N] : w[i]; // ghost reflection at t = r
        p.diag[i - 1] = (w[i - 1] + wr) / h + pot;
        if (i < N)
            p.offdiag[i - 1] = -w[i] / h;
    }
    return p;
}

TridiagonalPencil discretize_closed(const ModelSpace& model, int m, int N)
{
    validate_pencil_inputs(model, m, N, 32);
    if (!model.closes)
        throw std::invalid_argument("discretize_closed: model does not close");

    const int n = model.n;
    const double mu = double(m) * (m + n - 2);
    const double l = model.l();
    const double h = l / N;

    TridiagonalPencil p;
    p.h = h;
    p.problem = ClosedProblem{m};
    p.diag.resize(N);
    p.offdiag.resize(N - 1);
    p.mass.resize(N);
    p.grid.resize(N);

    std::vector<double> w(N + 1);
    w[0] = 0.0;
    w[N] = 0.0; // both poles close: natural (zero-flux) faces
    for (int i = 1; i < N; ++i)
        w[i] = ipow(model.warp.f(i * h), n - 1);

    for (int i = 1; i <= N; ++i) {
        double tc = (i - 0.5) * h;
        double fc = model.warp.f(tc);
        p.grid[i - 1] = tc;
        p.mass[i - 1] = ipow(fc, n - 1) * h;
        double pot = mu == 0.0 ? 0.0 : mu * ipow(fc, n - 3) * h;
        p.diag[i - 1] = (w[i - 1] + w[i]) / h + pot;
        if (i < N)
            p.offdiag[i - 1] = -w[i] / h;
    }
    return p;
}

std::vector<double> smallest_eigenvalues(const TridiagonalPencil& pencil, int count)
{
    if (count < 1 || count > static_cast<int>(pencil.diag.size()))
        throw std::invalid_argument("smallest_eigenvalues: count outside [1, N]");
    SymTri t = symmetrize(pencil);
    auto [glo, ghi] = gershgorin(t);
    double pad = 1e-10 * (std::abs(glo) + std::abs(ghi)) + 1e-300;
    glo -= pad;
    ghi += pad;
    std::vector<double> out;
    out.reserve(count);
    for (int k = 1; k <= count; ++k)
        out.push_back(kth_eigenvalue(t, k, glo, ghi));
    return out;
}

std::vector<double> pencil_eigenvector(const TridiagonalPencil& pencil, double lambda)
{
    SymTri t = symmetrize(pencil);
    std::size_t n = t.c.size();
    double scale = std::max(1.0, std::abs(lambda));
    double sigma = lambda + 1e-11 * scale;

    // Fixed pseudo-random start so results are reproducible.
    std::vector<double> x(n);
    unsigned long long state = 88172645463325252ull;
    for (double& v : x) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        v = 0.5 + double(state % 1000000ull) / 1000000.0;
    }
    for (int iter = 0; iter < 3; ++iter) {
        solve_shifted(t, sigma, x);
        double norm = 0.0;
        for (double v : x)
            norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw SolveError("inverse iteration failed");
        for (double& v : x)
            v /= norm;
    }
    return x;
}

int count_sign_changes(const std::vector<double>& values)
{
    int changes = 0;
    int prev = 0;
    for (double v : values) {
        int s = (v > 0.0) - (v < 0.0);
        if (s == 0) {
            ++changes;
            prev = -prev;
            continue;
        }
        if (prev == 0) {
            prev = s;
            continue;
        }
        if (s != prev) {
            ++changes;
            prev = s;
        }
    }
    return changes;
}

double richardson_extrapolate(double value_N, double value_2N, int order)
{
    double w = ipow(2.0, order);
    return (w * value_2N - value_N) / (w - 1.0);
}

double ball_lambda1_extrapolated(const ModelSpace& model, double r, int m, int N)
{
    double coarse = smallest_eigenvalues(discretize_ball(model, r, m, N / 2), 1)[0];
    double fine = smallest_eigenvalues(discretize_ball(model, r, m, N), 1)[0];
    return richardson_extrapolate(coarse, fine, 2);
}

std::vector<double> closed_spectrum_extrapolated(const ModelSpace& model, int m, int count, int N)
{
    auto coarse = smallest_eigenvalues(discretize_closed(model, m, N / 2), count);
    auto fine = smallest_eigenvalues(discretize_closed(model, m, N), count);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = richardson_extrapolate(coarse[i], fine[i], 2);
    return out;
}

} // namespace warped
