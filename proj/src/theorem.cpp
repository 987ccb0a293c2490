#include "warped/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "warped/errors.hpp"
#include "warped/oracle.hpp"

namespace warped {

namespace {

double first_above(const std::vector<double>& spectrum, double threshold)
{
    for (double v : spectrum)
        if (v > threshold)
            return v;
    throw SolveError("closed spectrum has no eigenvalue above the zero-mode threshold");
}

// Smallest nonzero closed eigenvalue over sectors m=0 and m=1; higher
// sectors are excluded by mode monotonicity (a tested invariant).
struct ClosedFirst {
    double m0_first_nonzero;
    double m1_first;
    std::vector<double> m0_spectrum;
    double min() const
    {
        return std::min(m0_first_nonzero, m1_first);
    }
};

ClosedFirst closed_first_eigenvalues(const ModelSpace& model, int N)
{
    ClosedFirst out;
    out.m0_spectrum = closed_spectrum_extrapolated(model, 0, 6, N);
    double h = model.l() / N;
    double zero_threshold = 1e-9 / (h * h);
    out.m0_first_nonzero = first_above(out.m0_spectrum, zero_threshold);
    out.m1_first = closed_spectrum_extrapolated(model, 1, 1, N)[0];
    return out;
}

} // namespace

ModelSpace build_model(const CurvatureProfile& profile, int n, double t_max, double tolerance)
{
    if (n < 2)
        throw std::invalid_argument("build_model: dimension must be >= 2");
    ClosingLength cl = find_closing_length(profile, t_max, 1e-9);
    if (!cl.closes)
        throw SolveError("profile '" + profile.text() + "' does not close on (0, " +
                         format_double(t_max) + "]");
    WarpFunction warp = integrate_warp(profile, cl.l);
    AdmissibilityReport adm = check_admissibility(warp, tolerance);
    if (!adm.closes || !adm.positive_interior)
        throw SolveError("warp for '" + profile.text() + "' is not admissible (closes=" +
                         (adm.closes ? "true" : "false") + ", positive=" +
                         (adm.positive_interior ? "true" : "false") + ")");
    SymmetryReport sym = check_symmetry(profile, cl.l);
    if (!sym.symmetric)
        throw SolveError("profile '" + profile.text() + "' violates k(t) = k(l-t): max deviation " +
                         format_double(sym.max_asymmetry));
    return ModelSpace(n, std::move(warp), profile.text(), true);
}

EigenResult compute_lambda_plus(const ModelSpace& model, double tolerance, int oracle_N)
{
    if (!model.closes)
        throw std::invalid_argument("compute_lambda_plus: model does not close");
    double r = 0.5 * model.l();
    EigenResult res = lambda1_ball(model, r, 0, tolerance);
    double oracle = ball_lambda1_extrapolated(model, r, 0, oracle_N);
    double diff = std::abs(res.lambda - oracle);
    if (diff > std::max(1e-6, 1e-4 * res.lambda))
        throw SolveError("shooting and matrix oracle disagree on lambda+: " +
                         format_double(res.lambda) + " vs " + format_double(oracle));
    res.cross_check_diff = diff;
    res.method = "cross-checked";
    return res;
}

HypothesisReport check_hypotheses(const ModelSpace& model, std::optional<double> claimed_lambda1,
                                  double tolerance)
{
    HypothesisReport rep;
    rep.n = model.n;
    rep.l = model.l();
    rep.tolerance = tolerance;
    rep.assumption1.l = model.l();

    rep.assumption2.symmetry = check_symmetry(model.warp.profile, model.l());
    rep.assumption2.admissibility = check_admissibility(model.warp);

    EigenResult lp = compute_lambda_plus(model);
    rep.assumption3.lambda_plus = lp.lambda;
    rep.assumption3.user_claimed_lambda1 = claimed_lambda1;
    if (claimed_lambda1)
        rep.assumption3.satisfied =
            *claimed_lambda1 >= lp.lambda - tolerance * std::max(1.0, lp.lambda);

    rep.conclusion_applicable = rep.assumption2.satisfied() && std::isfinite(lp.lambda) &&
                                lp.lambda > 0.0 && rep.assumption3.satisfied.value_or(false);

    for (int i = 0; i <= 32; ++i) {
        double t = model.l() * i / 32.0;
        rep.f_samples.push_back({t, model.warp.f(t)});
    }
    return rep;
}

ConsistencyReport verify_model_consistency(const ModelSpace& model, double tolerance)
{
    if (!model.closes)
        throw std::invalid_argument("verify_model_consistency: model does not close");
    ConsistencyReport rep;
    rep.tolerance = tolerance;

    EigenResult lp = compute_lambda_plus(model);
    rep.lambda_plus = lp.lambda;
    rep.cheng_equality_residual = lp.cross_check_diff;

    // Closed grids at twice the ball size share face positions with the
    // half-ball grids, so the odd (antisymmetric) sector reproduces the
    // ball problem exactly.
    ClosedFirst cf = closed_first_eigenvalues(model, 4096);
    rep.closed_m0_first_nonzero = cf.m0_first_nonzero;
    rep.closed_m1_first = cf.m1_first;
    rep.closed_m0_spectrum = cf.m0_spectrum;
    rep.lambda1_closed = cf.min();

    rep.thm22_holds = rep.lambda1_closed <= rep.lambda_plus * (1.0 + 1e-5);

    rep.antisymmetric_match = false;
    for (double v : cf.m0_spectrum)
        if (std::abs(v - rep.lambda_plus) <= tolerance * std::max(1.0, rep.lambda_plus))
            rep.antisymmetric_match = true;

    EigenResult m1 = lambda1_ball(model, 0.5 * model.l(), 1);
    rep.lambda1_ball_m1 = m1.lambda;
    rep.ground_state_radial = m1.lambda > lp.lambda;
    return rep;
}

ClosedFormCase constant_curvature_case(int n, double K)
{
    if (n < 2)
        throw std::invalid_argument("constant_curvature_case: n must be >= 2");
    if (!(K > 0.0))
        throw std::invalid_argument("constant_curvature_case: K must be positive");
    ClosedFormCase c;
    c.n = n;
    c.K = K;
    c.l = std::numbers::pi / std::sqrt(K);
    c.lambda_plus_closed_form = n * K;
    return c;
}

ExplorationRecord explore_question(const ModelSpace& model)
{
    if (!model.closes)
        throw std::invalid_argument("explore_question: model does not close");
    ExplorationRecord rec;
    rec.n = model.n;
    // Grid infimum over (0, l); k is continuous so 8192 interior samples
    // pin the minimum well enough for inspection output.
    const int N = 8192;
    double l = model.l();
    double kmin = std::numeric_limits<double>::max();
    for (int i = 0; i <= N; ++i) {
        double t = l * (i + 0.5) / (N + 1);
        kmin = std::min(kmin, model.warp.profile.evaluate(t));
    }
    rec.k_min = kmin;
    rec.n_k_min = model.n * kmin;
    rec.lambda1_closed = closed_first_eigenvalues(model, 4096).min();
    return rec;
}

} // namespace warped
