#include "warped/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "warped/errors.hpp"
#include "warped/json_io.hpp"
#include "warped/oracle.hpp"
#include "warped/theorem.hpp"

namespace warped {

namespace {

constexpr const char* kGoldenEnvVar = "WARPED_SPECTRA_GOLDEN";
constexpr const char* kGoldenDefault = "data/golden.json";
constexpr const char* kGoldenScheme = "staggered-fd2-richardson";
constexpr int kGoldenOracleN = 4096;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string k_expr;
    std::string profile_file;
    std::string builtin;
    double K = 1.0;
    int n = 2;
    double r = 0.0;
    int m = 0;
    int N = 0;
    double tol = 1e-8;
    double tmax = 20.0;
    double l_override = 0.0;
    int samples = 257;
    int count = 6;
    std::optional<double> claimed_lambda1;
    std::string format = "json";
    std::string out_path;
    std::string golden_path;
    bool regen_golden = false;
    // sweep
    std::string param = "r";
    double from = 0.0;
    double to = 0.0;
};

void add_profile_flags(CLI::App* cmd, Opts& o)
{
    cmd->add_option("--k", o.k_expr, "inline curvature expression k(t)");
    cmd->add_option("--profile", o.profile_file, "profile file (JSON or bare expression)");
    cmd->add_option("--builtin", o.builtin, "builtin profile: sphere, flat, paper-a, paper-b");
    cmd->add_option("--K", o.K, "curvature constant for --builtin sphere");
    cmd->add_option("--tmax", o.tmax, "search horizon for the closing length");
}

void add_output_flags(CLI::App* cmd, Opts& o)
{
    cmd->add_option("--format", o.format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--out", o.out_path, "write data to this file instead of stdout");
}

CurvatureProfile resolve_profile(const Opts& o)
{
    int sources = int(!o.k_expr.empty()) + int(!o.profile_file.empty()) + int(!o.builtin.empty());
    if (sources != 1)
        throw UsageError("exactly one of --k, --profile, --builtin is required");
    if (!o.k_expr.empty())
        return parse_profile(o.k_expr);
    if (!o.builtin.empty())
        return builtin_profile(o.builtin, o.K);

    std::ifstream in(o.profile_file);
    if (!in)
        throw UsageError("cannot open profile file '" + o.profile_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();

    auto parsed = nlohmann::json::parse(content, nullptr, false);
    if (parsed.is_object()) {
        std::string kind = parsed.value("kind", "");
        if (kind == "tabulated") {
            std::vector<double> t, k;
            for (const auto& row : parsed.at("points")) {
                t.push_back(row.at(0).get<double>());
                k.push_back(row.at(1).get<double>());
            }
            return CurvatureProfile::tabulated(std::move(t), std::move(k));
        }
        if (parsed.contains("text"))
            return parse_profile(parsed.at("text").get<std::string>());
        throw UsageError("profile file '" + o.profile_file + "' has no usable 'text' field");
    }
    // Bare expression file.
    auto begin = content.find_first_not_of(" \t\r\n");
    auto end = content.find_last_not_of(" \t\r\n");
    if (begin == std::string::npos)
        throw UsageError("profile file '" + o.profile_file + "' is empty");
    return parse_profile(content.substr(begin, end - begin + 1));
}

// Lenient model assembly for data commands: non-closing profiles keep
// the warp over [0, tmax].
ModelSpace make_model(const CurvatureProfile& profile, int n, double tmax)
{
    ClosingLength cl = find_closing_length(profile, tmax);
    double domain_end = cl.closes ? cl.l : tmax;
    WarpFunction warp = integrate_warp(profile, domain_end);
    return ModelSpace(n, std::move(warp), profile.text(), cl.closes);
}

std::string resolve_golden_path(const Opts& o)
{
    if (!o.golden_path.empty())
        return o.golden_path;
    if (const char* env = std::getenv(kGoldenEnvVar); env && *env)
        return env;
    return kGoldenDefault;
}

int emit(const Opts& o, std::ostream& out, const std::string& data)
{
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f)
            throw UsageError("cannot write to '" + o.out_path + "'");
        f << data;
        return 0;
    }
    out << data;
    return 0;
}

// ---- JSON serializers -------------------------------------------------

void json_profile(JsonWriter& w, const CurvatureProfile& p)
{
    w.begin_object();
    w.key("kind").value(p.kind_name());
    w.key("text").value(p.text());
    w.key("domain").begin_array().value(0.0);
    if (p.t_max())
        w.value(*p.t_max());
    else
        w.null();
    w.end_array();
    w.end_object();
}

void json_symmetry(JsonWriter& w, const SymmetryReport& rep)
{
    w.begin_object();
    w.key("l").value(rep.l);
    w.key("max_asymmetry").value(rep.max_asymmetry);
    w.key("tolerance").value(rep.tolerance);
    w.key("symmetric").value(rep.symmetric);
    w.key("samples").value(rep.samples);
    w.end_object();
}

void json_admissibility(JsonWriter& w, const AdmissibilityReport& rep)
{
    w.begin_object();
    w.key("closes").value(rep.closes);
    w.key("positive_interior").value(rep.positive_interior);
    w.key("end_slope").value(rep.end_slope);
    w.key("max_symmetry_defect").value(rep.max_symmetry_defect);
    w.key("ode_residual").value(rep.ode_residual);
    w.key("tolerance").value(rep.tolerance);
    w.end_object();
}

void json_eigen(JsonWriter& w, const EigenResult& res)
{
    w.begin_object();
    w.key("lambda").value(res.lambda);
    w.key("m").value(res.mode_m);
    w.key("r").value(res.radius);
    w.key("nodes").value(res.node_count);
    w.key("residuals").begin_object();
    w.key("boundary").value(res.boundary_residual);
    w.key("rayleigh_defect").value(res.rayleigh_defect);
    w.key("cross_check_diff").value(res.cross_check_diff);
    w.end_object();
    w.key("method").value(res.method);
    w.end_object();
}

// ---- subcommand handlers ----------------------------------------------

int cmd_warp(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    double domain_end = 0.0;
    ClosingLength cl{};
    if (o.l_override > 0.0) {
        domain_end = o.l_override;
    } else {
        cl = find_closing_length(profile, o.tmax);
        domain_end = cl.closes ? cl.l : o.tmax;
    }
    WarpFunction warp = integrate_warp(profile, domain_end);
    AdmissibilityReport adm = check_admissibility(warp);

    int S = std::max(2, o.samples);
    auto sample_t = [&](int i) { return domain_end * i / (S - 1); };

    if (o.format == "csv") {
        std::string csv = "t,f,fprime\n";
        for (int i = 0; i < S; ++i) {
            auto v = warp.eval(sample_t(i));
            csv += format_double(sample_t(i)) + "," + format_double(v[0]) + "," +
                   format_double(v[1]) + "\n";
        }
        return emit(o, out, csv);
    }
    if (o.format == "pretty") {
        std::string txt = "profile: " + profile.text() + "\n";
        txt += "l: " + format_double(domain_end) + (cl.closes ? " (closing length)\n" : "\n");
        txt += "closes: " + std::string(adm.closes ? "yes" : "no") + "\n";
        txt += "positive interior: " + std::string(adm.positive_interior ? "yes" : "no") + "\n";
        txt += "end slope: " + format_double(adm.end_slope) + "\n";
        txt += "max symmetry defect: " + format_double(adm.max_symmetry_defect) + "\n";
        txt += "ode residual: " + format_double(adm.ode_residual) + "\n";
        return emit(o, out, txt);
    }
    JsonWriter w;
    w.begin_object();
    w.key("profile");
    json_profile(w, profile);
    w.key("l").value(domain_end);
    w.key("tolerance").value(warp.tolerance.rel);
    w.key("admissibility");
    json_admissibility(w, adm);
    w.key("samples").begin_array();
    for (int i = 0; i < S; ++i) {
        auto v = warp.eval(sample_t(i));
        w.begin_array().value(sample_t(i)).value(v[0]).value(v[1]).end_array();
    }
    w.end_array();
    w.end_object();
    return emit(o, out, std::move(w).str() + "\n");
}

int cmd_closing_length(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    ClosingLength cl = find_closing_length(profile, o.tmax);
    if (o.format == "pretty") {
        std::string txt = cl.closes ? "l = " + format_double(cl.l) + "\n"
                                    : "does not close on (0, " + format_double(o.tmax) + "]\n";
        return emit(o, out, txt);
    }
    JsonWriter w;
    w.begin_object();
    w.key("profile");
    json_profile(w, profile);
    w.key("closes").value(cl.closes);
    w.key("l");
    if (cl.closes)
        w.value(cl.l);
    else
        w.null();
    w.key("residual").value(cl.residual);
    w.key("t_max").value(o.tmax);
    w.end_object();
    return emit(o, out, std::move(w).str() + "\n");
}

int cmd_eigen(const Opts& o, std::ostream& out)
{
    if (!(o.r > 0.0))
        throw UsageError("eigen requires --r > 0");
    CurvatureProfile profile = resolve_profile(o);
    ModelSpace model = make_model(profile, o.n, std::max(o.tmax, o.r));
    EigenResult res = lambda1_ball(model, o.r, o.m, o.tol);
    int oracle_N = o.N > 0 ? o.N : 2048;
    double oracle = ball_lambda1_extrapolated(model, o.r, o.m, oracle_N);
    double diff = std::abs(res.lambda - oracle);
    if (diff > std::max(1e-6, 1e-4 * res.lambda))
        throw SolveError("shooting and matrix oracle disagree: " + format_double(res.lambda) +
                         " vs " + format_double(oracle));
    res.cross_check_diff = diff;
    res.method = "cross-checked";

    if (o.format == "csv") {
        std::string csv = "t,phi\n";
        for (const auto& s : res.samples)
            csv += format_double(s[0]) + "," + format_double(s[1]) + "\n";
        return emit(o, out, csv);
    }
    if (o.format == "pretty") {
        std::string txt = "lambda_1 = " + format_double(res.lambda) + "  (m = " +
                          std::to_string(res.mode_m) + ", r = " + format_double(res.radius) +
                          ", oracle diff " + format_double(diff) + ")\n";
        return emit(o, out, txt);
    }
    JsonWriter w;
    w.begin_object();
    w.key("profile");
    json_profile(w, profile);
    w.key("n").value(o.n);
    w.key("result");
    json_eigen(w, res);
    w.key("oracle").begin_object();
    w.key("lambda").value(oracle);
    w.key("N").value(oracle_N);
    w.key("scheme").value(kGoldenScheme);
    w.end_object();
    w.end_object();
    return emit(o, out, std::move(w).str() + "\n");
}

int cmd_spectrum(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    ModelSpace model = make_model(profile, o.n, o.tmax);
    int N = o.N > 0 ? o.N : 4096;
    std::vector<double> spec = closed_spectrum_extrapolated(model, o.m, o.count, N);

    if (o.format == "csv") {
        std::string csv = "index,lambda\n";
        for (std::size_t i = 0; i < spec.size(); ++i)
            csv += std::to_string(i) + "," + format_double(spec[i]) + "\n";
        return emit(o, out, csv);
    }
    if (o.format == "pretty") {
        std::string txt = "closed spectrum (m = " + std::to_string(o.m) + "):\n";
        for (double v : spec)
            txt += "  " + format_double(v) + "\n";
        return emit(o, out, txt);
    }
    JsonWriter w;
    w.begin_object();
    w.key("profile");
    json_profile(w, profile);
    w.key("n").value(o.n);
    w.key("m").value(o.m);
    w.key("N").value(N);
    w.key("scheme").value(kGoldenScheme);
    w.key("eigenvalues").begin_array();
    for (double v : spec)
        w.value(v);
    w.end_array();
    w.end_object();
    return emit(o, out, std::move(w).str() + "\n");
}

int cmd_check(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    ModelSpace model = build_model(profile, o.n, o.tmax);
    HypothesisReport rep = check_hypotheses(model, o.claimed_lambda1, o.tol);

    if (o.format == "pretty") {
        std::string txt;
        txt += "assumption 1 (diameter l = " + format_double(rep.assumption1.l) +
               "): " + rep.assumption1.source + "\n";
        txt += "assumption 2 (symmetry + admissibility): " +
               std::string(rep.assumption2.satisfied() ? "pass" : "FAIL") + "\n";
        txt += "assumption 3 threshold lambda+ = " + format_double(rep.assumption3.lambda_plus) +
               "\n";
        if (rep.assumption3.satisfied)
            txt += "assumption 3 claim: " + std::string(*rep.assumption3.satisfied ? "pass" : "FAIL") +
                   "\n";
        txt += "conclusion applicable: " + std::string(rep.conclusion_applicable ? "yes" : "no") +
               "\n";
        emit(o, out, txt);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("profile");
        json_profile(w, profile);
        w.key("n").value(rep.n);
        w.key("assumption1").begin_object();
        w.key("l").value(rep.assumption1.l);
        w.key("source").value(rep.assumption1.source);
        w.end_object();
        w.key("assumption2").begin_object();
        w.key("symmetry");
        json_symmetry(w, rep.assumption2.symmetry);
        w.key("admissibility");
        json_admissibility(w, rep.assumption2.admissibility);
        w.end_object();
        w.key("assumption3").begin_object();
        w.key("lambda_plus").value(rep.assumption3.lambda_plus);
        w.key("user_claimed_lambda1");
        if (rep.assumption3.user_claimed_lambda1)
            w.value(*rep.assumption3.user_claimed_lambda1);
        else
            w.null();
        w.key("satisfied");
        if (rep.assumption3.satisfied)
            w.value(*rep.assumption3.satisfied);
        else
            w.null();
        w.end_object();
        w.key("conclusion_applicable").value(rep.conclusion_applicable);
        w.key("tolerance").value(rep.tolerance);
        w.key("model_summary").begin_object();
        w.key("n").value(rep.n);
        w.key("l").value(rep.l);
        w.key("f_samples").begin_array();
        for (const auto& s : rep.f_samples)
            w.begin_array().value(s[0]).value(s[1]).end_array();
        w.end_array();
        w.end_object();
        w.end_object();
        emit(o, out, std::move(w).str() + "\n");
    }
    // Report-only runs (no claim) fail only on computable checks.
    bool failed = !rep.assumption2.satisfied() || !(rep.assumption3.lambda_plus > 0.0) ||
                  (rep.assumption3.satisfied && !*rep.assumption3.satisfied) ||
                  (o.claimed_lambda1 && !rep.conclusion_applicable);
    return failed ? 1 : 0;
}

int cmd_consistency(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    ModelSpace model = build_model(profile, o.n, o.tmax);
    ConsistencyReport rep = verify_model_consistency(model, o.tol);

    if (o.format == "pretty") {
        std::string txt;
        txt += "lambda+ = " + format_double(rep.lambda_plus) + "\n";
        txt += "closed lambda_1 = " + format_double(rep.lambda1_closed) + "\n";
        txt += "thm 2.2 (closed <= ball): " + std::string(rep.thm22_holds ? "pass" : "FAIL") + "\n";
        txt += "antisymmetric match: " + std::string(rep.antisymmetric_match ? "pass" : "FAIL") +
               "\n";
        txt += "ground state radial: " + std::string(rep.ground_state_radial ? "pass" : "FAIL") +
               "\n";
        txt += "cross-method residual: " + format_double(rep.cheng_equality_residual) + "\n";
        emit(o, out, txt);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("profile");
        json_profile(w, profile);
        w.key("n").value(o.n);
        w.key("lambda_plus").value(rep.lambda_plus);
        w.key("lambda1_closed").value(rep.lambda1_closed);
        w.key("closed_m0_first_nonzero").value(rep.closed_m0_first_nonzero);
        w.key("closed_m1_first").value(rep.closed_m1_first);
        w.key("closed_m0_spectrum").begin_array();
        for (double v : rep.closed_m0_spectrum)
            w.value(v);
        w.end_array();
        w.key("lambda1_ball_m1").value(rep.lambda1_ball_m1);
        w.key("thm22_holds").value(rep.thm22_holds);
        w.key("antisymmetric_match").value(rep.antisymmetric_match);
        w.key("ground_state_radial").value(rep.ground_state_radial);
        w.key("cheng_equality_residual").value(rep.cheng_equality_residual);
        w.key("tolerance").value(rep.tolerance);
        w.end_object();
        emit(o, out, std::move(w).str() + "\n");
    }
    return rep.thm22_holds && rep.antisymmetric_match && rep.ground_state_radial ? 0 : 1;
}

int cmd_explore_question(const Opts& o, std::ostream& out)
{
    CurvatureProfile profile = resolve_profile(o);
    ModelSpace model = build_model(profile, o.n, o.tmax);
    ExplorationRecord rec = explore_question(model);
    if (o.format == "pretty") {
        std::string txt = "k_min = " + format_double(rec.k_min) + "\n";
        txt += "n * k_min = " + format_double(rec.n_k_min) + "\n";
        txt += "lambda_1(M*) = " + format_double(rec.lambda1_closed) + "\n";
        return emit(o, out, txt);
    }
    JsonWriter w;
    w.begin_object();
    w.key("profile");
    json_profile(w, profile);
    w.key("n").value(rec.n);
    w.key("k_min").value(rec.k_min);
    w.key("n_k_min").value(rec.n_k_min);
    w.key("lambda1_closed").value(rec.lambda1_closed);
    w.end_object();
    return emit(o, out, std::move(w).str() + "\n");
}

int cmd_sweep(const Opts& o, std::ostream& out)
{
    if (o.param != "r" && o.param != "K")
        throw UsageError("sweep requires --param r or --param K");
    if (o.count < 1)
        throw UsageError("sweep requires --count >= 1");
    if (!(o.to >= o.from))
        throw UsageError("sweep requires --to >= --from");

    std::vector<std::array<double, 2>> rows;
    rows.reserve(o.count);
    auto param_value = [&](int i) {
        return o.count == 1 ? o.from : o.from + (o.to - o.from) * i / (o.count - 1);
    };
    if (o.param == "r") {
        CurvatureProfile profile = resolve_profile(o);
        ModelSpace model = make_model(profile, o.n, o.tmax);
        for (int i = 0; i < o.count; ++i) {
            double r = param_value(i);
            rows.push_back({r, lambda1_ball(model, r, o.m, o.tol).lambda});
        }
    } else {
        if (!(o.r > 0.0))
            throw UsageError("sweep over K requires --r");
        for (int i = 0; i < o.count; ++i) {
            double K = param_value(i);
            ModelSpace model = make_model(CurvatureProfile::constant(K), o.n, o.tmax);
            rows.push_back({K, lambda1_ball(model, o.r, o.m, o.tol).lambda});
        }
    }

    if (o.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.key("param").value(o.param);
        w.key("rows").begin_array();
        for (const auto& row : rows)
            w.begin_array().value(row[0]).value(row[1]).end_array();
        w.end_array();
        w.end_object();
        return emit(o, out, std::move(w).str() + "\n");
    }
    std::string csv = o.param + ",lambda\n";
    for (const auto& row : rows)
        csv += format_double(row[0]) + "," + format_double(row[1]) + "\n";
    return emit(o, out, csv);
}

// ---- examples & golden file --------------------------------------------

struct ExampleCase {
    std::string id;
    std::function<double()> compute;       // runtime pipeline value
    std::function<double()> golden_value;  // value recorded at --regen-golden
    double tol;
    std::string source; // "analytic" or "oracle"
};

// Warps shared by the example cases, built on first use.
struct ModelCache {
    std::optional<WarpFunction> sphere1, sphere4, sphereQ, paperA, paperB;

    const WarpFunction& warp_for(const std::string& name)
    {
        auto build = [](std::optional<WarpFunction>& slot,
                        const CurvatureProfile& p) -> const WarpFunction& {
            if (!slot) {
                ClosingLength cl = find_closing_length(p, 20.0);
                slot = integrate_warp(p, cl.l);
            }
            return *slot;
        };
        if (name == "sphere-K1")
            return build(sphere1, builtin_profile("sphere", 1.0));
        if (name == "sphere-K4")
            return build(sphere4, builtin_profile("sphere", 4.0));
        if (name == "sphere-K0.25")
            return build(sphereQ, builtin_profile("sphere", 0.25));
        if (name == "paper-a")
            return build(paperA, builtin_profile("paper-a"));
        return build(paperB, builtin_profile("paper-b"));
    }

    ModelSpace model_for(const std::string& name, int n)
    {
        return ModelSpace(n, warp_for(name), name, true);
    }
};

// Reference warps for the examples with known closed forms.
double reference_warp(const std::string& name, double t)
{
    if (name == "sphere-K1")
        return std::sin(t);
    if (name == "sphere-K4")
        return 0.5 * std::sin(2.0 * t);
    if (name == "paper-a") {
        double u = t - 3.0;
        return 15.0 / 8.0 - u * u / 4.0 + u * u * u * u / 216.0;
    }
    // paper-b
    double u = t - 4.0;
    return (u * u * u * u - 96.0 * u * u + 1280.0) / 512.0;
}

std::vector<ExampleCase> make_example_cases()
{
    auto suite = std::make_shared<ModelCache>();
    const double pi = std::numbers::pi;
    std::vector<ExampleCase> cases;

    auto closing_of = [](const char* builtin, double K) {
        return [builtin, K]() {
            ClosingLength cl = find_closing_length(builtin_profile(builtin, K), 20.0);
            return cl.closes ? cl.l : -1.0;
        };
    };
    cases.push_back({"sphere-K1:closing-length", closing_of("sphere", 1.0),
                     [pi] { return pi; }, 1e-8, "analytic"});
    cases.push_back({"sphere-K4:closing-length", closing_of("sphere", 4.0),
                     [pi] { return pi / 2.0; }, 1e-8, "analytic"});
    cases.push_back({"paper-a:closing-length", closing_of("paper-a", 1.0),
                     [] { return 6.0; }, 1e-8, "analytic"});
    cases.push_back({"paper-b:closing-length", closing_of("paper-b", 1.0),
                     [] { return 8.0; }, 1e-8, "analytic"});
    cases.push_back({"flat:does-not-close",
                     [] {
                         ClosingLength cl = find_closing_length(builtin_profile("flat"), 20.0);
                         return cl.closes ? 0.0 : 1.0;
                     },
                     [] { return 1.0; }, 0.0, "analytic"});

    auto midpoint = [suite](const char* name) {
        return [suite, name] {
            const WarpFunction& w = suite->warp_for(name);
            return w.f(0.5 * w.l);
        };
    };
    cases.push_back({"sphere-K1:f(l/2)", midpoint("sphere-K1"), [] { return 1.0; }, 1e-8,
                     "analytic"});
    cases.push_back({"paper-a:f(3)", midpoint("paper-a"), [] { return 15.0 / 8.0; }, 1e-8,
                     "analytic"});
    cases.push_back({"paper-b:f(4)", midpoint("paper-b"), [] { return 2.5; }, 1e-8, "analytic"});

    for (const char* name : {"sphere-K1", "sphere-K4", "paper-a", "paper-b"}) {
        cases.push_back({std::string(name) + ":max-warp-error",
                         [suite, name] {
                             const WarpFunction& w = suite->warp_for(name);
                             double worst = 0.0;
                             for (int i = 0; i <= 1024; ++i) {
                                 double t = w.l * i / 1024.0;
                                 worst = std::max(worst,
                                                  std::abs(w.f(t) - reference_warp(name, t)));
                             }
                             return worst;
                         },
                         [] { return 0.0; }, 1e-8, "analytic"});
    }

    struct SphereCase {
        const char* warp;
        double K;
        int n;
    };
    for (SphereCase sc : {SphereCase{"sphere-K1", 1.0, 2}, SphereCase{"sphere-K1", 1.0, 3},
                          SphereCase{"sphere-K1", 1.0, 4}, SphereCase{"sphere-K1", 1.0, 5},
                          SphereCase{"sphere-K1", 1.0, 6}, SphereCase{"sphere-K4", 4.0, 2},
                          SphereCase{"sphere-K0.25", 0.25, 3}}) {
        std::string id = std::string(sc.warp) + "-n" + std::to_string(sc.n) + ":lambda-plus";
        double expected = sc.n * sc.K;
        cases.push_back({id,
                         [suite, sc] {
                             return compute_lambda_plus(suite->model_for(sc.warp, sc.n)).lambda;
                         },
                         [expected] { return expected; }, 1e-6 * expected, "analytic"});
    }

    for (const char* name : {"paper-a", "paper-b"}) {
        for (int n : {2, 3}) {
            std::string base = std::string(name) + "-n" + std::to_string(n);
            cases.push_back({base + ":lambda-plus",
                             [suite, name, n] {
                                 return compute_lambda_plus(suite->model_for(name, n)).lambda;
                             },
                             [suite, name, n] {
                                 ModelSpace model = suite->model_for(name, n);
                                 return ball_lambda1_extrapolated(model, 0.5 * model.l(), 0,
                                                                  kGoldenOracleN);
                             },
                             0.0, "oracle"});
            auto closed_lambda1 = [suite, name, n] {
                ModelSpace model = suite->model_for(name, n);
                auto m0 = closed_spectrum_extrapolated(model, 0, 3, kGoldenOracleN);
                double h = model.l() / kGoldenOracleN;
                double threshold = 1e-9 / (h * h);
                double first = 0.0;
                for (double v : m0)
                    if (v > threshold) {
                        first = v;
                        break;
                    }
                double m1 = closed_spectrum_extrapolated(model, 1, 1, kGoldenOracleN)[0];
                return std::min(first, m1);
            };
            cases.push_back({base + ":closed-lambda1", closed_lambda1, closed_lambda1, 0.0,
                             "oracle"});
        }
    }
    return cases;
}

int cmd_examples(const Opts& o, std::ostream& out, std::ostream& err)
{
    std::string golden_path = resolve_golden_path(o);
    std::vector<ExampleCase> cases = make_example_cases();

    if (o.regen_golden) {
        JsonWriter w;
        w.begin_object();
        w.key("schema").value("warped-spectra-golden-v1");
        w.key("generator").value("warped-spectra examples --regen-golden");
        w.key("scheme").value(kGoldenScheme);
        w.key("oracle_N").value(kGoldenOracleN);
        w.key("cases").begin_object();
        for (const ExampleCase& c : cases) {
            double v = c.golden_value();
            double tol = c.tol > 0.0 ? c.tol : std::max(1e-6, 1e-4 * std::abs(v));
            w.key(c.id).begin_object();
            w.key("value").value(v);
            w.key("tol").value(tol);
            w.key("source").value(c.source);
            if (c.source == "oracle") {
                w.key("N").value(kGoldenOracleN);
                w.key("scheme").value(kGoldenScheme);
            }
            w.end_object();
        }
        w.end_object();
        w.end_object();
        std::ofstream f(golden_path, std::ios::binary);
        if (!f)
            throw UsageError("cannot write golden file '" + golden_path + "'");
        f << std::move(w).str() << "\n";
        JsonWriter summary;
        summary.begin_object();
        summary.key("written").value(golden_path);
        summary.key("cases").value(static_cast<int>(cases.size()));
        summary.end_object();
        return emit(o, out, std::move(summary).str() + "\n");
    }

    std::ifstream f(golden_path);
    if (!f) {
        err << "golden file '" << golden_path << "' not found (run examples --regen-golden)\n";
        return 2;
    }
    nlohmann::json golden = nlohmann::json::parse(f, nullptr, false);
    if (!golden.is_object() || !golden.contains("cases")) {
        err << "golden file '" << golden_path << "' is not a golden map\n";
        return 2;
    }

    int passed = 0, failed = 0;
    JsonWriter w;
    w.begin_object();
    w.key("golden").value(golden_path);
    w.key("cases").begin_array();
    std::string pretty;
    for (const ExampleCase& c : cases) {
        if (!golden["cases"].contains(c.id)) {
            err << "golden file is missing case '" << c.id << "'\n";
            return 2;
        }
        const auto& entry = golden["cases"][c.id];
        double expected = entry.at("value").get<double>();
        double tol = entry.at("tol").get<double>();
        double computed = c.compute();
        double diff = std::abs(computed - expected);
        bool pass = diff <= tol;
        (pass ? passed : failed)++;
        w.begin_object();
        w.key("name").value(c.id);
        w.key("computed").value(computed);
        w.key("expected").value(expected);
        w.key("diff").value(diff);
        w.key("tol").value(tol);
        w.key("pass").value(pass);
        w.end_object();
        pretty += std::string(pass ? "[pass] " : "[FAIL] ") + c.id + ": " +
                  format_double(computed) + " vs " + format_double(expected) + "\n";
    }
    w.end_array();
    w.key("passed").value(passed);
    w.key("failed").value(failed);
    w.end_object();

    if (o.format == "pretty")
        emit(o, out, pretty);
    else
        emit(o, out, std::move(w).str() + "\n");
    return failed == 0 ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"warping functions and spectra of spherically symmetric model spaces"};
    app.name("warped-spectra");
    app.require_subcommand(1);

    Opts o;

    CLI::App* warp_cmd = app.add_subcommand("warp", "integrate f'' + k f = 0 and report admissibility");
    add_profile_flags(warp_cmd, o);
    add_output_flags(warp_cmd, o);
    warp_cmd->add_option("--l", o.l_override, "integrate over [0, l] instead of locating the zero");
    warp_cmd->add_option("--samples", o.samples, "sample count for the emitted solution");

    CLI::App* closing_cmd = app.add_subcommand("closing-length", "first positive zero of f");
    add_profile_flags(closing_cmd, o);
    add_output_flags(closing_cmd, o);

    CLI::App* eigen_cmd =
        app.add_subcommand("eigen", "first Dirichlet eigenvalue of a geodesic ball (cross-checked)");
    add_profile_flags(eigen_cmd, o);
    add_output_flags(eigen_cmd, o);
    eigen_cmd->add_option("--n", o.n, "dimension (>= 2)");
    eigen_cmd->add_option("--r", o.r, "ball radius")->required();
    eigen_cmd->add_option("--m", o.m, "angular mode index");
    eigen_cmd->add_option("--N", o.N, "oracle grid size (fine grid of the Richardson pair)");
    eigen_cmd->add_option("--tol", o.tol, "eigenvalue bisection tolerance");

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "closed spectrum via the matrix oracle");
    add_profile_flags(spectrum_cmd, o);
    add_output_flags(spectrum_cmd, o);
    spectrum_cmd->add_option("--n", o.n, "dimension (>= 2)");
    spectrum_cmd->add_option("--m", o.m, "angular mode index");
    spectrum_cmd->add_option("--count", o.count, "number of eigenvalues");
    spectrum_cmd->add_option("--N", o.N, "grid size (fine grid of the Richardson pair)");

    CLI::App* check_cmd = app.add_subcommand("check", "hypothesis report for the rigidity theorem");
    add_profile_flags(check_cmd, o);
    add_output_flags(check_cmd, o);
    check_cmd->add_option("--n", o.n, "dimension (>= 2)");
    check_cmd->add_option("--lambda1", o.claimed_lambda1,
                          "claimed first nonzero closed eigenvalue of the manifold");
    check_cmd->add_option("--tol", o.tol, "report tolerance");

    CLI::App* consistency_cmd =
        app.add_subcommand("consistency", "eigenvalue comparison checks on the model itself");
    add_profile_flags(consistency_cmd, o);
    add_output_flags(consistency_cmd, o);
    consistency_cmd->add_option("--n", o.n, "dimension (>= 2)");
    consistency_cmd->add_option("--tol", o.tol, "report tolerance");

    CLI::App* examples_cmd =
        app.add_subcommand("examples", "run the worked examples and diff against the golden file");
    add_output_flags(examples_cmd, o);
    examples_cmd->add_option("--golden", o.golden_path, "golden file path");
    examples_cmd->add_flag("--regen-golden", o.regen_golden, "rewrite the golden file");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "eigenvalue sweep over r or K (CSV)");
    add_profile_flags(sweep_cmd, o);
    add_output_flags(sweep_cmd, o);
    sweep_cmd->add_option("--n", o.n, "dimension (>= 2)");
    sweep_cmd->add_option("--m", o.m, "angular mode index");
    sweep_cmd->add_option("--r", o.r, "ball radius (K sweeps)");
    sweep_cmd->add_option("--param", o.param, "r | K")->check(CLI::IsMember({"r", "K"}));
    sweep_cmd->add_option("--from", o.from, "sweep start")->required();
    sweep_cmd->add_option("--to", o.to, "sweep end")->required();
    sweep_cmd->add_option("--count", o.count, "number of sweep points")->required();
    sweep_cmd->add_option("--tol", o.tol, "eigenvalue bisection tolerance");

    CLI::App* explore_cmd =
        app.add_subcommand("explore-question", "emit (k_min, n k_min, lambda_1(M*))");
    add_profile_flags(explore_cmd, o);
    add_output_flags(explore_cmd, o);
    explore_cmd->add_option("--n", o.n, "dimension (>= 2)");

    std::vector<std::string> argvs;
    argvs.push_back("warped-spectra");
    argvs.insert(argvs.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argvs.size());
    for (std::string& s : argvs)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*warp_cmd)
            return cmd_warp(o, out);
        if (*closing_cmd)
            return cmd_closing_length(o, out);
        if (*eigen_cmd)
            return cmd_eigen(o, out);
        if (*spectrum_cmd)
            return cmd_spectrum(o, out);
        if (*check_cmd) {
            if (check_cmd->get_option("--tol")->count() == 0)
                o.tol = 1e-4;
            return cmd_check(o, out);
        }
        if (*consistency_cmd) {
            if (consistency_cmd->get_option("--tol")->count() == 0)
                o.tol = 1e-4;
            return cmd_consistency(o, out);
        }
        if (*examples_cmd)
            return cmd_examples(o, out, err);
        if (*sweep_cmd) {
            if (sweep_cmd->get_option("--format")->count() == 0)
                o.format = "csv";
            return cmd_sweep(o, out);
        }
        if (*explore_cmd)
            return cmd_explore_question(o, out);
        err << "no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << "\n";
        return 3;
    } catch (const SolveError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        err << "json error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace warped
