#include "warped/profile.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "warped/errors.hpp"

namespace warped {

namespace {

using Poly = std::vector<double>;

Poly trim(Poly p)
{
    while (p.size() > 1 && p.back() == 0.0)
        p.pop_back();
    return p;
}

Poly poly_add(const Poly& a, const Poly& b, double sign)
{
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double av = i < a.size() ? a[i] : 0.0;
        double bv = i < b.size() ? b[i] : 0.0;
        r[i] = av + sign * bv;
    }
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

constexpr std::size_t kMaxDegree = 16;

// Expands an expression into polynomial coefficients in t where
// possible; division is only folded when the divisor is a constant.
std::optional<Poly> expr_poly(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        return Poly{e.value};
    case Expr::Kind::Var:
        return Poly{0.0, 1.0};
    case Expr::Kind::Neg: {
        auto p = expr_poly(*e.lhs);
        if (!p)
            return std::nullopt;
        for (double& c : *p)
            c = -c;
        return p;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        auto a = expr_poly(*e.lhs);
        auto b = expr_poly(*e.rhs);
        if (!a || !b)
            return std::nullopt;
        return poly_add(*a, *b, e.kind == Expr::Kind::Add ? 1.0 : -1.0);
    }
    case Expr::Kind::Mul: {
        auto a = expr_poly(*e.lhs);
        auto b = expr_poly(*e.rhs);
        if (!a || !b || a->size() + b->size() - 1 > kMaxDegree + 1)
            return std::nullopt;
        return poly_mul(*a, *b);
    }
    case Expr::Kind::Div: {
        auto a = expr_poly(*e.lhs);
        auto b = expr_poly(*e.rhs);
        if (!a || !b)
            return std::nullopt;
        Poly d = trim(*b);
        if (d.size() != 1 || d[0] == 0.0)
            return std::nullopt;
        for (double& c : *a)
            c /= d[0];
        return a;
    }
    case Expr::Kind::Pow: {
        if (e.rhs->kind != Expr::Kind::Number)
            return std::nullopt;
        double x = e.rhs->value;
        double ipart;
        if (std::modf(x, &ipart) != 0.0 || ipart < 0.0 || ipart > double(kMaxDegree))
            return std::nullopt;
        auto b = expr_poly(*e.lhs);
        if (!b)
            return std::nullopt;
        Poly r{1.0};
        for (long i = 0; i < static_cast<long>(ipart); ++i) {
            if (r.size() + b->size() - 1 > kMaxDegree + 1)
                return std::nullopt;
            r = poly_mul(r, *b);
        }
        return r;
    }
    case Expr::Kind::Call:
        return std::nullopt;
    }
    return std::nullopt;
}

double horner(const Poly& p, double u)
{
    double acc = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;)
        acc = acc * u + p[i];
    return acc;
}

// Horner-form text whose reparse evaluates exactly like horner().
std::string horner_text(const Poly& p, double shift)
{
    std::string u = shift == 0.0 ? "t" : "(t-" + format_double(shift) + ")";
    std::string txt = format_double(p.back());
    for (std::size_t i = p.size() - 1; i-- > 0;)
        txt = "(" + txt + ")*" + u + "+" + format_double(p[i]);
    return txt;
}

// Fritsch-Carlson limited slopes for monotone cubic interpolation.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return m;
    }
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m0 * d0 <= 0.0)
            return 0.0;
        if (d0 * d1 < 0.0 && std::abs(m0) > 3.0 * std::abs(d0))
            return 3.0 * d0;
        return m0;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& m, double t)
{
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size())
        i = x.size() - 2;
    double h = x[i + 1] - x[i];
    double s = (t - x[i]) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1;
    double h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2;
    double h11 = s3 - s2;
    return h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
}

} // namespace

CurvatureProfile CurvatureProfile::constant(double K, std::string text)
{
    CurvatureProfile p;
    p.kind_ = Kind::Constant;
    p.K_ = K;
    p.text_ = text.empty() ? format_double(K) : std::move(text);
    return p;
}

CurvatureProfile CurvatureProfile::rational(std::vector<double> num, std::vector<double> den,
                                            double shift, std::string text)
{
    if (num.empty() || den.empty())
        throw std::invalid_argument("rational profile needs nonempty coefficient lists");
    CurvatureProfile p;
    p.kind_ = Kind::Rational;
    p.num_ = trim(std::move(num));
    p.den_ = trim(std::move(den));
    p.shift_ = shift;
    p.text_ = std::move(text);
    if (p.text_.empty())
        p.text_ = horner_text(p.num_, p.shift_) +
                  (p.den_.size() == 1 && p.den_[0] == 1.0
                       ? ""
                       : "/(" + horner_text(p.den_, p.shift_) + ")");
    return p;
}

CurvatureProfile CurvatureProfile::expression(ExprPtr ast, std::string text)
{
    CurvatureProfile p;
    p.kind_ = Kind::Expression;
    p.ast_ = std::move(ast);
    p.text_ = text.empty() ? print_expression(*p.ast_) : std::move(text);
    return p;
}

CurvatureProfile CurvatureProfile::tabulated(std::vector<double> t, std::vector<double> k)
{
    if (t.size() < 2 || t.size() != k.size())
        throw std::invalid_argument("tabulated profile needs >= 2 (t, k) pairs");
    if (t.front() != 0.0)
        throw std::invalid_argument("tabulated profile must start at t = 0");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1]))
            throw std::invalid_argument("tabulated abscissae must strictly increase");
    CurvatureProfile p;
    p.kind_ = Kind::Tabulated;
    p.tab_slope_ = pchip_slopes(t, k);
    p.t_max_ = t.back();
    p.tab_t_ = std::move(t);
    p.tab_k_ = std::move(k);
    p.text_ = "tabulated[" + std::to_string(p.tab_t_.size()) + " points]";
    return p;
}

const char* CurvatureProfile::kind_name() const
{
    switch (kind_) {
    case Kind::Constant:
        return "constant";
    case Kind::Rational:
        return "rational";
    case Kind::Expression:
        return "expression";
    case Kind::Tabulated:
        return "tabulated";
    }
    return "?";
}

CurvatureProfile CurvatureProfile::with_domain(double t_max) const
{
    if (!(t_max > 0.0))
        throw std::invalid_argument("profile domain end must be positive");
    CurvatureProfile p = *this;
    p.t_max_ = t_max;
    return p;
}

double CurvatureProfile::evaluate(double t) const
{
    if (!(t >= 0.0))
        throw EvalError("profile evaluated at t < 0 (t = " + format_double(t) + ")");
    if (t_max_ && t > *t_max_ * (1.0 + 1e-12) + 1e-300)
        throw EvalError("profile evaluated beyond declared domain (t = " + format_double(t) + ")");
    double v = 0.0;
    switch (kind_) {
    case Kind::Constant:
        v = K_;
        break;
    case Kind::Rational: {
        double u = t - shift_;
        v = horner(num_, u) / horner(den_, u);
        break;
    }
    case Kind::Expression:
        v = eval_expression(*ast_, t);
        break;
    case Kind::Tabulated:
        v = pchip_eval(tab_t_, tab_k_, tab_slope_, std::min(t, tab_t_.back()));
        break;
    }
    if (!std::isfinite(v))
        throw EvalError("profile '" + text_ + "' is non-finite at t = " + format_double(t));
    return v;
}

CurvatureProfile parse_profile(const std::string& text)
{
    ExprPtr ast = parse_expression(text);
    if (auto p = expr_poly(*ast)) {
        Poly poly = trim(std::move(*p));
        if (poly.size() == 1)
            return CurvatureProfile::constant(poly[0], text);
        return CurvatureProfile::rational(std::move(poly), {1.0}, 0.0, text);
    }
    if (ast->kind == Expr::Kind::Div) {
        auto num = expr_poly(*ast->lhs);
        auto den = expr_poly(*ast->rhs);
        if (num && den)
            return CurvatureProfile::rational(std::move(*num), std::move(*den), 0.0, text);
    }
    return CurvatureProfile::expression(std::move(ast), text);
}

std::string print_profile(const CurvatureProfile& profile)
{
    switch (profile.kind()) {
    case CurvatureProfile::Kind::Constant:
        return format_double(profile.evaluate(0.0));
    case CurvatureProfile::Kind::Tabulated:
        throw std::invalid_argument("tabulated profiles have no expression form");
    default:
        // Reparse the display text to guarantee the output is grammar-
        // expressible, then print canonically.
        return profile.text();
    }
}

SymmetryReport check_symmetry(const CurvatureProfile& profile, double l, double tolerance,
                              int samples)
{
    if (!(l > 0.0))
        throw std::invalid_argument("check_symmetry: l must be positive");
    if (samples < 2)
        throw std::invalid_argument("check_symmetry: need at least 2 samples");
    SymmetryReport rep;
    rep.l = l;
    rep.tolerance = tolerance;
    rep.samples = samples;
    double step = 0.5 * l / (samples + 1);
    for (int i = 1; i <= samples; ++i) {
        double t = i * step;
        double diff = std::abs(profile.evaluate(t) - profile.evaluate(l - t));
        rep.max_asymmetry = std::max(rep.max_asymmetry, diff);
    }
    rep.symmetric = rep.max_asymmetry <= tolerance;
    return rep;
}

CurvatureProfile scale_profile(const CurvatureProfile& profile, double s)
{
    if (!(s > 0.0))
        throw std::invalid_argument("scale_profile: s must be positive");
    CurvatureProfile scaled = [&] {
        switch (profile.kind_) {
        case CurvatureProfile::Kind::Constant:
            return CurvatureProfile::constant(s * s * profile.K_);
        case CurvatureProfile::Kind::Rational: {
            // s^2 P(s u) / Q(s u) with u = t - c/s: multiply degree-j
            // coefficients by s^j (plus s^2 on the numerator).
            Poly num = profile.num_;
            Poly den = profile.den_;
            double pw = s * s;
            for (double& c : num) {
                c *= pw;
                pw *= s;
            }
            pw = 1.0;
            for (double& c : den) {
                c *= pw;
                pw *= s;
            }
            return CurvatureProfile::rational(std::move(num), std::move(den), profile.shift_ / s);
        }
        case CurvatureProfile::Kind::Expression:
            return CurvatureProfile::expression(scale_expression(profile.ast_, s));
        case CurvatureProfile::Kind::Tabulated: {
            std::vector<double> t = profile.tab_t_;
            std::vector<double> k = profile.tab_k_;
            for (double& v : t)
                v /= s;
            for (double& v : k)
                v *= s * s;
            return CurvatureProfile::tabulated(std::move(t), std::move(k));
        }
        }
        throw std::logic_error("unreachable");
    }();
    if (profile.t_max_)
        scaled.t_max_ = *profile.t_max_ / s;
    return scaled;
}

CurvatureProfile builtin_profile(const std::string& name, double K)
{
    if (name == "sphere")
        return CurvatureProfile::constant(K);
    if (name == "flat")
        return CurvatureProfile::constant(0.0);
    if (name == "paper-a")
        return CurvatureProfile::rational({12.0}, {45.0, 0.0, -1.0}, 3.0, "12/(45-(t-3)^2)");
    if (name == "paper-b")
        return CurvatureProfile::rational({12.0}, {80.0, 0.0, -1.0}, 4.0, "12/(80-(t-4)^2)");
    throw std::invalid_argument("unknown builtin profile '" + name +
                                "' (expected sphere, flat, paper-a or paper-b)");
}

} // namespace warped
