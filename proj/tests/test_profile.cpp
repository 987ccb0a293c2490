#include "doctest.h"

#include <cmath>
#include <random>

#include "warped/errors.hpp"
#include "warped/profile.hpp"

using namespace warped;

TEST_CASE("parse classification")
{
    CHECK(parse_profile("1").kind() == CurvatureProfile::Kind::Constant);
    CHECK(parse_profile("2+3").kind() == CurvatureProfile::Kind::Constant);
    CHECK(parse_profile("t").kind() == CurvatureProfile::Kind::Rational);
    CHECK(parse_profile("12/(45-(t-3)^2)").kind() == CurvatureProfile::Kind::Rational);
    CHECK(parse_profile("12/(80-(t-4)^2)").kind() == CurvatureProfile::Kind::Rational);
    CHECK(parse_profile("sin(t)").kind() == CurvatureProfile::Kind::Expression);
    CHECK(parse_profile("1/(1+exp(t))").kind() == CurvatureProfile::Kind::Expression);
}

TEST_CASE("evaluation matches the mathematical expression")
{
    CHECK(parse_profile("1").evaluate(0.7) == 1.0);
    CHECK(parse_profile("12/(45-(t-3)^2)").evaluate(3.0) ==
          doctest::Approx(12.0 / 45.0).epsilon(1e-15));
    CHECK(parse_profile("12/(45-(t-3)^2)").evaluate(0.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(parse_profile("12/(80-(t-4)^2)").evaluate(0.0) == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(builtin_profile("paper-a").evaluate(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(builtin_profile("paper-b").evaluate(0.0) == 0.1875);
}

TEST_CASE("domain and pole failures are loud")
{
    auto p = parse_profile("1/(2-t)");
    CHECK_THROWS_AS(p.evaluate(2.0), EvalError);
    CHECK_THROWS_AS(p.evaluate(-0.5), EvalError);
    auto bounded = parse_profile("t").with_domain(1.0);
    CHECK_THROWS_AS(bounded.evaluate(1.5), EvalError);
    CHECK(bounded.evaluate(1.0) == 1.0);
}

TEST_CASE("symmetry checker")
{
    auto c = parse_profile("1");
    SymmetryReport rep = check_symmetry(c, 3.14159, 1e-12);
    CHECK(rep.symmetric);
    CHECK(rep.max_asymmetry == 0.0);

    SymmetryReport a = check_symmetry(builtin_profile("paper-a"), 6.0, 1e-12);
    CHECK(a.symmetric);

    SymmetryReport asym = check_symmetry(parse_profile("t"), 1.0, 1e-12);
    CHECK_FALSE(asym.symmetric);
    CHECK(asym.max_asymmetry > 0.9);
    CHECK(asym.max_asymmetry <= 1.0);
}

TEST_CASE("symmetry report is consistent with its own definition")
{
    SymmetryReport rep = check_symmetry(builtin_profile("paper-b"), 8.0, 1e-12, 256);
    CHECK(rep.symmetric == (rep.max_asymmetry <= rep.tolerance));
    // Doubling samples leaves a converged report stable.
    SymmetryReport rep2 = check_symmetry(builtin_profile("paper-b"), 8.0, 1e-12, 512);
    CHECK(std::abs(rep2.max_asymmetry - rep.max_asymmetry) <= 2.0 * rep.tolerance);
}

TEST_CASE("scale_profile: constants and the scaling identity")
{
    auto k1 = parse_profile("1");
    auto k4 = scale_profile(k1, 2.0);
    CHECK(k4.evaluate(0.3) == 4.0);
    auto back = scale_profile(k4, 0.5);
    CHECK(back.evaluate(0.3) == 1.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ts(0.0, 2.0);
    for (const char* text : {"12/(45-(t-3)^2)", "sin(t)+2", "t^2+1"}) {
        auto p = parse_profile(text);
        for (double s : {0.5, 2.0}) {
            auto ps = scale_profile(p, s);
            for (int i = 0; i < 25; ++i) {
                double t = ts(rng);
                CHECK(ps.evaluate(t) == doctest::Approx(s * s * p.evaluate(s * t)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("scale_profile shrinks the declared domain")
{
    auto p = parse_profile("1").with_domain(4.0);
    auto ps = scale_profile(p, 2.0);
    REQUIRE(ps.t_max().has_value());
    CHECK(*ps.t_max() == 2.0);
}

TEST_CASE("print/parse round trip evaluates identically")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ts(0.0, 5.0);
    for (const char* text :
         {"1", "t", "12/(45-(t-3)^2)", "12/(80-(t-4)^2)", "sin(t)*sin(t)+cos(t)^2", "2*t^3-t+0.25"}) {
        auto p = parse_profile(text);
        auto q = parse_profile(print_profile(p));
        for (int i = 0; i < 100; ++i) {
            double t = ts(rng);
            CHECK(p.evaluate(t) == q.evaluate(t));
        }
    }
}

TEST_CASE("scaled profiles reparse to the same values")
{
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ts(0.0, 2.0);
    auto p = scale_profile(builtin_profile("paper-a"), 2.0);
    auto q = parse_profile(print_profile(p));
    for (int i = 0; i < 100; ++i) {
        double t = ts(rng);
        CHECK(p.evaluate(t) == doctest::Approx(q.evaluate(t)).epsilon(1e-15));
    }
}

TEST_CASE("tabulated profiles interpolate monotonically")
{
    std::vector<double> t{0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> k{1.0, 2.0, 4.0, 4.5, 4.6};
    auto p = CurvatureProfile::tabulated(t, k);
    CHECK(p.kind() == CurvatureProfile::Kind::Tabulated);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(p.evaluate(t[i]) == doctest::Approx(k[i]).epsilon(1e-14));
    // Monotone data stays monotone between knots.
    double prev = p.evaluate(0.0);
    for (int i = 1; i <= 400; ++i) {
        double v = p.evaluate(4.0 * i / 400.0);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK_THROWS_AS(CurvatureProfile::tabulated({0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CurvatureProfile::tabulated({0.5, 1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("builtin profiles")
{
    CHECK(builtin_profile("sphere", 4.0).evaluate(1.0) == 4.0);
    CHECK(builtin_profile("flat").evaluate(3.0) == 0.0);
    CHECK_THROWS_AS(builtin_profile("nope"), std::invalid_argument);
}
