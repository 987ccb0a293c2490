#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "warped/oracle.hpp"

using namespace warped;
constexpr double pi = std::numbers::pi;

namespace {

ModelSpace sphere_model(double K, int n)
{
    CurvatureProfile p = CurvatureProfile::constant(K);
    ClosingLength cl = find_closing_length(p, 4.0 * pi / std::sqrt(K));
    REQUIRE(cl.closes);
    return ModelSpace(n, integrate_warp(p, cl.l), "sphere", true);
}

ModelSpace flat_model(int n, double t_max)
{
    return ModelSpace(n, integrate_warp(CurvatureProfile::constant(0.0), t_max), "flat", false);
}

TridiagonalPencil hand_pencil()
{
    TridiagonalPencil p;
    p.diag = {2.0, 2.0};
    p.offdiag = {-1.0};
    p.mass = {1.0, 1.0};
    p.grid = {0.25, 0.75};
    p.h = 0.5;
    p.problem = BallProblem{1.0, 0};
    return p;
}

} // namespace

TEST_CASE("2x2 pencil eigenvalues by hand: {1, 3}")
{
    auto ev = smallest_eigenvalues(hand_pencil(), 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue sequences are nondecreasing")
{
    ModelSpace disk = flat_model(2, 2.0);
    auto ev = smallest_eigenvalues(discretize_ball(disk, 1.0, 0, 256), 6);
    for (std::size_t i = 0; i + 1 < ev.size(); ++i)
        CHECK(ev[i] <= ev[i + 1]);
}

TEST_CASE("flat disk smallest eigenvalue approximates j01^2")
{
    double expect = testoracle::j01() * testoracle::j01();
    ModelSpace disk = flat_model(2, 2.0);
    double ev = smallest_eigenvalues(discretize_ball(disk, 1.0, 0, 2048), 1)[0];
    CHECK(ev == doctest::Approx(expect).epsilon(1e-3 / expect));
    double extrap = ball_lambda1_extrapolated(disk, 1.0, 0, 4096);
    CHECK(extrap == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("hemisphere pencil: smallest eigenvalue near 2, m=1 above it")
{
    ModelSpace s2 = sphere_model(1.0, 2);
    double m0 = smallest_eigenvalues(discretize_ball(s2, pi / 2.0, 0, 2048), 1)[0];
    CHECK(m0 == doctest::Approx(2.0).epsilon(5e-4));
    double m1 = smallest_eigenvalues(discretize_ball(s2, pi / 2.0, 1, 2048), 1)[0];
    CHECK(m1 > m0);
}

TEST_CASE("closed unit 2-sphere spectrum: j(j+1)")
{
    ModelSpace s2 = sphere_model(1.0, 2);
    auto ev = smallest_eigenvalues(discretize_closed(s2, 0, 2048), 5);
    CHECK(std::abs(ev[0]) <= 1e-6);
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(5e-3));
    CHECK(ev[2] == doctest::Approx(6.0).epsilon(5e-3));
    CHECK(ev[3] == doctest::Approx(12.0).epsilon(5e-3));
    CHECK(ev[4] == doctest::Approx(20.0).epsilon(5e-3));
}

TEST_CASE("closed unit 3-sphere: first nonzero eigenvalue 3")
{
    ModelSpace s3 = sphere_model(1.0, 3);
    auto ev = smallest_eigenvalues(discretize_closed(s3, 0, 2048), 2);
    CHECK(std::abs(ev[0]) <= 1e-6);
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-2 / 3.0));
    auto extrap = closed_spectrum_extrapolated(s3, 0, 2, 2048);
    CHECK(extrap[1] == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("closed m=0 pencils have an exact constant kernel")
{
    ModelSpace s2 = sphere_model(1.0, 2);
    TridiagonalPencil p = discretize_closed(s2, 0, 512);
    double lambda0 = smallest_eigenvalues(p, 1)[0];
    CHECK(std::abs(lambda0) <= 1e-10 / (p.h * p.h));
    // row sums vanish identically
    for (std::size_t i = 0; i < p.diag.size(); ++i) {
        double sum = p.diag[i];
        if (i > 0)
            sum += p.offdiag[i - 1];
        if (i + 1 < p.diag.size())
            sum += p.offdiag[i];
        CHECK(std::abs(sum) <= 1e-12 * std::abs(p.diag[i]));
    }
}

TEST_CASE("pencil structure: M-matrix signs, positive mass")
{
    ModelSpace s3 = sphere_model(1.0, 3);
    for (int m : {0, 1, 2}) {
        TridiagonalPencil p = discretize_ball(s3, 1.2, m, 128);
        for (double v : p.mass)
            CHECK(v > 0.0);
        for (double v : p.offdiag)
            CHECK(v <= 0.0);
        for (double v : p.diag)
            CHECK(std::isfinite(v));
    }
}

TEST_CASE("richardson extrapolation identity")
{
    CHECK(richardson_extrapolate(2.01, 2.0025, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(richardson_extrapolate(1.0, 1.0, 2) == 1.0);
}

TEST_CASE("convergence order: halving h cuts the error by ~4")
{
    double expect = testoracle::j01() * testoracle::j01();
    ModelSpace disk = flat_model(2, 2.0);
    double e256 =
        std::abs(smallest_eigenvalues(discretize_ball(disk, 1.0, 0, 256), 1)[0] - expect);
    double e512 =
        std::abs(smallest_eigenvalues(discretize_ball(disk, 1.0, 0, 512), 1)[0] - expect);
    double ratio = e256 / e512;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);

    ModelSpace s2 = sphere_model(1.0, 2);
    double h256 = std::abs(smallest_eigenvalues(discretize_ball(s2, pi / 2.0, 0, 256), 1)[0] - 2.0);
    double h512 = std::abs(smallest_eigenvalues(discretize_ball(s2, pi / 2.0, 0, 512), 1)[0] - 2.0);
    double hratio = h256 / h512;
    CHECK(hratio >= 3.5);
    CHECK(hratio <= 4.5);
}

TEST_CASE("eigenvector node counts follow discrete Sturm theory")
{
    ModelSpace disk = flat_model(2, 2.0);
    TridiagonalPencil p = discretize_ball(disk, 1.0, 0, 512);
    auto ev = smallest_eigenvalues(p, 5);
    for (int k = 0; k < 5; ++k) {
        auto vec = pencil_eigenvector(p, ev[k]);
        CHECK(count_sign_changes(vec) == k);
    }
}

TEST_CASE("count_sign_changes handles exact zeros once")
{
    CHECK(count_sign_changes({1.0, 1.0, -1.0}) == 1);
    CHECK(count_sign_changes({1.0, 0.0, -1.0}) == 1);
    CHECK(count_sign_changes({1.0, -1.0, 1.0}) == 2);
    CHECK(count_sign_changes({1.0, 1.0, 1.0}) == 0);
}

TEST_CASE("pencil input validation")
{
    ModelSpace s2 = sphere_model(1.0, 2);
    CHECK_THROWS_AS(discretize_ball(s2, pi, 0, 128), std::invalid_argument); // r = l
    CHECK_THROWS_AS(discretize_ball(s2, 1.0, 0, 8), std::invalid_argument);  // N too small
    CHECK_THROWS_AS(discretize_closed(s2, -1, 128), std::invalid_argument);
    ModelSpace disk = flat_model(2, 2.0);
    CHECK_THROWS_AS(discretize_closed(disk, 0, 128), std::invalid_argument); // does not close
    CHECK_THROWS_AS(smallest_eigenvalues(hand_pencil(), 3), std::invalid_argument);
}
