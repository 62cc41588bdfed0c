#include <doctest.h>

#include "sodehelm/numeric.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace sodehelm;
using testsupport::spray;

TEST_CASE("integrate_geodesic: free motion is exact") {
    Semispray S = spray(2, {"0", "0"});
    Point start{0.0, {0.3, -0.2}, {1.5, 0.25}};
    Trajectory traj = integrate_geodesic(S, start, 1e-2, 100);
    REQUIRE(traj.samples.size() == 101);
    CHECK_FALSE(traj.domain_error);
    for (const auto& s : traj.samples) {
        for (int i = 0; i < 2; ++i) {
            CHECK(s.x[i] == doctest::Approx(start.x[i] + start.y[i] * s.t).epsilon(1e-14));
            CHECK(s.y[i] == doctest::Approx(start.y[i]).epsilon(1e-15));
        }
    }
}

TEST_CASE("integrate_geodesic: harmonic oscillator hits cos(1)") {
    // x'' + x = 0  <->  2G = x
    Semispray S = spray(1, {"1/2*x1"});
    Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {0.0}}, 1e-3, 1000);
    REQUIRE(traj.samples.size() == 1001);
    double x1 = traj.samples.back().x[0];
    CHECK(std::abs(x1 - std::cos(1.0)) <= 1e-8);
    CHECK(std::abs(traj.samples.back().y[0] + std::sin(1.0)) <= 1e-8);
}

TEST_CASE("integrate_geodesic: separable closed form y(t) = 1/(2-t)") {
    // x2'' = (x2')^2, start y2(0) = 1/2
    Semispray S = spray(2, {"y2", "-1/2*y2^2"});
    Trajectory traj = integrate_geodesic(S, Point{0.0, {0.2, 0.4}, {0.1, 0.5}}, 1e-3, 1000);
    double y2 = traj.samples.back().y[1];
    CHECK(std::abs(y2 - 1.0) <= 1e-6);
}

TEST_CASE("integrate_geodesic: consistency residual is O(h^2)") {
    Semispray S = spray(1, {"1/2*x1"});
    for (double h : {1e-2, 1e-3}) {
        Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {0.0}}, h, 50);
        CHECK(traj.consistency_residual <= 10 * h * h);
    }
}

TEST_CASE("integrate_geodesic: domain error truncates with a flag") {
    Semispray S = spray(1, {"sqrt(x1)"});  // leaves the domain once x1 goes negative
    Trajectory traj = integrate_geodesic(S, Point{0.0, {0.05}, {-1.0}}, 1e-2, 500);
    CHECK(traj.domain_error);
    CHECK(traj.truncated_at_step >= 0);
    CHECK(traj.samples.size() < 501);
}

TEST_CASE("RK4 order: halving h cuts the endpoint error ~16x") {
    Semispray S = spray(1, {"1/2*x1"});
    auto endpoint_error = [&](double h, int steps) {
        Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {0.0}}, h, steps);
        return std::abs(traj.samples.back().x[0] - std::cos(1.0));
    };
    double e1 = endpoint_error(0.1, 10);
    double e2 = endpoint_error(0.05, 20);
    double ratio = e1 / e2;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("euler_lagrange_residual") {
    SUBCASE("free particle") {
        Semispray S = spray(2, {"0", "0"});
        Trajectory traj = integrate_geodesic(S, Point{0.0, {0.3, 0.4}, {0.8, -0.1}}, 1e-3, 1000);
        CHECK(euler_lagrange_residual(parse("1/2*(y1^2+y2^2)", 2), 2, traj) <= 1e-8);
    }
    SUBCASE("harmonic oscillator pair") {
        Semispray S = spray(1, {"1/2*x1"});
        Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {0.0}}, 1e-3, 1000);
        CHECK(euler_lagrange_residual(parse("1/2*y1^2 - 1/2*x1^2", 1), 1, traj) <= 1e-6);
    }
    SUBCASE("mismatched pair has a large residual") {
        Semispray S = spray(1, {"x1"});  // x'' = -2x
        Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {0.0}}, 1e-3, 1000);
        // d/dt(dL/dy) - dL/dx = x'' + x = -x along the trajectory
        CHECK(euler_lagrange_residual(parse("1/2*y1^2 - 1/2*x1^2", 1), 1, traj) >= 0.1);
    }
}

TEST_CASE("fd_check") {
    SamplePlan plan;
    plan.count = 30;
    SUBCASE("low-degree polynomials are nearly exact") {
        FdCheckReport rep = fd_check(parse("x1^3 - 2*t*y1 + 1/3*x1*y1", 1), 1, plan);
        CHECK(rep.points_used == 30);
        CHECK(rep.max_rel_error <= 1e-9);
    }
    SUBCASE("trig/exp compositions stay within 1e-5") {
        Expr e = parse("sin(cos(t*x1) + exp(y1))*cos(x1^2 - y1)", 1);
        FdCheckReport rep = fd_check(e, 1, plan);
        CHECK(rep.points_used == 30);
        CHECK(rep.max_rel_error <= 1e-5);
    }
    SUBCASE("domain errors are resampled") {
        // ln(x1 - 1/2) fails on roughly half the box
        FdCheckReport rep = fd_check(parse("ln(x1 - 1/2)", 1), 1, plan);
        CHECK(rep.resamples > 0);
        CHECK(rep.points_used > 0);
        CHECK(rep.max_rel_error <= 1e-4);
    }
}

TEST_CASE("numeric results are reproducible") {
    Semispray S = spray(2, {"y2", "-1/2*y2^2"});
    Trajectory a = integrate_geodesic(S, Point{0.0, {0.2, 0.4}, {0.1, 0.5}}, 1e-3, 200);
    Trajectory b = integrate_geodesic(S, Point{0.0, {0.2, 0.4}, {0.1, 0.5}}, 1e-3, 200);
    CHECK(format_trajectory(a) == format_trajectory(b));

    SamplePlan plan;
    Expr e = parse("sin(t*x1)*y1", 1);
    CHECK(fd_check(e, 1, plan).max_rel_error == fd_check(e, 1, plan).max_rel_error);
}

TEST_CASE("format_trajectory layout") {
    Semispray S = spray(1, {"0"});
    Trajectory traj = integrate_geodesic(S, Point{0.0, {1.0}, {2.0}}, 0.5, 2);
    std::string text = format_trajectory(traj);
    CHECK(text.find("# method: rk4") == 0);
    CHECK(text.find("# status: ok") != std::string::npos);
    // one sample per line: t, x, y tab-separated
    CHECK(text.find("0.5\t2\t2\n") != std::string::npos);
    CHECK(text.find("1\t3\t2\n") != std::string::npos);
}

TEST_CASE("numeric_rank") {
    std::vector<std::vector<double>> m = {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
    CHECK(numeric_rank(m) == 2);
    std::vector<std::vector<double>> tiny = {{1e-12, 0}, {0, 1e-12}};
    CHECK(numeric_rank(tiny) == 0);
    std::vector<std::vector<double>> id = {{1, 0}, {0, 1}};
    CHECK(numeric_rank(id) == 2);
}

TEST_CASE("integrate_geodesic argument validation") {
    Semispray S = spray(1, {"0"});
    CHECK_THROWS_AS(integrate_geodesic(S, Point{0.0, {1.0}, {1.0}}, 0.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_geodesic(S, Point{0.0, {1.0, 2.0}, {1.0}}, 0.1, 10),
                    std::invalid_argument);
}
