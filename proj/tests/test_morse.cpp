#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topo/morse.hpp"

using namespace topo;
using doctest::Approx;

namespace {

SurfaceChart torus_chart() {
    return SurfaceChart(0, 2 * M_PI, 0, 2 * M_PI, true, true);
}

ScalarField torus_height() {
    return ScalarField{
        [](double u, double v) { return (std::cos(u) + 2) * std::cos(v); },
        torus_chart()};
}

}  // namespace

TEST_CASE("torus height has exactly the four expected critical points") {
    const auto pts = find_critical_points(torus_height());
    REQUIRE(pts.size() == 4);
    const SurfaceChart ch = torus_chart();
    const std::array<Vec2, 4> expected{{{0, 0}, {0, M_PI}, {M_PI, 0}, {M_PI, M_PI}}};
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& p : pts)
            if (ch.distance(p.position, e) < 1e-6) found = true;
        CAPTURE(e[0]);
        CAPTURE(e[1]);
        CHECK(found);
    }
    for (const auto& p : pts) CHECK(p.gradient_norm < 1e-7);
}

TEST_CASE("torus height Hessians match the analytic matrices") {
    const ScalarField h = torus_height();
    const Mat2 h1 = hessian(h, {0, 0});
    CHECK(h1.a == Approx(-1).epsilon(1e-4));
    CHECK(h1.d == Approx(-3).epsilon(1e-4));
    CHECK(std::abs(h1.b) < 1e-4);
    const Mat2 h3 = hessian(h, {M_PI, 0});
    CHECK(h3.a == Approx(1).epsilon(1e-4));
    CHECK(h3.d == Approx(-1).epsilon(1e-4));
    // Symmetrization residual is tiny relative to the matrix norm.
    CHECK(std::abs(h1.b - h1.c) < 1e-6 * std::abs(h1.d));
}

TEST_CASE("hessian of u*v at the origin") {
    const ScalarField f{[](double u, double v) { return u * v; },
                        SurfaceChart(-1, 1, -1, 1)};
    const Mat2 H = hessian(f, {0, 0});
    CHECK(std::abs(H.a) < 1e-4);
    CHECK(H.b == Approx(1).epsilon(1e-4));
    CHECK(H.c == Approx(1).epsilon(1e-4));
    const auto pts = find_critical_points(f);
    REQUIRE(pts.size() == 1);
    CHECK(norm(pts[0].position) < 1e-6);
    CHECK(pts[0].index == 1);
}

TEST_CASE("morse indices of the torus height") {
    const auto report = is_morse(torus_height());
    CHECK(report.is_morse);
    const SurfaceChart ch = torus_chart();
    const auto index_at = [&](Vec2 q) {
        for (const auto& p : report.points)
            if (ch.distance(p.position, q) < 1e-6) return morse_index(p);
        return -1;
    };
    CHECK(index_at({0, 0}) == 2);
    CHECK(index_at({0, M_PI}) == 0);
    CHECK(index_at({M_PI, 0}) == 1);
    CHECK(index_at({M_PI, M_PI}) == 1);
    CHECK(euler_from_indices(report) == 0);
}

TEST_CASE("degenerate point of u^3 + v^2 is flagged") {
    const ScalarField f{[](double u, double v) { return u * u * u + v * v; },
                        SurfaceChart(-1, 1, -1, 1)};
    const auto report = is_morse(f);
    CHECK_FALSE(report.is_morse);
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].degenerate);
    CHECK_THROWS_AS(morse_index(report.points[0]), DegeneratePoint);
    CHECK_THROWS_AS(euler_from_indices(report), NotMorse);
    CHECK_THROWS_AS(reeb_sphere_check(report), NotMorse);
}

TEST_CASE("paraboloid has a single minimum") {
    const ScalarField f{[](double u, double v) { return u * u + v * v; },
                        SurfaceChart(-1, 1, -1, 1)};
    const auto report = is_morse(f);
    CHECK(report.is_morse);
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].index == 0);
}

TEST_CASE("serial and parallel scans agree") {
    SolverOptions serial;
    serial.parallel = false;
    SolverOptions parallel;
    parallel.parallel = true;
    const auto a = find_critical_points(torus_height(), serial);
    const auto b = find_critical_points(torus_height(), parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position[0] == b[i].position[0]);
        CHECK(a[i].position[1] == b[i].position[1]);
    }
}

TEST_CASE("level components of the torus height match the flood-fill oracle") {
    const ScalarField h = torus_height();
    // Critical values are {-3, -1, 1, 3}.
    CHECK(level_component_count(h, 2.9, 256) == 1);
    CHECK(oracle::flood_fill_level_components(h, 2.9, 256) == 1);
    CHECK(level_component_count(h, 0.0, 256) == 2);
    CHECK(oracle::flood_fill_level_components(h, 0.0, 256) == 2);
    CHECK(level_component_count(h, -2.9, 256) == 1);
    for (double y : {-2.5, -1.7, -0.4, 0.8, 1.3, 2.2}) {
        CAPTURE(y);
        CHECK(level_component_count(h, y, 256) ==
              oracle::flood_fill_level_components(h, y, 256));
    }
}

TEST_CASE("level components of a circle") {
    const ScalarField f{[](double u, double v) { return u * u + v * v; },
                        SurfaceChart(-1, 1, -1, 1)};
    CHECK(level_component_count(f, 0.5, 128) == 1);
    CHECK(oracle::flood_fill_level_components(f, 0.5, 128) == 1);
}

TEST_CASE("level count is constant between consecutive critical values") {
    const ScalarField h = torus_height();
    const std::array<std::pair<double, double>, 3> intervals{
        {{-3, -1}, {-1, 1}, {1, 3}}};
    for (const auto& [lo, hi] : intervals) {
        int first = -1;
        for (int k = 1; k <= 5; ++k) {
            const double y = lo + k * (hi - lo) / 6.0;
            const int n = level_component_count(h, y, 256);
            if (first < 0) first = n;
            CAPTURE(y);
            CHECK(n == first);
        }
    }
}

TEST_CASE("sphere model satisfies the Reeb criterion") {
    const auto report = sphere_height_report();
    CHECK(report.is_morse);
    REQUIRE(report.points.size() == 2);
    CHECK(reeb_sphere_check(report));
    CHECK(euler_from_indices(report) == 2);
    CHECK_FALSE(reeb_sphere_check(is_morse(torus_height())));
}

TEST_CASE("morse index is invariant under linear chart reparametrization") {
    const ScalarField h = torus_height();
    const auto base_points = find_critical_points(h);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Mat2 A{coef(rng), coef(rng), coef(rng), coef(rng)};
        if (std::abs(A.det()) < 0.3) {
            --trial;  // keep well-conditioned samples only
            continue;
        }
        for (const auto& cp : base_points) {
            const Vec2 p = cp.position;
            // g(x) = h(A x) has a critical point at A^-1 p with the same index.
            const ScalarField g{
                [&A, &h](double u, double v) {
                    const Vec2 y = A.apply({u, v});
                    return h.eval(y[0], y[1]);
                },
                SurfaceChart(-20, 20, -20, 20)};
            const Vec2 q = A.solve(p);
            const Mat2 H = hessian(g, q);
            const auto eig = H.sym_eigenvalues();
            const int index = (eig[0] < 0 ? 1 : 0) + (eig[1] < 0 ? 1 : 0);
            CAPTURE(trial);
            CHECK(index == cp.index);
        }
    }
}

TEST_CASE("central-difference gradient error shrinks ~4x when halving h") {
    const ScalarField f{[](double u, double v) { return std::sin(2 * u) * std::cos(v); },
                        SurfaceChart(0, 1, 0, 1)};
    const Vec2 p{0.3, 0.4};
    const double exact = 2 * std::cos(2 * p[0]) * std::cos(p[1]);
    SolverOptions coarse;
    coarse.grad_step_rel = 1e-2;
    SolverOptions fine;
    fine.grad_step_rel = 5e-3;
    const double e1 = std::abs(gradient(f, p, coarse)[0] - exact);
    const double e2 = std::abs(gradient(f, p, fine)[0] - exact);
    CHECK(e1 / e2 == Approx(4).epsilon(0.15));
}

TEST_CASE("resolution below 16 is rejected") {
    CHECK_THROWS_AS(level_component_count(torus_height(), 0.0, 8),
                    std::invalid_argument);
}
