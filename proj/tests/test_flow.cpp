#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "topo/flow.hpp"
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

ScalarField perturbed_torus_height() {
    return ScalarField{
        [](double u, double v) {
            return (std::cos(u) + 2) * std::cos(v) + 0.3 * std::sin(u) * std::sin(v);
        },
        torus_chart()};
}

const SingularPoint* nearest(const std::vector<SingularPoint>& pts, Vec2 q,
                             const SurfaceChart& ch) {
    const SingularPoint* best = nullptr;
    double bd = 1e300;
    for (const auto& s : pts) {
        const double d = ch.distance(s.position, q);
        if (d < bd) {
            bd = d;
            best = &s;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("gradient field matches analytic gradients") {
    const ScalarField f{[](double u, double v) { return u * u - v * v * v; },
                        SurfaceChart(-2, 2, -2, 2)};
    const VectorField X = gradient_field(f);
    const Vec2 g = X({1.0, 1.0});
    CHECK(g[0] == Approx(2).epsilon(1e-6));
    CHECK(g[1] == Approx(-3).epsilon(1e-6));

    const VectorField gh = gradient_field(torus_height());
    const Vec2 at = gh({0.5, 1.0});
    CHECK(at[0] == Approx(-std::sin(0.5) * std::cos(1.0)).epsilon(1e-6));
    CHECK(at[1] == Approx(-std::sin(1.0) * (2 + std::cos(0.5))).epsilon(1e-6));

    const ScalarField c{[](double, double) { return 5.0; }, SurfaceChart(-1, 1, -1, 1)};
    const Vec2 z = gradient_field(c)({0.2, 0.3});
    CHECK(std::abs(z[0]) < 1e-12);
    CHECK(std::abs(z[1]) < 1e-12);
}

TEST_CASE("singular points of the torus gradient are classified") {
    const VectorField X = gradient_field(torus_height());
    const auto pts = find_singular_points(X);
    REQUIRE(pts.size() == 4);
    const SurfaceChart ch = torus_chart();
    // Uphill convention: the maximum (0,0) is a sink, the minimum a source.
    CHECK(nearest(pts, {0, 0}, ch)->kind == SingularKind::Sink);
    CHECK(nearest(pts, {0, M_PI}, ch)->kind == SingularKind::Source);
    CHECK(nearest(pts, {M_PI, 0}, ch)->kind == SingularKind::Saddle);
    CHECK(nearest(pts, {M_PI, M_PI}, ch)->kind == SingularKind::Saddle);
    const Mat2 J = nearest(pts, {0, 0}, ch)->jacobian;
    CHECK(J.a == Approx(-1).epsilon(1e-3));
    CHECK(J.d == Approx(-3).epsilon(1e-3));
    CHECK(std::abs(J.b - J.c) < 1e-6);
}

TEST_CASE("constant field has no singular points") {
    const VectorField X{[](double, double) -> Vec2 { return {1.0, 0.0}; },
                        SurfaceChart(0, 1, 0, 1)};
    CHECK(find_singular_points(X).empty());
}

TEST_CASE("linear saddle field") {
    const VectorField X{[](double u, double v) -> Vec2 { return {u, -v}; },
                        SurfaceChart(-1, 1, -1, 1)};
    const auto pts = find_singular_points(X);
    REQUIRE(pts.size() == 1);
    CHECK(norm(pts[0].position) < 1e-9);
    CHECK(pts[0].kind == SingularKind::Saddle);
    const auto seps = separatrices(X, pts[0], {}, pts);
    for (const auto& s : seps)
        CHECK(s.trajectory.termination == Termination::LeftChart);
    // Separatrices run along the coordinate axes.
    for (const auto& s : seps) {
        const auto& last = s.trajectory.samples.back();
        if (s.stable)
            CHECK(std::abs(last[1]) < 1e-6);  // u stays 0 going backward
        else
            CHECK(std::abs(last[2]) < 1e-6);
    }
}

TEST_CASE("trajectories of the torus gradient reach the sink and source") {
    const VectorField X = gradient_field(torus_height());
    const auto pts = find_singular_points(X);
    const SurfaceChart ch = torus_chart();
    FlowOptions opts;
    const Trajectory fwd = integrate_trajectory(X, {0.1, 0.1}, true, opts, pts);
    REQUIRE(fwd.termination == Termination::ReachedSingular);
    CHECK(ch.distance(pts[fwd.singular_index].position, {0, 0}) < 1e-6);
    const Trajectory bwd = integrate_trajectory(X, {0.1, 0.1}, false, opts, pts);
    REQUIRE(bwd.termination == Termination::ReachedSingular);
    CHECK(ch.distance(pts[bwd.singular_index].position, {0, M_PI}) < 1e-6);
}

TEST_CASE("straight field leaves a bounded chart") {
    const VectorField X{[](double, double) -> Vec2 { return {1.0, 0.0}; },
                        SurfaceChart(0, 1, 0, 1)};
    const Trajectory tr = integrate_trajectory(X, {0.0, 0.5}, true, {}, {});
    CHECK(tr.termination == Termination::LeftChart);
}

TEST_CASE("rotation field yields a closed orbit") {
    const VectorField X{[](double u, double v) -> Vec2 { return {-v, u}; },
                        SurfaceChart(-2, 2, -2, 2)};
    const auto pts = find_singular_points(X);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].kind == SingularKind::NonHyperbolic);
    const Trajectory tr = integrate_trajectory(X, {1.0, 0.0}, true, {}, pts);
    CHECK(tr.termination == Termination::ClosedOrbit);
    // One full revolution takes time 2*pi.
    CHECK(tr.samples.back()[0] == Approx(2 * M_PI).epsilon(0.01));
}

TEST_CASE("function is non-decreasing along gradient trajectories") {
    const ScalarField h = torus_height();
    const VectorField X = gradient_field(h);
    const auto pts = find_singular_points(X);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> coord(0.0, 2 * M_PI);
    FlowOptions opts;
    for (int trial = 0; trial < 20; ++trial) {
        const Trajectory tr =
            integrate_trajectory(X, {coord(rng), coord(rng)}, true, opts, pts);
        double prev = -1e300;
        for (const auto& s : tr.samples) {
            const double val = h.eval(s[1], s[2]);
            CHECK(val >= prev - 1e-9 * 3.0);
            prev = val;
        }
    }
}

TEST_CASE("flow property: t then s equals t+s on a short arc") {
    const VectorField X = gradient_field(torus_height());
    FlowOptions opts;
    const double dt = opts.dt_rel * X.chart.span();
    const Vec2 seed{1.0, 2.0};
    // 200 steps, then 100+100 with a restart.
    const auto step_n = [&](Vec2 p, int n) {
        for (int i = 0; i < n; ++i) {
            const Vec2 k1 = X(p);
            const Vec2 k2 = X(p + (0.5 * dt) * k1);
            const Vec2 k3 = X(p + (0.5 * dt) * k2);
            const Vec2 k4 = X(p + dt * k3);
            p = X.chart.normalize(p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        }
        return p;
    };
    const Vec2 once = step_n(seed, 200);
    const Vec2 twice = step_n(step_n(seed, 100), 100);
    CHECK(X.chart.distance(once, twice) < 10 * dt);
}

TEST_CASE("RK4 endpoint error shrinks ~16x when halving dt") {
    const VectorField X{[](double u, double v) -> Vec2 { return {-v, u}; },
                        SurfaceChart(-2, 2, -2, 2)};
    const auto endpoint = [&](double dt, int steps) {
        Vec2 p{1.0, 0.0};
        for (int i = 0; i < steps; ++i) {
            const Vec2 k1 = X(p);
            const Vec2 k2 = X(p + (0.5 * dt) * k1);
            const Vec2 k3 = X(p + (0.5 * dt) * k2);
            const Vec2 k4 = X(p + dt * k3);
            p = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return p;
    };
    const double T = 2.0;
    const Vec2 exact{std::cos(T), std::sin(T)};
    const double e1 = norm(endpoint(0.02, 100) - exact);
    const double e2 = norm(endpoint(0.01, 200) - exact);
    CHECK(e1 / e2 > 8);
    CHECK(e1 / e2 < 32);
}

TEST_CASE("torus gradient is not Morse-Smale: saddle connections on u=pi") {
    const VectorField X = gradient_field(torus_height());
    const MSVerdict v = morse_smale_check(X);
    CHECK(v.status == MSStatus::NotMorseSmale);
    CHECK(v.all_nondegenerate);
    REQUIRE_FALSE(v.saddle_connections.empty());
    const SurfaceChart ch = torus_chart();
    bool between_expected = false;
    for (const auto& sc : v.saddle_connections) {
        const Vec2 a = v.singular_points[sc.from_saddle].position;
        const Vec2 b = v.singular_points[sc.to_saddle].position;
        if ((ch.distance(a, {M_PI, M_PI}) < 1e-4 && ch.distance(b, {M_PI, 0}) < 1e-4) ||
            (ch.distance(a, {M_PI, 0}) < 1e-4 && ch.distance(b, {M_PI, M_PI}) < 1e-4))
            between_expected = true;
    }
    CHECK(between_expected);
}

TEST_CASE("perturbed torus gradient is Morse-Smale with the expected graph") {
    const VectorField X = gradient_field(perturbed_torus_height());
    const MSVerdict v = morse_smale_check(X);
    CHECK(v.status == MSStatus::MorseSmale);
    const MorseSmaleGraph g = ms_graph(X, {}, /*is_gradient=*/true);
    int sources = 0, sinks = 0, saddles = 0;
    for (const auto& n : g.nodes) {
        if (n.kind == SingularKind::Source) ++sources;
        if (n.kind == SingularKind::Sink) ++sinks;
        if (n.kind == SingularKind::Saddle) ++saddles;
    }
    CHECK(sources == 1);
    CHECK(sinks == 1);
    CHECK(saddles == 2);
    CHECK(g.edges.size() == 8);
}

TEST_CASE("open-chart saddle is reported as NotClosedManifold") {
    const VectorField X{[](double u, double v) -> Vec2 { return {u, -v}; },
                        SurfaceChart(-1, 1, -1, 1)};
    const MSVerdict v = morse_smale_check(X);
    CHECK(v.status == MSStatus::NotClosedManifold);
    CHECK_FALSE(v.is_morse_smale());
}

TEST_CASE("ms_graph refuses non-Morse-Smale fields") {
    const VectorField X = gradient_field(torus_height());
    CHECK_THROWS_AS(ms_graph(X), NotMorseSmale);
    CHECK_NOTHROW(ms_graph(X, {}, false, /*force=*/true));
}

TEST_CASE("graph isomorphism basics") {
    const VectorField X = gradient_field(perturbed_torus_height());
    const MorseSmaleGraph g = ms_graph(X, {}, true);
    CHECK(ms_graph_isomorphic(g, g));

    FlowOptions coarse;
    coarse.grid_n = 64;
    FlowOptions fine;
    fine.grid_n = 128;
    const MorseSmaleGraph g64 = ms_graph(X, coarse, true);
    const MorseSmaleGraph g128 = ms_graph(X, fine, true);
    CHECK(ms_graph_isomorphic(g64, g128));

    // Sphere height: two nodes, no saddles.
    MorseSmaleGraph sphere;
    sphere.nodes.push_back({SingularKind::Source, {0, M_PI}, 0});
    sphere.nodes.push_back({SingularKind::Sink, {0, 0}, 2});
    CHECK_FALSE(ms_graph_isomorphic(g, sphere));
    CHECK(ms_graph_isomorphic(sphere, sphere));

    // Node-id permutation does not matter.
    MorseSmaleGraph permuted = g;
    std::reverse(permuted.nodes.begin(), permuted.nodes.end());
    const int n = static_cast<int>(g.nodes.size());
    for (auto& e : permuted.edges) {
        e.saddle = n - 1 - e.saddle;
        e.target = n - 1 - e.target;
    }
    CHECK(ms_graph_isomorphic(g, permuted));

    MorseSmaleGraph big;
    for (int i = 0; i < 17; ++i) big.nodes.push_back({SingularKind::Source, {0, 0}, 0});
    CHECK_THROWS_AS(ms_graph_isomorphic(big, big), TooLarge);
}

TEST_CASE("time reversal swaps sources and sinks") {
    const ScalarField h = perturbed_torus_height();
    const VectorField X = gradient_field(h);
    const VectorField Xrev{
        [X](double u, double v) -> Vec2 {
            const Vec2 x = X.eval(u, v);
            return {-x[0], -x[1]};
        },
        X.chart};
    const MorseSmaleGraph g = ms_graph(X);
    MorseSmaleGraph grev = ms_graph(Xrev);
    // Swap labels and roles, then the graphs must match.
    for (auto& n : grev.nodes) {
        if (n.kind == SingularKind::Source)
            n.kind = SingularKind::Sink;
        else if (n.kind == SingularKind::Sink)
            n.kind = SingularKind::Source;
    }
    for (auto& e : grev.edges) e.stable = !e.stable;
    CHECK(ms_graph_isomorphic(g, grev));
}

TEST_CASE("separatrices require a saddle") {
    const VectorField X = gradient_field(torus_height());
    const auto pts = find_singular_points(X);
    const SurfaceChart ch = torus_chart();
    const SingularPoint* sink = nearest(pts, {0, 0}, ch);
    CHECK_THROWS_AS(separatrices(X, *sink, {}, pts), NotASaddle);
}

TEST_CASE("seed outside a bounded chart is rejected") {
    const VectorField X{[](double, double) -> Vec2 { return {1.0, 0.0}; },
                        SurfaceChart(0, 1, 0, 1)};
    CHECK_THROWS_AS(integrate_trajectory(X, {5.0, 0.5}, true, {}, {}),
                    std::invalid_argument);
}
