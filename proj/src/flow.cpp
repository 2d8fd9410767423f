#include "topo/flow.hpp"

#include <algorithm>
#include <cmath>

#include "topo/morse.hpp"

namespace topo {

const char* to_string(SingularKind k) {
    switch (k) {
        case SingularKind::Source: return "source";
        case SingularKind::Sink: return "sink";
        case SingularKind::Saddle: return "saddle";
        case SingularKind::NonHyperbolic: return "non-hyperbolic";
        case SingularKind::Degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::ReachedSingular: return "reached-singular";
        case Termination::LeftChart: return "left-chart";
        case Termination::StepLimit: return "step-limit";
        case Termination::ClosedOrbit: return "closed-orbit";
    }
    return "?";
}

const char* to_string(MSStatus s) {
    switch (s) {
        case MSStatus::MorseSmale: return "morse-smale";
        case MSStatus::NotMorseSmale: return "not-morse-smale";
        case MSStatus::NotClosedManifold: return "not-closed-manifold";
    }
    return "?";
}

VectorField gradient_field(const ScalarField& f, const SolverOptions& opts) {
    const double hu = opts.grad_step_rel * f.chart.u_span();
    const double hv = opts.grad_step_rel * f.chart.v_span();
    auto eval = f.eval;
    return VectorField{
        [eval, hu, hv](double u, double v) -> Vec2 {
            return {(eval(u + hu, v) - eval(u - hu, v)) / (2 * hu),
                    (eval(u, v + hv) - eval(u, v - hv)) / (2 * hv)};
        },
        f.chart};
}

namespace {

Mat2 fd_jacobian(const VectorField& X, Vec2 p, const FlowOptions& opts) {
    const double hu = opts.hess_step_rel * X.chart.u_span();
    const double hv = opts.hess_step_rel * X.chart.v_span();
    const Vec2 xu_p = X.eval(p[0] + hu, p[1]);
    const Vec2 xu_m = X.eval(p[0] - hu, p[1]);
    const Vec2 xv_p = X.eval(p[0], p[1] + hv);
    const Vec2 xv_m = X.eval(p[0], p[1] - hv);
    return {(xu_p[0] - xu_m[0]) / (2 * hu), (xv_p[0] - xv_m[0]) / (2 * hv),
            (xu_p[1] - xu_m[1]) / (2 * hu), (xv_p[1] - xv_m[1]) / (2 * hv)};
}

SingularKind classify_jacobian(const std::array<std::complex<double>, 2>& eig,
                               double tol) {
    const double m0 = std::abs(eig[0]), m1 = std::abs(eig[1]);
    if (std::min(m0, m1) <= tol) return SingularKind::Degenerate;
    const double r0 = eig[0].real(), r1 = eig[1].real();
    if (std::abs(r0) <= tol || std::abs(r1) <= tol) return SingularKind::NonHyperbolic;
    if (r0 > 0 && r1 > 0) return SingularKind::Source;
    if (r0 < 0 && r1 < 0) return SingularKind::Sink;
    return SingularKind::Saddle;  // real with opposite signs
}

}  // namespace

std::vector<SingularPoint> find_singular_points(const VectorField& X,
                                                const FlowOptions& opts) {
    auto eval = X.eval;
    const double scale = field_scale(
        [eval](double u, double v) {
            const Vec2 x = eval(u, v);
            return std::max(std::abs(x[0]), std::abs(x[1]));
        },
        X.chart);
    const double tol_res = opts.tol_grad_rel * scale;
    const double tol_merge = opts.tol_merge_rel * X.chart.span();
    const auto F = [&](Vec2 p) { return X(p); };
    const auto J = [&](Vec2 p) { return fd_jacobian(X, p, opts); };
    const auto roots = grid_scan_roots(F, J, X.chart, opts.grid_n, tol_res, tol_merge,
                                       opts.max_newton_iters, opts.parallel);
    std::vector<SingularPoint> out;
    for (const auto& r : roots) {
        SingularPoint s;
        s.position = r;
        s.jacobian = fd_jacobian(X, r, opts);
        s.eigenvalues = s.jacobian.eigenvalues();
        const double emax =
            std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[1]));
        s.kind = classify_jacobian(s.eigenvalues, opts.tol_degenerate_rel *
                                                      std::max(emax, 1e-300));
        out.push_back(std::move(s));
    }
    return out;
}

Trajectory integrate_trajectory(const VectorField& X, Vec2 seed, bool forward,
                                const FlowOptions& opts,
                                const std::vector<SingularPoint>& singulars) {
    const SurfaceChart& ch = X.chart;
    Vec2 p = ch.normalize(seed);
    if (!ch.contains(p)) throw std::invalid_argument("seed outside chart");

    const double dt = opts.dt_rel * ch.span();
    const double tol_capture = opts.tol_capture_rel * ch.span();
    const double sign = forward ? 1.0 : -1.0;
    const auto field = [&](Vec2 q) { return sign * X(q); };

    std::vector<bool> inside(singulars.size(), false);
    for (std::size_t s = 0; s < singulars.size(); ++s)
        inside[s] = ch.distance(p, singulars[s].position) < tol_capture;

    Trajectory traj;
    traj.samples.push_back({0.0, p[0], p[1]});
    bool left_seed_ball = false;
    double t = 0.0;

    for (long step = 1; step <= opts.max_steps; ++step) {
        const Vec2 k1 = field(p);
        const Vec2 k2 = field(p + (0.5 * dt) * k1);
        const Vec2 k3 = field(p + (0.5 * dt) * k2);
        const Vec2 k4 = field(p + dt * k3);
        Vec2 q = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;

        if (!ch.contains(q)) {
            traj.samples.push_back({t, q[0], q[1]});
            traj.termination = Termination::LeftChart;
            return traj;
        }
        q = ch.normalize(q);
        p = q;
        if (step % opts.sample_stride == 0) traj.samples.push_back({t, p[0], p[1]});

        for (std::size_t s = 0; s < singulars.size(); ++s) {
            const bool in_ball = ch.distance(p, singulars[s].position) < tol_capture;
            if (in_ball && !inside[s]) {
                if (traj.samples.back()[0] != t) traj.samples.push_back({t, p[0], p[1]});
                traj.termination = Termination::ReachedSingular;
                traj.singular_index = static_cast<int>(s);
                return traj;
            }
            inside[s] = in_ball;
        }

        const double d_seed = ch.distance(p, seed);
        if (d_seed > 2 * tol_capture) left_seed_ball = true;
        if (left_seed_ball && step > 50 && d_seed < tol_capture) {
            if (traj.samples.back()[0] != t) traj.samples.push_back({t, p[0], p[1]});
            traj.termination = Termination::ClosedOrbit;
            return traj;
        }
    }
    if (traj.samples.back()[0] != t) traj.samples.push_back({t, p[0], p[1]});
    traj.termination = Termination::StepLimit;
    return traj;
}

std::array<Separatrix, 4> separatrices(const VectorField& X, const SingularPoint& saddle,
                                       const FlowOptions& opts,
                                       const std::vector<SingularPoint>& singulars) {
    if (saddle.kind != SingularKind::Saddle)
        throw NotASaddle("singular point is not a saddle");
    const double l0 = saddle.eigenvalues[0].real();
    const double l1 = saddle.eigenvalues[1].real();
    const double l_unstable = std::max(l0, l1);
    const double l_stable = std::min(l0, l1);
    const Vec2 vu = saddle.jacobian.eigenvector(l_unstable);
    const Vec2 vs = saddle.jacobian.eigenvector(l_stable);
    const double eps = opts.sep_offset_rel * X.chart.span();

    std::array<Separatrix, 4> out;
    const Vec2 p = saddle.position;
    const std::array<std::pair<Vec2, bool>, 4> launches{{
        {p + eps * vu, false},
        {p - eps * vu, false},
        {p + eps * vs, true},
        {p - eps * vs, true},
    }};
    for (int i = 0; i < 4; ++i) {
        out[i].slot = i;
        out[i].stable = launches[i].second;
        out[i].trajectory = integrate_trajectory(X, launches[i].first,
                                                 /*forward=*/!launches[i].second, opts,
                                                 singulars);
    }
    return out;
}

MSVerdict morse_smale_check(const VectorField& X, const FlowOptions& opts) {
    MSVerdict v;
    v.singular_points = find_singular_points(X, opts);
    v.all_nondegenerate =
        std::none_of(v.singular_points.begin(), v.singular_points.end(),
                     [](const SingularPoint& s) {
                         return s.kind == SingularKind::Degenerate ||
                                s.kind == SingularKind::NonHyperbolic;
                     });

    for (std::size_t i = 0; i < v.singular_points.size(); ++i) {
        if (v.singular_points[i].kind != SingularKind::Saddle) continue;
        auto seps = separatrices(X, v.singular_points[i], opts, v.singular_points);
        for (auto& sep : seps) {
            const Trajectory& tr = sep.trajectory;
            if (tr.termination == Termination::ReachedSingular) {
                const int j = tr.singular_index;
                if (v.singular_points[j].kind == SingularKind::Saddle) {
                    // Stable separatrices run backward: the flow goes j -> i.
                    if (sep.stable)
                        v.saddle_connections.push_back({j, static_cast<int>(i)});
                    else
                        v.saddle_connections.push_back({static_cast<int>(i), j});
                }
            } else if (tr.termination == Termination::ClosedOrbit) {
                v.closed_orbit_found = true;
            } else if (tr.termination == Termination::StepLimit) {
                v.nonconvergent_trajectory = true;
            }
            v.separatrix_evidence.push_back({static_cast<int>(i), std::move(sep)});
        }
    }

    // Probe trajectories hunt closed orbits and recurrences away from the
    // separatrix skeleton.
    for (int i = 0; i < opts.probe_grid_n; ++i)
        for (int j = 0; j < opts.probe_grid_n; ++j) {
            const Vec2 seed{
                X.chart.u_min + (i + 0.5) / opts.probe_grid_n * X.chart.u_span(),
                X.chart.v_min + (j + 0.5) / opts.probe_grid_n * X.chart.v_span()};
            for (bool forward : {true, false}) {
                const Trajectory tr =
                    integrate_trajectory(X, seed, forward, opts, v.singular_points);
                if (tr.termination == Termination::ClosedOrbit)
                    v.closed_orbit_found = true;
                else if (tr.termination == Termination::StepLimit)
                    v.nonconvergent_trajectory = true;
            }
        }

    if (!X.chart.closed())
        v.status = MSStatus::NotClosedManifold;
    else if (v.all_nondegenerate && !v.closed_orbit_found &&
             v.saddle_connections.empty() && !v.nonconvergent_trajectory)
        v.status = MSStatus::MorseSmale;
    else
        v.status = MSStatus::NotMorseSmale;
    return v;
}

MorseSmaleGraph ms_graph_from_verdict(const MSVerdict& verdict, bool is_gradient) {
    MorseSmaleGraph g;
    for (const auto& s : verdict.singular_points) {
        MSNode n;
        n.kind = s.kind;
        n.position = s.position;
        if (is_gradient) {
            // Uphill gradient flow: minima are sources, maxima sinks.
            if (s.kind == SingularKind::Source) n.morse_index = 0;
            if (s.kind == SingularKind::Saddle) n.morse_index = 1;
            if (s.kind == SingularKind::Sink) n.morse_index = 2;
        }
        g.nodes.push_back(n);
    }
    for (const auto& ts : verdict.separatrix_evidence) {
        const Trajectory& tr = ts.sep.trajectory;
        if (tr.termination != Termination::ReachedSingular) continue;
        g.edges.push_back({ts.saddle, tr.singular_index, ts.sep.stable, ts.sep.slot});
    }
    return g;
}

MorseSmaleGraph ms_graph(const VectorField& X, const FlowOptions& opts, bool is_gradient,
                         bool force) {
    const MSVerdict verdict = morse_smale_check(X, opts);
    if (!verdict.is_morse_smale() && !force)
        throw NotMorseSmale(std::string("field is not Morse-Smale: ") +
                            to_string(verdict.status));
    return ms_graph_from_verdict(verdict, is_gradient);
}

namespace {

using EdgeKey = std::tuple<int, int, bool>;

std::vector<EdgeKey> edge_multiset(const MorseSmaleGraph& g,
                                   const std::vector<int>& node_map) {
    std::vector<EdgeKey> out;
    out.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.emplace_back(node_map[e.saddle], node_map[e.target], e.stable);
    std::sort(out.begin(), out.end());
    return out;
}

bool extend_mapping(const MorseSmaleGraph& g1, const MorseSmaleGraph& g2,
                    std::vector<int>& map, std::vector<bool>& used, std::size_t next,
                    const std::vector<EdgeKey>& g2_edges) {
    if (next == g1.nodes.size()) return edge_multiset(g1, map) == g2_edges;
    for (std::size_t j = 0; j < g2.nodes.size(); ++j) {
        if (used[j]) continue;
        if (g1.nodes[next].kind != g2.nodes[j].kind) continue;
        if (g1.nodes[next].morse_index != g2.nodes[j].morse_index) continue;
        map[next] = static_cast<int>(j);
        used[j] = true;
        if (extend_mapping(g1, g2, map, used, next + 1, g2_edges)) return true;
        used[j] = false;
    }
    return false;
}

}  // namespace

bool ms_graph_isomorphic(const MorseSmaleGraph& g1, const MorseSmaleGraph& g2) {
    if (g1.nodes.size() > 16 || g2.nodes.size() > 16)
        throw TooLarge("isomorphism search limited to 16 nodes");
    if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size())
        return false;
    std::vector<int> identity(g2.nodes.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
    const auto g2_edges = edge_multiset(g2, identity);
    std::vector<int> map(g1.nodes.size(), -1);
    std::vector<bool> used(g2.nodes.size(), false);
    return extend_mapping(g1, g2, map, used, 0, g2_edges);
}

}  // namespace topo
