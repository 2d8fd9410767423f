#include "topo/morse.hpp"

#include <algorithm>
#include <cmath>

#include "topo/classify.hpp"  // InternalInvariantViolation
#include "topo/disjoint_sets.hpp"

namespace topo {

std::vector<const CriticalPoint*> MorseReport::degenerate_points() const {
    std::vector<const CriticalPoint*> out;
    for (const auto& p : points)
        if (p.degenerate) out.push_back(&p);
    return out;
}

Vec2 gradient(const ScalarField& f, Vec2 p, const SolverOptions& opts) {
    const double hu = opts.grad_step_rel * f.chart.u_span();
    const double hv = opts.grad_step_rel * f.chart.v_span();
    return {(f.eval(p[0] + hu, p[1]) - f.eval(p[0] - hu, p[1])) / (2 * hu),
            (f.eval(p[0], p[1] + hv) - f.eval(p[0], p[1] - hv)) / (2 * hv)};
}

Mat2 hessian(const ScalarField& f, Vec2 p, const SolverOptions& opts) {
    const double hu = opts.hess_step_rel * f.chart.u_span();
    const double hv = opts.hess_step_rel * f.chart.v_span();
    const double f0 = f.eval(p[0], p[1]);
    Mat2 H;
    H.a = (f.eval(p[0] + hu, p[1]) - 2 * f0 + f.eval(p[0] - hu, p[1])) / (hu * hu);
    H.d = (f.eval(p[0], p[1] + hv) - 2 * f0 + f.eval(p[0], p[1] - hv)) / (hv * hv);
    const double mixed = (f.eval(p[0] + hu, p[1] + hv) - f.eval(p[0] + hu, p[1] - hv) -
                          f.eval(p[0] - hu, p[1] + hv) + f.eval(p[0] - hu, p[1] - hv)) /
                         (4 * hu * hv);
    H.b = H.c = mixed;
    return H.symmetrized();
}

namespace {

CriticalPoint classify_point(const ScalarField& f, Vec2 p, const SolverOptions& opts) {
    CriticalPoint cp;
    cp.position = p;
    cp.gradient_norm = norm(gradient(f, p, opts));
    cp.hessian = hessian(f, p, opts);
    cp.eigenvalues = cp.hessian.sym_eigenvalues();
    const double emax = std::max(std::abs(cp.eigenvalues[0]), std::abs(cp.eigenvalues[1]));
    const double emin = std::min(std::abs(cp.eigenvalues[0]), std::abs(cp.eigenvalues[1]));
    if (emax == 0.0 || emin <= opts.tol_degenerate_rel * emax) {
        cp.degenerate = true;
    } else {
        cp.index = (cp.eigenvalues[0] < 0 ? 1 : 0) + (cp.eigenvalues[1] < 0 ? 1 : 0);
    }
    return cp;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ScalarField& f,
                                                const SolverOptions& opts) {
    const double scale = field_scale(f.eval, f.chart);
    const double tol_grad = opts.tol_grad_rel * scale;
    const double tol_merge = opts.tol_merge_rel * f.chart.span();
    const auto F = [&](Vec2 p) { return gradient(f, p, opts); };
    const auto J = [&](Vec2 p) { return hessian(f, p, opts); };
    const auto roots = grid_scan_roots(F, J, f.chart, opts.grid_n, tol_grad, tol_merge,
                                       opts.max_newton_iters, opts.parallel);
    std::vector<CriticalPoint> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(classify_point(f, r, opts));
    return out;
}

int morse_index(const CriticalPoint& cp) {
    if (cp.degenerate) throw DegeneratePoint("critical point is degenerate");
    return cp.index;
}

MorseReport is_morse(const ScalarField& f, const SolverOptions& opts) {
    MorseReport r;
    r.points = find_critical_points(f, opts);
    r.is_morse = std::none_of(r.points.begin(), r.points.end(),
                              [](const CriticalPoint& p) { return p.degenerate; });
    return r;
}

bool reeb_sphere_check(const MorseReport& report) {
    if (!report.is_morse) throw NotMorse("report contains degenerate points");
    if (report.points.size() != 2) return false;
    int lo = std::min(report.points[0].index, report.points[1].index);
    int hi = std::max(report.points[0].index, report.points[1].index);
    if (lo != 0 || hi != 2)
        throw InternalInvariantViolation(
            "two critical points must be one minimum and one maximum");
    return true;
}

int euler_from_indices(const MorseReport& report) {
    if (!report.is_morse) throw NotMorse("report contains degenerate points");
    int chi = 0;
    for (const auto& p : report.points) chi += (p.index % 2 == 0) ? 1 : -1;
    return chi;
}

// ---------------------------------------------------------------------------
// Level-set component count by marching squares

int level_component_count(const ScalarField& f, double y, int resolution) {
    if (resolution < 16) throw std::invalid_argument("resolution must be >= 16");
    const int R = resolution;
    const SurfaceChart& ch = f.chart;
    const int nu = ch.periodic_u ? R : R + 1;  // value-grid nodes per axis
    const int nv = ch.periodic_v ? R : R + 1;

    std::vector<double> val(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            val[static_cast<std::size_t>(i) * nv + j] =
                f.eval(ch.u_min + i * ch.u_span() / R, ch.v_min + j * ch.v_span() / R) - y;

    const auto sgn = [&](int i, int j) {
        i = ch.periodic_u ? i % R : i;
        j = ch.periodic_v ? j % R : j;
        return val[static_cast<std::size_t>(i) * nv + j] >= 0.0;
    };

    // Contour nodes: crossed grid edges. H(i,j) joins (i,j)-(i+1,j) for
    // i < R; V(i,j) joins (i,j)-(i,j+1) for j < R.
    const std::size_t h_count = static_cast<std::size_t>(R) * nv;
    const std::size_t total = h_count + static_cast<std::size_t>(nu) * R;
    const auto h_id = [&](int i, int j) {
        j = ch.periodic_v ? j % R : j;
        i = ch.periodic_u ? i % R : i;
        return static_cast<std::size_t>(j) * R + i;
    };
    const auto v_id = [&](int i, int j) {
        i = ch.periodic_u ? i % R : i;
        j = ch.periodic_v ? j % R : j;
        return h_count + static_cast<std::size_t>(i) * R + j;
    };

    DisjointSets ds(total);
    std::vector<bool> crossed(total, false);
    const auto mark = [&](std::size_t id) { crossed[id] = true; };

    const int cu = R, cv = R;  // cells per axis (last cell wraps when periodic)
    for (int i = 0; i < cu; ++i) {
        if (!ch.periodic_u && i + 1 > R) break;
        for (int j = 0; j < cv; ++j) {
            const bool s00 = sgn(i, j), s10 = sgn(i + 1, j);
            const bool s01 = sgn(i, j + 1), s11 = sgn(i + 1, j + 1);
            std::vector<std::size_t> cell_edges;
            if (s00 != s10) {
                mark(h_id(i, j));
                cell_edges.push_back(h_id(i, j));
            }
            if (s01 != s11) {
                mark(h_id(i, j + 1));
                cell_edges.push_back(h_id(i, j + 1));
            }
            if (s00 != s01) {
                mark(v_id(i, j));
                cell_edges.push_back(v_id(i, j));
            }
            if (s10 != s11) {
                mark(v_id(i + 1, j));
                cell_edges.push_back(v_id(i + 1, j));
            }
            if (cell_edges.size() == 2) {
                ds.unite(cell_edges[0], cell_edges[1]);
            } else if (cell_edges.size() == 4) {
                // Ambiguous saddle cell: disambiguate by the center sample.
                const double uc = ch.u_min + (i + 0.5) * ch.u_span() / R;
                const double vc = ch.v_min + (j + 0.5) * ch.v_span() / R;
                const bool center = f.eval(uc, vc) - y >= 0.0;
                if (center == s00) {
                    // The s10/s01 corners are isolated.
                    ds.unite(h_id(i, j), v_id(i + 1, j));      // around (i+1, j)
                    ds.unite(h_id(i, j + 1), v_id(i, j));      // around (i, j+1)
                } else {
                    ds.unite(h_id(i, j), v_id(i, j));          // around (i, j)
                    ds.unite(h_id(i, j + 1), v_id(i + 1, j));  // around (i+1, j+1)
                }
            }
        }
    }

    int components = 0;
    for (std::size_t id = 0; id < total; ++id)
        if (crossed[id] && ds.find(id) == id) ++components;
    return components;
}

// ---------------------------------------------------------------------------
// Built-in sphere model

ScalarField sphere_height_field() {
    const double eps = 0.3;
    SurfaceChart chart(0.0, 2 * M_PI, eps, M_PI - eps, /*per_u=*/true, /*per_v=*/false);
    return ScalarField{[](double, double v) { return std::cos(v); }, chart};
}

MorseReport sphere_height_report(const SolverOptions& opts) {
    const ScalarField f = sphere_height_field();
    MorseReport r = is_morse(f, opts);

    // Polar caps are not covered by the chart; the height function there is
    // 1 - r^2/2 (north) and -1 + r^2/2 (south) in normal coordinates.
    CriticalPoint north;
    north.position = {0.0, 0.0};
    north.hessian = {-1, 0, 0, -1};
    north.eigenvalues = {-1, -1};
    north.index = 2;
    CriticalPoint south;
    south.position = {0.0, M_PI};
    south.hessian = {1, 0, 0, 1};
    south.eigenvalues = {1, 1};
    south.index = 0;
    r.points.push_back(north);
    r.points.push_back(south);
    return r;
}

}  // namespace topo
