#include "topo/scan.hpp"

#include <algorithm>
#include <cmath>

namespace topo {

RootCandidate damped_newton(const std::function<Vec2(Vec2)>& F,
                            const std::function<Mat2(Vec2)>& J, Vec2 seed,
                            const SurfaceChart& chart, double tol_residual,
                            int max_iters) {
    RootCandidate out;
    Vec2 p = chart.normalize(seed);
    if (!chart.contains(p)) return out;
    double res = norm(F(p));
    // Iterate while the residual improves; stopping at tol_residual would
    // leave shallow (near-degenerate) roots spread over a wide plateau.
    for (int it = 0; it < max_iters && res > 0.0; ++it) {
        Vec2 step;
        try {
            Vec2 f = F(p);
            step = J(p).solve({-f[0], -f[1]});
        } catch (const std::domain_error&) {
            return out;
        }
        double t = 1.0;
        Vec2 next = p;
        double next_res = res;
        bool improved = false;
        while (t > 1e-6) {
            Vec2 q = chart.normalize(p + t * step);
            if (chart.contains(q)) {
                const double r = norm(F(q));
                if (r < res) {
                    next = q;
                    next_res = r;
                    improved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!improved) break;
        p = next;
        res = next_res;
    }
    if (res <= tol_residual) {
        out.converged = true;
        out.position = p;
        out.residual = res;
    }
    return out;
}

namespace {

Vec2 seed_at(const SurfaceChart& chart, int grid_n, int i, int j) {
    return {chart.u_min + (i + 0.5) / grid_n * chart.u_span(),
            chart.v_min + (j + 0.5) / grid_n * chart.v_span()};
}

std::vector<Vec2> reduce_candidates(const std::vector<RootCandidate>& cands,
                                    const SurfaceChart& chart, double tol_merge) {
    std::vector<Vec2> roots;
    for (const auto& c : cands) {
        if (!c.converged) continue;
        bool dup = false;
        for (const auto& r : roots)
            if (chart.distance(r, c.position) < tol_merge) {
                dup = true;
                break;
            }
        if (!dup) roots.push_back(c.position);
    }
    std::sort(roots.begin(), roots.end(), [](Vec2 a, Vec2 b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    return roots;
}

}  // namespace

std::vector<Vec2> grid_scan_roots_serial(const std::function<Vec2(Vec2)>& F,
                                         const std::function<Mat2(Vec2)>& J,
                                         const SurfaceChart& chart, int grid_n,
                                         double tol_residual, double tol_merge,
                                         int max_iters) {
    std::vector<RootCandidate> cands(static_cast<std::size_t>(grid_n) * grid_n);
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            cands[static_cast<std::size_t>(i) * grid_n + j] =
                damped_newton(F, J, seed_at(chart, grid_n, i, j), chart, tol_residual,
                              max_iters);
    return reduce_candidates(cands, chart, tol_merge);
}

std::vector<Vec2> grid_scan_roots_parallel(const std::function<Vec2(Vec2)>& F,
                                           const std::function<Mat2(Vec2)>& J,
                                           const SurfaceChart& chart, int grid_n,
                                           double tol_residual, double tol_merge,
                                           int max_iters) {
    std::vector<RootCandidate> cands(static_cast<std::size_t>(grid_n) * grid_n);
#pragma omp parallel for collapse(2) schedule(dynamic, 8)
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            cands[static_cast<std::size_t>(i) * grid_n + j] =
                damped_newton(F, J, seed_at(chart, grid_n, i, j), chart, tol_residual,
                              max_iters);
    return reduce_candidates(cands, chart, tol_merge);
}

std::vector<Vec2> grid_scan_roots(const std::function<Vec2(Vec2)>& F,
                                  const std::function<Mat2(Vec2)>& J,
                                  const SurfaceChart& chart, int grid_n,
                                  double tol_residual, double tol_merge, int max_iters,
                                  bool parallel) {
    return parallel ? grid_scan_roots_parallel(F, J, chart, grid_n, tol_residual,
                                               tol_merge, max_iters)
                    : grid_scan_roots_serial(F, J, chart, grid_n, tol_residual,
                                             tol_merge, max_iters);
}

double field_scale(const std::function<double(double, double)>& f,
                   const SurfaceChart& chart, int samples) {
    double scale = 1.0;
    for (int i = 0; i <= samples; ++i)
        for (int j = 0; j <= samples; ++j) {
            const double u = chart.u_min + i * chart.u_span() / samples;
            const double v = chart.v_min + j * chart.v_span() / samples;
            scale = std::max(scale, std::abs(f(u, v)));
        }
    return scale;
}

}  // namespace topo
