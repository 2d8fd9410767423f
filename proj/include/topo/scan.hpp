#pragma once

#include <functional>
#include <vector>

#include "topo/chart.hpp"

namespace topo {

// Root-finder and field tolerances shared by the scalar- and vector-field
// pipelines. Relative quantities scale with the chart span or field scale.
struct SolverOptions {
    int grid_n = 64;                  // seeds per axis
    double grad_step_rel = 1e-5;      // first-derivative step / axis span
    double hess_step_rel = 1e-4;      // second-derivative step / axis span
    double tol_grad_rel = 1e-8;       // residual tolerance / field scale
    double tol_merge_rel = 1e-5;      // dedup distance / span
    double tol_degenerate_rel = 1e-6; // eigenvalue floor / max |eigenvalue|
    int max_newton_iters = 40;
    bool parallel = true;             // OpenMP over grid seeds
};

struct RootCandidate {
    bool converged = false;
    Vec2 position{0, 0};
    double residual = 0;
};

// Damped Newton for F = 0. Step is halved until |F| decreases; seeds that
// leave a non-periodic chart or fail to converge report converged = false.
RootCandidate damped_newton(const std::function<Vec2(Vec2)>& F,
                            const std::function<Mat2(Vec2)>& J, Vec2 seed,
                            const SurfaceChart& chart, double tol_residual,
                            int max_iters);

// Runs damped Newton from an n x n grid of seeds and deduplicates the
// converged roots with wrap-aware distance. Serial and OpenMP versions
// produce identical output (results are reduced in seed order).
std::vector<Vec2> grid_scan_roots_serial(const std::function<Vec2(Vec2)>& F,
                                         const std::function<Mat2(Vec2)>& J,
                                         const SurfaceChart& chart, int grid_n,
                                         double tol_residual, double tol_merge,
                                         int max_iters);
std::vector<Vec2> grid_scan_roots_parallel(const std::function<Vec2(Vec2)>& F,
                                           const std::function<Mat2(Vec2)>& J,
                                           const SurfaceChart& chart, int grid_n,
                                           double tol_residual, double tol_merge,
                                           int max_iters);
std::vector<Vec2> grid_scan_roots(const std::function<Vec2(Vec2)>& F,
                                  const std::function<Mat2(Vec2)>& J,
                                  const SurfaceChart& chart, int grid_n,
                                  double tol_residual, double tol_merge,
                                  int max_iters, bool parallel);

// Max |f| over a sample grid, clamped to >= 1, used to scale tolerances.
double field_scale(const std::function<double(double, double)>& f,
                   const SurfaceChart& chart, int samples = 32);

}  // namespace topo
