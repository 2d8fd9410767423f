#pragma once

#include <stdexcept>
#include <vector>

#include "topo/chart.hpp"
#include "topo/scan.hpp"

namespace topo {

struct DegeneratePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMorse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CriticalPoint {
    Vec2 position{0, 0};
    double gradient_norm = 0;
    Mat2 hessian;
    std::array<double, 2> eigenvalues{0, 0};  // ascending
    bool degenerate = false;
    int index = -1;  // negative-eigenvalue count; -1 when degenerate
};

struct MorseReport {
    bool is_morse = false;
    std::vector<CriticalPoint> points;

    std::vector<const CriticalPoint*> degenerate_points() const;
    // Sorted distinct critical values of non-degenerate points (needs f).
};

Vec2 gradient(const ScalarField& f, Vec2 p, const SolverOptions& opts = {});
Mat2 hessian(const ScalarField& f, Vec2 p, const SolverOptions& opts = {});

// Newton on grad f = 0 from grid seeds; converged roots are classified via
// the finite-difference Hessian.
std::vector<CriticalPoint> find_critical_points(const ScalarField& f,
                                                const SolverOptions& opts = {});

// Throws DegeneratePoint when the smallest |eigenvalue| is below tolerance.
int morse_index(const CriticalPoint& cp);

MorseReport is_morse(const ScalarField& f, const SolverOptions& opts = {});

// Connected components of the level set f = y via marching squares on a
// resolution x resolution cell grid (periodic axes stitched).
int level_component_count(const ScalarField& f, double y, int resolution);

// True iff a Morse function on a closed manifold has exactly two critical
// points. Throws NotMorse on degenerate reports.
bool reeb_sphere_check(const MorseReport& report);

// Alternating index sum, equal to the Euler characteristic on closed models.
int euler_from_indices(const MorseReport& report);

// Round-sphere model: height cos(v) on a polar-cap-truncated chart plus the
// two pole points carried analytically.
ScalarField sphere_height_field();
MorseReport sphere_height_report(const SolverOptions& opts = {});

}  // namespace topo
