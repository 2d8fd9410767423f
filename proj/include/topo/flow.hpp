#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "topo/chart.hpp"
#include "topo/scan.hpp"

namespace topo {

struct NotASaddle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMorseSmale : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SingularKind { Source, Sink, Saddle, NonHyperbolic, Degenerate };
const char* to_string(SingularKind k);

struct SingularPoint {
    Vec2 position{0, 0};
    Mat2 jacobian;
    std::array<std::complex<double>, 2> eigenvalues;
    SingularKind kind = SingularKind::Degenerate;
};

enum class Termination { ReachedSingular, LeftChart, StepLimit, ClosedOrbit };
const char* to_string(Termination t);

struct Trajectory {
    std::vector<std::array<double, 3>> samples;  // (t, u, v), time-ordered
    Termination termination = Termination::StepLimit;
    int singular_index = -1;  // target when termination == ReachedSingular
};

struct FlowOptions : SolverOptions {
    double dt_rel = 1e-3;          // RK4 step / chart span
    long max_steps = 1'000'000;
    double tol_capture_rel = 1e-3; // capture-ball radius / span
    double sep_offset_rel = 1e-4;  // separatrix launch offset / span
    int sample_stride = 8;         // keep every k-th integration sample
    int probe_grid_n = 6;          // probe trajectories per axis for MS check
};

// grad f by central differences (flat chart metric). Trajectories flow
// uphill: minima are sources, maxima sinks.
VectorField gradient_field(const ScalarField& f, const SolverOptions& opts = {});

std::vector<SingularPoint> find_singular_points(const VectorField& X,
                                                const FlowOptions& opts = {});

// Fixed-step RK4. Terminates on entering the capture ball of a singular
// point, leaving a non-periodic chart, returning near the seed (closed
// orbit), or exhausting max_steps.
Trajectory integrate_trajectory(const VectorField& X, Vec2 seed, bool forward,
                                const FlowOptions& opts,
                                const std::vector<SingularPoint>& singulars);

struct Separatrix {
    int slot;     // 0, 1: unstable pair; 2, 3: stable pair
    bool stable;  // integrated backward when true
    Trajectory trajectory;
};

std::array<Separatrix, 4> separatrices(const VectorField& X, const SingularPoint& saddle,
                                       const FlowOptions& opts,
                                       const std::vector<SingularPoint>& singulars);

enum class MSStatus { MorseSmale, NotMorseSmale, NotClosedManifold };
const char* to_string(MSStatus s);

struct SaddleConnection {
    int from_saddle;  // singular-point indices
    int to_saddle;
};

struct TracedSeparatrix {
    int saddle;  // singular-point index
    Separatrix sep;
};

struct MSVerdict {
    MSStatus status = MSStatus::NotMorseSmale;
    bool all_nondegenerate = false;
    bool closed_orbit_found = false;
    bool nonconvergent_trajectory = false;
    std::vector<SaddleConnection> saddle_connections;
    std::vector<SingularPoint> singular_points;
    std::vector<TracedSeparatrix> separatrix_evidence;

    bool is_morse_smale() const { return status == MSStatus::MorseSmale; }
};

MSVerdict morse_smale_check(const VectorField& X, const FlowOptions& opts = {});

struct MSNode {
    SingularKind kind;
    Vec2 position{0, 0};
    int morse_index = -1;  // set for gradient fields
};

struct MSEdge {
    int saddle;   // node indices
    int target;
    bool stable;
    int slot;
};

// Labeled separatrix graph of a Morse-Smale field.
struct MorseSmaleGraph {
    std::vector<MSNode> nodes;
    std::vector<MSEdge> edges;
};

// Throws NotMorseSmale unless the check passes (or force is set). For
// gradient fields, pass is_gradient to label nodes with Morse indices.
MorseSmaleGraph ms_graph(const VectorField& X, const FlowOptions& opts = {},
                         bool is_gradient = false, bool force = false);

MorseSmaleGraph ms_graph_from_verdict(const MSVerdict& verdict, bool is_gradient);

// Kind- and role-preserving node bijection search; graphs over 16 nodes are
// rejected with TooLarge.
bool ms_graph_isomorphic(const MorseSmaleGraph& g1, const MorseSmaleGraph& g2);

}  // namespace topo
