#pragma once

#include <string>
#include <vector>

#include "topo/word.hpp"

namespace topo {

struct Edge {
    std::string id;
    std::string from;  // vertex id
    std::string to;    // vertex id
};

struct Face {
    std::string id;
    std::vector<EdgeLetter> boundary;  // loop of edge ids with orientation
};

// Finite 2-dimensional cell complex. Closure-finiteness is the only
// combinatorial condition; the weak-topology condition is vacuous for
// finite complexes and is not checked.
struct CellComplex {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    bool has_vertex(const std::string& id) const;
    const Edge* find_edge(const std::string& id) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

// Builds the one-face complex of a closed-surface gluing word. Vertices are
// the orbits of the polygon corners under the side identifications,
// computed with a union-find over the 2n corners.
CellComplex word_to_complex(const GluingWord& w);

int euler_characteristic(const CellComplex& c);

// True iff every label occurs once with each exponent sign (each gluing
// reverses boundary orientation).
bool orientability(const GluingWord& w);

ValidationReport validate_complex(const CellComplex& c);

// Connectivity of the 1-skeleton (isolated vertices count as components).
bool is_connected(const CellComplex& c);

}  // namespace topo
