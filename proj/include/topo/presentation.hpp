#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topo/complex.hpp"
#include "topo/word.hpp"

namespace topo {

using BigInt = boost::multiprecision::cpp_int;

struct NotConnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HasFaces : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite group presentation < generators | relators >.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<EdgeLetter>> relators;

    bool has_generator(const std::string& g) const;
    std::string to_string() const;
};

// Canonical form of a finitely generated abelian group:
// Z^free_rank + Z/d1 + ... with d1 | d2 | ..., each di >= 2.
struct AbelianInvariants {
    int free_rank = 0;
    std::vector<BigInt> torsion;

    bool operator==(const AbelianInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

// Result of Smith normal form: U * A * V = D with U, V unimodular.
struct SmithResult {
    std::vector<std::vector<BigInt>> U, D, V;
};

// Smith normal form over the integers, exact arithmetic. The diagonal of D
// satisfies the divisibility chain d1 | d2 | ...
SmithResult smith_normal_form(std::vector<std::vector<BigInt>> A);

// Presentation of pi1 via a BFS spanning tree from the basepoint: generators
// are the non-tree edges, one relator per 2-cell with tree edges deleted.
GroupPresentation pi1_from_complex(const CellComplex& c, const std::string& basepoint);

// Seifert-van Kampen: generators of pU and pV (pV renamed on clash), their
// relators, plus one gluing relator i(a_k) * j(a_k)^-1 per W-generator.
GroupPresentation amalgamated_product(const GroupPresentation& pU,
                                      const GroupPresentation& pV,
                                      const std::vector<std::string>& pW_generators,
                                      const std::vector<std::vector<EdgeLetter>>& i_images,
                                      const std::vector<std::vector<EdgeLetter>>& j_images);

// Abelianized invariants from the Smith form of the relator exponent-sum
// matrix (rows = relators, columns = generators).
AbelianInvariants abelianization(const GroupPresentation& p);

// First Betti number E - V + 1 of a connected 1-complex.
int graph_free_rank(const CellComplex& c);

// Cancels adjacent x x^-1 pairs.
std::vector<EdgeLetter> free_reduce(std::vector<EdgeLetter> w);

}  // namespace topo
