#pragma once

#include <stdexcept>
#include <string>

#include "topo/word.hpp"

namespace topo {

struct InternalInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class SurfaceKind { Orientable, NonOrientable };

// Homeomorphism type of a closed surface: genus for orientable,
// cross-cap count (>= 1) for non-orientable.
struct SurfaceType {
    SurfaceKind kind;
    int parameter;

    SurfaceType(SurfaceKind k, int p);

    int euler_characteristic() const {
        return kind == SurfaceKind::Orientable ? 2 - 2 * parameter : 2 - parameter;
    }

    bool operator==(const SurfaceType& o) const {
        return kind == o.kind && parameter == o.parameter;
    }
    std::string to_string() const;
};

// Decides the type from the complete invariant pair (orientability, chi).
SurfaceType classify_surface(const GluingWord& w);

// Standard word: commutator product for genus g, square product for n
// cross-caps, a a^-1 for the sphere.
GluingWord canonical_word(const SurfaceType& t);

bool homeomorphic(const GluingWord& w1, const GluingWord& w2);

}  // namespace topo
