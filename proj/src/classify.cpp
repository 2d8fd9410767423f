#include "topo/classify.hpp"

#include "topo/complex.hpp"

namespace topo {

SurfaceType::SurfaceType(SurfaceKind k, int p) : kind(k), parameter(p) {
    if (kind == SurfaceKind::Orientable && parameter < 0)
        throw InternalInvariantViolation("orientable genus must be >= 0");
    if (kind == SurfaceKind::NonOrientable && parameter < 1)
        throw InternalInvariantViolation("cross-cap count must be >= 1");
}

std::string SurfaceType::to_string() const {
    if (kind == SurfaceKind::Orientable)
        return "orientable genus=" + std::to_string(parameter);
    return "non-orientable crosscaps=" + std::to_string(parameter);
}

SurfaceType classify_surface(const GluingWord& w) {
    require_closed_surface(w);
    const int chi = euler_characteristic(word_to_complex(w));
    const bool orientable = orientability(w);
    if (chi > 2)
        throw InternalInvariantViolation("Euler characteristic > 2 for a closed surface");
    if (orientable) {
        if ((2 - chi) % 2 != 0)
            throw InternalInvariantViolation("odd 2-chi for an orientable surface");
        return SurfaceType(SurfaceKind::Orientable, (2 - chi) / 2);
    }
    return SurfaceType(SurfaceKind::NonOrientable, 2 - chi);
}

GluingWord canonical_word(const SurfaceType& t) {
    std::vector<EdgeLetter> ls;
    if (t.kind == SurfaceKind::Orientable) {
        if (t.parameter == 0) {
            ls.emplace_back("a", +1);
            ls.emplace_back("a", -1);
        } else {
            for (int i = 1; i <= t.parameter; ++i) {
                const std::string a = "a" + std::to_string(i);
                const std::string b = "b" + std::to_string(i);
                ls.emplace_back(a, +1);
                ls.emplace_back(b, +1);
                ls.emplace_back(a, -1);
                ls.emplace_back(b, -1);
            }
        }
    } else {
        for (int i = 1; i <= t.parameter; ++i) {
            const std::string c = "c" + std::to_string(i);
            ls.emplace_back(c, +1);
            ls.emplace_back(c, +1);
        }
    }
    return GluingWord(std::move(ls));
}

bool homeomorphic(const GluingWord& w1, const GluingWord& w2) {
    return classify_surface(w1) == classify_surface(w2);
}

}  // namespace topo
