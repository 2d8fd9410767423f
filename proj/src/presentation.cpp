#include "topo/presentation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace topo {

bool GroupPresentation::has_generator(const std::string& g) const {
    return std::find(generators.begin(), generators.end(), g) != generators.end();
}

std::string GroupPresentation::to_string() const {
    std::ostringstream os;
    os << "< ";
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) os << ", ";
        os << generators[i];
    }
    os << " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
        if (i) os << ", ";
        os << print_word(relators[i]);
    }
    os << " >";
    return os.str();
}

std::vector<EdgeLetter> free_reduce(std::vector<EdgeLetter> w) {
    std::vector<EdgeLetter> out;
    for (auto& l : w) {
        if (!out.empty() && out.back().label == l.label &&
            out.back().exponent == -l.exponent) {
            out.pop_back();
        } else {
            out.push_back(std::move(l));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using Mat = std::vector<std::vector<BigInt>>;

Mat identity(std::size_t n) {
    Mat I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

void row_op(Mat& M, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t j = 0; j < M[dst].size(); ++j) M[dst][j] -= q * M[src][j];
}

void col_op(Mat& M, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < M.size(); ++i) M[i][dst] -= q * M[i][src];
}

void swap_cols(Mat& M, std::size_t a, std::size_t b) {
    for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

SmithResult smith_normal_form(Mat A) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    SmithResult r{identity(m), std::move(A), identity(n)};
    Mat& D = r.D;
    Mat& U = r.U;
    Mat& V = r.V;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Pivot: entry of smallest absolute value in the remaining block.
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D[i][j] != 0 && (best == 0 || abs(D[i][j]) < best)) {
                    best = abs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(D[pi], D[t]);
        std::swap(U[pi], U[t]);
        swap_cols(D, pj, t);
        swap_cols(V, pj, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                BigInt q = D[i][t] / D[t][t];
                row_op(D, i, t, q);
                row_op(U, i, t, q);
                if (D[i][t] != 0) {  // remainder survives: smaller pivot found
                    std::swap(D[i], D[t]);
                    std::swap(U[i], U[t]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                BigInt q = D[t][j] / D[t][t];
                col_op(D, j, t, q);
                col_op(V, j, t, q);
                if (D[t][j] != 0) {
                    swap_cols(D, j, t);
                    swap_cols(V, j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Force the pivot to divide every remaining entry.
            for (std::size_t i = t + 1; i < m && clean; ++i)
                for (std::size_t j = t + 1; j < n && clean; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_op(D, t, i, BigInt(-1));
                        row_op(U, t, i, BigInt(-1));
                        clean = false;
                    }
        }
        if (D[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
            for (std::size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Fundamental group of a 2-complex

GroupPresentation pi1_from_complex(const CellComplex& c, const std::string& basepoint) {
    if (!c.has_vertex(basepoint))
        throw std::invalid_argument("basepoint '" + basepoint + "' not in complex");
    if (!is_connected(c)) throw NotConnected("1-skeleton is not connected");

    // Adjacency with edges sorted by id for deterministic BFS.
    std::vector<const Edge*> sorted_edges;
    for (const auto& e : c.edges) sorted_edges.push_back(&e);
    std::sort(sorted_edges.begin(), sorted_edges.end(),
              [](const Edge* a, const Edge* b) { return a->id < b->id; });

    std::set<std::string> visited{basepoint};
    std::set<std::string> tree_edges;
    std::queue<std::string> frontier;
    frontier.push(basepoint);
    while (!frontier.empty()) {
        const std::string v = frontier.front();
        frontier.pop();
        for (const Edge* e : sorted_edges) {
            if (tree_edges.count(e->id)) continue;
            std::string other;
            if (e->from == v)
                other = e->to;
            else if (e->to == v)
                other = e->from;
            else
                continue;
            if (visited.count(other)) continue;
            visited.insert(other);
            tree_edges.insert(e->id);
            frontier.push(other);
        }
    }

    GroupPresentation p;
    for (const auto& e : c.edges)
        if (!tree_edges.count(e.id)) p.generators.push_back(e.id);

    for (const auto& f : c.faces) {
        std::vector<EdgeLetter> rel;
        for (const auto& l : f.boundary)
            if (!tree_edges.count(l.label)) rel.push_back(l);
        rel = free_reduce(std::move(rel));
        if (!rel.empty()) p.relators.push_back(std::move(rel));
    }
    return p;
}

GroupPresentation amalgamated_product(const GroupPresentation& pU,
                                      const GroupPresentation& pV,
                                      const std::vector<std::string>& pW_generators,
                                      const std::vector<std::vector<EdgeLetter>>& i_images,
                                      const std::vector<std::vector<EdgeLetter>>& j_images) {
    if (i_images.size() != pW_generators.size() || j_images.size() != pW_generators.size())
        throw std::invalid_argument("one image word required per W-generator");
    for (const auto& w : i_images)
        for (const auto& l : w)
            if (!pU.has_generator(l.label))
                throw std::invalid_argument("i-image references unknown generator '" +
                                            l.label + "'");
    for (const auto& w : j_images)
        for (const auto& l : w)
            if (!pV.has_generator(l.label))
                throw std::invalid_argument("j-image references unknown generator '" +
                                            l.label + "'");

    // Rename pV generators that clash with pU.
    std::map<std::string, std::string> rename;
    std::set<std::string> taken(pU.generators.begin(), pU.generators.end());
    for (const auto& g : pV.generators) {
        std::string name = g;
        for (int suffix = 2; taken.count(name); ++suffix)
            name = g + std::to_string(suffix);
        rename[g] = name;
        taken.insert(name);
    }
    const auto renamed = [&](const std::vector<EdgeLetter>& w) {
        std::vector<EdgeLetter> out;
        out.reserve(w.size());
        for (const auto& l : w) out.emplace_back(rename.at(l.label), l.exponent);
        return out;
    };

    GroupPresentation p;
    p.generators = pU.generators;
    for (const auto& g : pV.generators) p.generators.push_back(rename.at(g));
    p.relators = pU.relators;
    for (const auto& r : pV.relators) p.relators.push_back(renamed(r));
    for (std::size_t k = 0; k < pW_generators.size(); ++k) {
        std::vector<EdgeLetter> rel = i_images[k];
        const auto j_img = renamed(j_images[k]);
        for (auto it = j_img.rbegin(); it != j_img.rend(); ++it)
            rel.push_back(it->inverse());
        rel = free_reduce(std::move(rel));
        if (!rel.empty()) p.relators.push_back(std::move(rel));
    }
    return p;
}

AbelianInvariants abelianization(const GroupPresentation& p) {
    for (const auto& r : p.relators)
        for (const auto& l : r)
            if (!p.has_generator(l.label))
                throw std::invalid_argument("relator references unknown generator '" +
                                            l.label + "'");
    std::map<std::string, std::size_t> gi;
    for (std::size_t i = 0; i < p.generators.size(); ++i) gi[p.generators[i]] = i;

    Mat A(p.relators.size(), std::vector<BigInt>(p.generators.size(), 0));
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        for (const auto& l : p.relators[r]) A[r][gi[l.label]] += l.exponent;

    AbelianInvariants inv;
    if (p.relators.empty()) {
        inv.free_rank = static_cast<int>(p.generators.size());
        return inv;
    }
    const SmithResult snf = smith_normal_form(A);
    int rank = 0;
    for (std::size_t t = 0; t < std::min(snf.D.size(), snf.D[0].size()); ++t) {
        if (snf.D[t][t] == 0) break;
        ++rank;
        if (snf.D[t][t] > 1) inv.torsion.push_back(snf.D[t][t]);
    }
    inv.free_rank = static_cast<int>(p.generators.size()) - rank;
    return inv;
}

int graph_free_rank(const CellComplex& c) {
    if (!c.faces.empty()) throw HasFaces("complex has 2-cells");
    if (!is_connected(c)) throw NotConnected("1-skeleton is not connected");
    return static_cast<int>(c.edges.size()) - static_cast<int>(c.vertices.size()) + 1;
}

}  // namespace topo
