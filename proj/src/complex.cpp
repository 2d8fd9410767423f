#include "topo/complex.hpp"

#include <algorithm>
#include <map>

#include "topo/disjoint_sets.hpp"

namespace topo {

bool CellComplex::has_vertex(const std::string& id) const {
    return std::find(vertices.begin(), vertices.end(), id) != vertices.end();
}

const Edge* CellComplex::find_edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

CellComplex word_to_complex(const GluingWord& w) {
    require_closed_surface(w);
    const std::size_t n = w.size();

    // Distinct labels in order of first appearance.
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> label_index;
    for (const auto& l : w.letters) {
        if (!label_index.count(l.label)) {
            label_index[l.label] = labels.size();
            labels.push_back(l.label);
        }
    }

    // Nodes: corner i (start of side i) for i < n, then tail/head per label.
    const auto tail_node = [&](std::size_t k) { return n + 2 * k; };
    const auto head_node = [&](std::size_t k) { return n + 2 * k + 1; };
    DisjointSets ds(n + 2 * labels.size());

    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = w.letters[i];
        const std::size_t k = label_index[l.label];
        const std::size_t start = i;
        const std::size_t end = (i + 1) % n;
        if (l.exponent > 0) {
            ds.unite(start, tail_node(k));
            ds.unite(end, head_node(k));
        } else {
            ds.unite(start, head_node(k));
            ds.unite(end, tail_node(k));
        }
    }

    // Vertex names by first appearance among edge endpoints.
    std::map<std::size_t, std::string> root_name;
    CellComplex c;
    const auto vertex_of = [&](std::size_t node) {
        const std::size_t r = ds.find(node);
        auto it = root_name.find(r);
        if (it == root_name.end()) {
            std::string name = "v" + std::to_string(root_name.size());
            it = root_name.emplace(r, name).first;
            c.vertices.push_back(name);
        }
        return it->second;
    };

    for (std::size_t k = 0; k < labels.size(); ++k) {
        Edge e;
        e.id = labels[k];
        e.from = vertex_of(tail_node(k));
        e.to = vertex_of(head_node(k));
        c.edges.push_back(std::move(e));
    }

    Face f;
    f.id = "f0";
    f.boundary = w.letters;
    c.faces.push_back(std::move(f));
    return c;
}

int euler_characteristic(const CellComplex& c) {
    return static_cast<int>(c.vertices.size()) - static_cast<int>(c.edges.size()) +
           static_cast<int>(c.faces.size());
}

bool orientability(const GluingWord& w) {
    std::map<std::string, int> exponent_sum;
    for (const auto& l : w.letters) exponent_sum[l.label] += l.exponent;
    for (const auto& [label, s] : exponent_sum)
        if (s != 0) return false;
    return true;
}

bool is_connected(const CellComplex& c) {
    if (c.vertices.empty()) return true;
    std::map<std::string, std::size_t> vid;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) vid[c.vertices[i]] = i;
    DisjointSets ds(c.vertices.size());
    for (const auto& e : c.edges) {
        auto a = vid.find(e.from);
        auto b = vid.find(e.to);
        if (a != vid.end() && b != vid.end()) ds.unite(a->second, b->second);
    }
    return ds.count_roots() == 1;
}

ValidationReport validate_complex(const CellComplex& c) {
    ValidationReport r;
    for (const auto& e : c.edges) {
        if (!c.has_vertex(e.from))
            r.violations.push_back("edge '" + e.id + "' references missing vertex '" +
                                   e.from + "'");
        if (!c.has_vertex(e.to))
            r.violations.push_back("edge '" + e.id + "' references missing vertex '" +
                                   e.to + "'");
    }
    for (const auto& f : c.faces) {
        for (const auto& l : f.boundary) {
            if (!c.find_edge(l.label))
                r.violations.push_back("face '" + f.id + "' references missing edge '" +
                                       l.label + "'");
        }
    }
    if (!is_connected(c)) r.warnings.push_back("1-skeleton is not connected");
    return r;
}

}  // namespace topo
