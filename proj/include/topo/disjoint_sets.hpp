#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace topo {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

    std::size_t count_roots() {
        std::size_t c = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (find(i) == i) ++c;
        return c;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

}  // namespace topo
