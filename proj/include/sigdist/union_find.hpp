#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace sigdist {

class UnionFind {
public:
    using index = std::uint32_t;

    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), index{0});
    }

    index find(index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false when a and b were already joined.
    bool merge(index a, index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<index> parent_;
    std::vector<std::uint8_t> rank_;
};

} // namespace sigdist
