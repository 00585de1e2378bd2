#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace psk {

// Insert-only disjoint sets with union by size and path halving.
class UnionFind {
public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false when a and b were already in the same set.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }

    std::size_t size() const { return parent_.size(); }
    std::size_t components() const { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_ = 0;
};

}  // namespace psk
