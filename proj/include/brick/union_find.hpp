#pragma once

#include <numeric>
#include <vector>

namespace brick {

/// Disjoint-set forest with path compression and union by size.
class UnionFind {
  public:
    explicit UnionFind(int size) { reset(size); }

    void reset(int size) {
        parent_.resize(size);
        std::iota(parent_.begin(), parent_.end(), 0);
        size_.assign(size, 1);
    }

    int find(int u) {
        int r = u;
        while (r != parent_[r]) r = parent_[r];
        while (u != r) {
            int next = parent_[u];
            parent_[u] = r;
            u = next;
        }
        return r;
    }

    void unite(int u, int v) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return;
        if (size_[ru] < size_[rv]) std::swap(ru, rv);
        parent_[rv] = ru;
        size_[ru] += size_[rv];
    }

    bool connected(int u, int v) { return find(u) == find(v); }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace brick
