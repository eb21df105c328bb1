#pragma once

#include <utility>
#include <vector>

#include "tcm/vset.hpp"

namespace tcm {

// Simple undirected graph on vertices 1..n, adjacency stored as bitmasks.
// Used for 1-skeletons: degree sequences, independent sets and the
// component counts behind the sigma_0 fast path and the T_k filters.
struct Graph {
    int n = 0;
    std::vector<Vset> adj;  // adj[v-1] = neighbours of v

    explicit Graph(int n_ = 0) : n(n_), adj(static_cast<size_t>(n_), 0) {}

    void add_edge(int a, int b) {
        adj[a - 1] |= vbit(b);
        adj[b - 1] |= vbit(a);
    }
    bool has_edge(int a, int b) const { return vin(adj[a - 1], b); }
    int degree(int v) const { return vcount(adj[v - 1]); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (has_edge(a, b)) out.emplace_back(a, b);
        return out;
    }

    long long edge_count() const {
        long long s = 0;
        for (int v = 1; v <= n; ++v) s += degree(v);
        return s / 2;
    }

    // Number of connected components of the subgraph induced by W.
    // Isolated vertices of W count as components.
    int components_within(Vset W) const {
        int comps = 0;
        Vset seen = 0;
        Vset rest = W;
        while (rest) {
            int start = vfirst(rest);
            ++comps;
            Vset frontier = vbit(start);
            Vset comp = 0;
            while (frontier) {
                comp |= frontier;
                Vset next = 0;
                Vset f = frontier;
                while (f) {
                    int v = vfirst(f);
                    f &= f - 1;
                    next |= adj[v - 1] & W;
                }
                frontier = next & ~comp;
            }
            seen |= comp;
            rest = W & ~seen;
        }
        return comps;
    }

    bool is_connected() const {
        if (n == 0) return false;
        return components_within(full_vset(n)) == 1;
    }

    // True iff some s vertices are pairwise non-adjacent.
    bool has_independent_set(int s) const {
        if (s <= 0) return true;
        std::vector<int> chosen;
        return independent_rec(1, s, 0);
    }

    // True iff some 6 vertices induce a subgraph with >= c components.
    bool has_6subset_with_components_at_least(int c) const;

    // True iff some 6 vertices induce a subgraph with exactly c components.
    bool has_6subset_with_components(int c) const;

  private:
    bool independent_rec(int next, int need, Vset forbidden) const {
        if (need == 0) return true;
        for (int v = next; v <= n - need + 1; ++v) {
            if (vin(forbidden, v)) continue;
            if (independent_rec(v + 1, need - 1, forbidden | vbit(v) | adj[v - 1]))
                return true;
        }
        return false;
    }
};

inline bool Graph::has_6subset_with_components(int c) const {
    if (n < 6) return false;
    std::vector<int> idx(6);
    // iterate all 6-subsets
    for (idx[0] = 1; idx[0] <= n - 5; ++idx[0])
        for (idx[1] = idx[0] + 1; idx[1] <= n - 4; ++idx[1])
            for (idx[2] = idx[1] + 1; idx[2] <= n - 3; ++idx[2])
                for (idx[3] = idx[2] + 1; idx[3] <= n - 2; ++idx[3])
                    for (idx[4] = idx[3] + 1; idx[4] <= n - 1; ++idx[4])
                        for (idx[5] = idx[4] + 1; idx[5] <= n; ++idx[5]) {
                            Vset W = 0;
                            for (int i = 0; i < 6; ++i) W |= vbit(idx[i]);
                            if (components_within(W) == c) return true;
                        }
    return false;
}

inline bool Graph::has_6subset_with_components_at_least(int c) const {
    if (n < 6) return false;
    for (int k = c; k <= 6; ++k)
        if (has_6subset_with_components(k)) return true;
    return false;
}

}  // namespace tcm
