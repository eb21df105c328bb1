#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tcm {

// A set of vertices, stored as a bitmask. Vertex label v (1-based) occupies
// bit v-1. Everything in this project stays well below 64 vertices.
using Vset = std::uint64_t;

inline Vset vbit(int v) { return Vset{1} << (v - 1); }
inline bool vin(Vset s, int v) { return (s >> (v - 1)) & 1; }
inline int vcount(Vset s) { return std::popcount(s); }

// Lowest vertex label in a nonempty set.
inline int vfirst(Vset s) { return std::countr_zero(s) + 1; }

inline std::vector<int> vset_to_vertices(Vset s) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(vcount(s)));
    while (s) {
        out.push_back(vfirst(s));
        s &= s - 1;
    }
    return out;
}

inline Vset full_vset(int n) { return n == 0 ? 0 : (~Vset{0} >> (64 - n)); }

}  // namespace tcm
