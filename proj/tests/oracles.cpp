#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "tcm/bounds.hpp"
#include "tcm/tight_search.hpp"

namespace tcm::oracles {

namespace {

// all k-subsets of items, as masks
std::vector<Vset> all_faces_of_size(int n, int k) {
    std::vector<Vset> out;
    std::vector<int> comb(static_cast<size_t>(k));
    std::iota(comb.begin(), comb.end(), 1);
    while (true) {
        Vset m = 0;
        for (int v : comb) m |= vbit(v);
        out.push_back(m);
        int i = k - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

template <class Check>
void for_each_subset_of_size(const std::vector<Vset>& pool, int size, Check&& check) {
    std::vector<int> idx(static_cast<size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    int n = static_cast<int>(pool.size());
    if (size > n) return;
    while (true) {
        check(idx);
        int i = size - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - (size - i)) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < size; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::vector<std::string> brute_force_sphere_signatures(int n) {
    if (n > 6) throw std::invalid_argument("brute force capped at 6 vertices");
    std::vector<Vset> tris = all_faces_of_size(n, 3);
    int nt = 2 * n - 4;  // triangle count forced by chi = 2
    std::set<std::string> sigs;
    for_each_subset_of_size(tris, nt, [&](const std::vector<int>& idx) {
        std::vector<Vset> facets;
        Vset cover = 0;
        for (int i : idx) {
            facets.push_back(tris[static_cast<size_t>(i)]);
            cover |= tris[static_cast<size_t>(i)];
        }
        if (cover != full_vset(n)) return;
        SimplicialComplex c = SimplicialComplex::from_facet_masks(n, std::move(facets));
        if (c.is_closed_surface() && c.euler_characteristic() == 2)
            sigs.insert(c.canonical_signature());
    });
    return {sigs.begin(), sigs.end()};
}

std::vector<SimplicialComplex> brute_force_3manifolds(int n) {
    if (n > 6) throw std::invalid_argument("brute force capped at 6 vertices");
    std::vector<Vset> tets = all_faces_of_size(n, 4);
    std::set<std::string> seen;
    std::vector<SimplicialComplex> out;
    // facet counts: each vertex link is a 2-sphere on 4 or 5 vertices, so
    // 4*f_3 = sum over links of (2*links - 4) bounds f_3 between 6 and 9
    for (int f3 = 5; f3 <= static_cast<int>(tets.size()); ++f3) {
        for_each_subset_of_size(tets, f3, [&](const std::vector<int>& idx) {
            std::vector<Vset> facets;
            Vset cover = 0;
            for (int i : idx) {
                facets.push_back(tets[static_cast<size_t>(i)]);
                cover |= tets[static_cast<size_t>(i)];
            }
            if (cover != full_vset(n)) return;
            SimplicialComplex c = SimplicialComplex::from_facet_masks(n, std::move(facets));
            if (!c.is_combinatorial_3_manifold() || !c.is_connected()) return;
            std::string sig = c.canonical_signature();
            if (seen.insert(sig).second) out.push_back(std::move(c));
        });
    }
    return out;
}

SimplicialComplex stacked_sphere_6() {
    return SimplicialComplex::from_facets({{1, 2, 3}, {1, 2, 4}, {1, 3, 4},
                                           {5, 2, 3}, {5, 2, 4},
                                           {6, 5, 3}, {6, 5, 4}, {6, 3, 4}});
}

SimplicialComplex stacked_3sphere_6() {
    // boundary of the 4-simplex on {1..5}; vertex 6 stacked into {2,3,4,5}
    std::vector<std::vector<int>> f;
    for (int skip = 1; skip <= 5; ++skip) {
        if (skip == 1) continue;  // {2,3,4,5} gets subdivided
        std::vector<int> facet;
        for (int v = 1; v <= 5; ++v)
            if (v != skip) facet.push_back(v);
        f.push_back(facet);
    }
    for (int skip = 2; skip <= 5; ++skip) {
        std::vector<int> facet{6};
        for (int v = 2; v <= 5; ++v)
            if (v != skip) facet.push_back(v);
        f.push_back(facet);
    }
    return SimplicialComplex::from_facets(f);
}

SimplicialComplex stacked_3sphere_7() {
    // stack vertex 7 into facet {6,3,4,5} of the 6-vertex stacked sphere
    SimplicialComplex base = stacked_3sphere_6();
    std::vector<std::vector<int>> f;
    for (Vset facet : base.facets()) {
        auto vs = vset_to_vertices(facet);
        if (facet == (vbit(6) | vbit(3) | vbit(4) | vbit(5))) continue;
        f.push_back(vs);
    }
    f.push_back({7, 3, 4, 5});
    f.push_back({7, 6, 4, 5});
    f.push_back({7, 6, 3, 5});
    f.push_back({7, 6, 3, 4});
    return SimplicialComplex::from_facets(f);
}

SimplicialComplex csaszar_torus() {
    // vertices 1..7, facets {i, i+1, i+3} and {i, i+2, i+3} mod 7
    std::vector<std::vector<int>> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
        f.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
    }
    return SimplicialComplex::from_facets(f);
}

SimplicialComplex octahedron() {
    std::vector<std::vector<int>> f;
    for (int a : {1, 2})
        for (int b : {3, 4})
            for (int c : {5, 6}) f.push_back({a, b, c});
    return SimplicialComplex::from_facets(f);
}

std::vector<SimplicialComplex> three_manifold_corpus(bool include_search_output) {
    std::vector<SimplicialComplex> out;
    out.push_back(boundary_of_simplex(4));
    out.push_back(stacked_3sphere_6());
    out.push_back(stacked_3sphere_7());
    out.push_back(gale_cyclic_boundary(4, 6));
    out.push_back(gale_cyclic_boundary(4, 7));
    out.push_back(gale_cyclic_boundary(4, 9));
    if (include_search_output) {
        SearchReport rep = search_tight_3manifolds(1);
        for (auto& c : rep.cases)
            for (auto& m : c.manifolds) out.push_back(m);
    }
    return out;
}

SimplicialComplex random_relabel(const SimplicialComplex& c, unsigned seed) {
    std::mt19937 rng(seed);
    int n = c.vertex_count();
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> facets;
    for (Vset f : c.facets()) {
        std::vector<int> vs;
        for (int v : vset_to_vertices(f)) vs.push_back(perm[static_cast<size_t>(v - 1)]);
        facets.push_back(vs);
    }
    return SimplicialComplex::from_facets(facets);
}

}  // namespace tcm::oracles
