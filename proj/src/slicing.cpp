#include "tcm/slicing.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>

namespace tcm {

FVector slicing_f_vector(const SimplicialComplex& c, Vset W) {
    Vset V = c.vertex_set();
    if (W == 0 || (W & ~V) != 0 || W == V) throw std::invalid_argument("trivial bipartition");
    int d = c.dimension();
    FVector f(static_cast<size_t>(d));
    for (int i = 0; i + 1 <= d; ++i) {
        long long cnt = 0;
        for (Vset face : c.faces(i + 1))
            if ((face & W) != 0 && (face & ~W & V) != 0) ++cnt;
        f[static_cast<size_t>(i)] = cnt;
    }
    return f;
}

SlicingSurface slicing_surface(const SimplicialComplex& c, Vset W) {
    if (!c.is_combinatorial_3_manifold())
        throw std::invalid_argument("slicing surfaces need a closed 3-manifold");
    Vset V = c.vertex_set();
    if (W == 0 || (W & ~V) != 0 || W == V) throw std::invalid_argument("trivial bipartition");

    SlicingSurface s;
    s.lower = W;
    // surface vertices = cut edges, surface edges = cut triangles
    std::vector<Vset> cut_edges, cut_tris;
    for (Vset e : c.faces(1))
        if ((e & W) && (e & ~W & V)) cut_edges.push_back(e);
    for (Vset t : c.faces(2))
        if ((t & W) && (t & ~W & V)) cut_tris.push_back(t);
    s.vertices = static_cast<long long>(cut_edges.size());
    s.edges = static_cast<long long>(cut_tris.size());

    // polygon cells per cut facet: corner cycle of cut edges, with the cut
    // triangle between two consecutive corners as the polygon side
    struct Cell {
        std::vector<Vset> corners;  // cut-edge masks, in cyclic order
        std::vector<Vset> sides;    // sides[i] joins corners[i], corners[i+1]
    };
    std::vector<Cell> cells;
    for (Vset f : c.facets()) {
        Vset a = f & W, b = f & ~W & V;
        if (!a || !b) continue;
        auto av = vset_to_vertices(a);
        auto bv = vset_to_vertices(b);
        Cell cell;
        if (av.size() == 2) {  // quadrilateral
            int w1 = av[0], w2 = av[1], x = bv[0], y = bv[1];
            cell.corners = {vbit(w1) | vbit(x), vbit(w1) | vbit(y), vbit(w2) | vbit(y),
                            vbit(w2) | vbit(x)};
            cell.sides = {vbit(w1) | vbit(x) | vbit(y), vbit(w1) | vbit(w2) | vbit(y),
                          vbit(w2) | vbit(x) | vbit(y), vbit(w1) | vbit(w2) | vbit(x)};
            ++s.quads;
        } else {  // triangle; one side has a single vertex
            if (av.size() == 3) std::swap(av, bv);
            int w = av[0];
            int x = bv[0], y = bv[1], z = bv[2];
            cell.corners = {vbit(w) | vbit(x), vbit(w) | vbit(y), vbit(w) | vbit(z)};
            cell.sides = {vbit(w) | vbit(x) | vbit(y), vbit(w) | vbit(y) | vbit(z),
                          vbit(w) | vbit(x) | vbit(z)};
            ++s.triangles;
        }
        cells.push_back(std::move(cell));
    }
    s.chi = s.vertices - s.edges + s.triangles + s.quads;

    // adjacency through shared sides (each cut triangle lies in two cut facets)
    std::map<Vset, std::vector<std::pair<int, int>>> side_users;  // side -> (cell, side idx)
    for (size_t ci = 0; ci < cells.size(); ++ci)
        for (size_t si = 0; si < cells[ci].sides.size(); ++si)
            side_users[cells[ci].sides[si]].emplace_back(static_cast<int>(ci), static_cast<int>(si));

    // components and orientability by orientation propagation:
    // flipping a cell reverses its corner cycle; two cells are compatible if
    // they traverse their shared side in opposite corner order
    std::vector<int> orient(cells.size(), 0);
    bool orientable = true;
    int components = 0;
    for (size_t seed = 0; seed < cells.size(); ++seed) {
        if (orient[seed]) continue;
        ++components;
        orient[seed] = 1;
        std::vector<size_t> stack{seed};
        while (!stack.empty()) {
            size_t ci = stack.back();
            stack.pop_back();
            const Cell& cell = cells[ci];
            size_t m = cell.corners.size();
            for (size_t si = 0; si < m; ++si) {
                Vset from = cell.corners[si];
                Vset to = cell.corners[(si + 1) % m];
                for (auto [cj, sj] : side_users[cell.sides[si]]) {
                    if (static_cast<size_t>(cj) == ci) continue;
                    const Cell& other = cells[static_cast<size_t>(cj)];
                    size_t mo = other.corners.size();
                    Vset ofrom = other.corners[static_cast<size_t>(sj)];
                    Vset oto = other.corners[(static_cast<size_t>(sj) + 1) % mo];
                    // same traversal direction forces opposite cell orientations
                    int rel = (ofrom == from && oto == to) ? -1 : 1;
                    int needed = orient[ci] * rel;
                    if (orient[static_cast<size_t>(cj)] == 0) {
                        orient[static_cast<size_t>(cj)] = needed;
                        stack.push_back(static_cast<size_t>(cj));
                    } else if (orient[static_cast<size_t>(cj)] != needed) {
                        orientable = false;
                    }
                }
            }
        }
    }
    s.components = components;
    s.orientable = orientable;
    return s;
}

namespace {

AverageSlicingStats average_impl(const SimplicialComplex& c, int k, bool parallel) {
    int n = c.vertex_count();
    if (k < 1 || k > n - 1) throw std::invalid_argument("k out of range");
    int d = c.dimension();
    // per-face cut counts accumulate exactly; totals fit 64 bits easily
    std::vector<long long> totals(static_cast<size_t>(d), 0);
    long long count = 0;

    std::vector<Vset> subsets;
    for (Vset W = 0; W < (Vset{1} << n); ++W)
        if (vcount(W) == k) subsets.push_back(W);

    int nthreads = parallel ? omp_get_max_threads() : 1;
    std::vector<std::vector<long long>> part(static_cast<size_t>(nthreads),
                                             std::vector<long long>(static_cast<size_t>(d), 0));
#pragma omp parallel for schedule(static) num_threads(nthreads) if (parallel)
    for (long long idx = 0; idx < static_cast<long long>(subsets.size()); ++idx) {
        FVector f = slicing_f_vector(c, subsets[static_cast<size_t>(idx)]);
        auto& acc = part[static_cast<size_t>(omp_get_thread_num())];
        for (int i = 0; i < d; ++i) acc[static_cast<size_t>(i)] += f[static_cast<size_t>(i)];
    }
    for (const auto& acc : part)
        for (int i = 0; i < d; ++i) totals[static_cast<size_t>(i)] += acc[static_cast<size_t>(i)];
    count = static_cast<long long>(subsets.size());

    AverageSlicingStats out;
    out.chi = 0;
    for (int i = 0; i < d; ++i) {
        Rat avg = make_rat(int_of(totals[static_cast<size_t>(i)]), int_of(count));
        out.f.push_back(avg);
        out.chi += (i % 2 == 0) ? avg : -avg;
    }
    return out;
}

}  // namespace

AverageSlicingStats average_slicing_stats(const SimplicialComplex& c, int k) {
    return average_impl(c, k, true);
}
AverageSlicingStats average_slicing_stats_serial(const SimplicialComplex& c, int k) {
    return average_impl(c, k, false);
}

namespace {

void check_ordering(const SimplicialComplex& c, const RslOrdering& ord) {
    int n = c.vertex_count();
    if (static_cast<int>(ord.order.size()) != n) throw std::invalid_argument("ordering size mismatch");
    Vset seen = 0;
    for (int v : ord.order) {
        if (v < 1 || v > n || vin(seen, v)) throw std::invalid_argument("ordering is not a permutation");
        seen |= vbit(v);
    }
}

// multiplicity vector (index 0..d) of one vertex from its lower link
std::vector<int> multiplicities_from_lower_link(const std::vector<Vset>& link_faces_all_dims_flat,
                                                int dim, Vset preds, PrimeField f) {
    // link faces are ambient-labelled; filter by predecessor support
    std::vector<std::vector<Vset>> faces(static_cast<size_t>(std::max(dim, 0)) + 1);
    bool any = false;
    for (Vset face : link_faces_all_dims_flat) {
        if ((face & preds) == face) {
            faces[static_cast<size_t>(vcount(face) - 1)].push_back(face);
            any = true;
        }
    }
    std::vector<int> m(static_cast<size_t>(dim + 2), 0);
    if (!any) {
        m[0] = 1;  // empty lower link: critical of index 0
        return m;
    }
    std::vector<int> rb = reduced_betti_of_faces(faces, f);
    for (size_t i = 0; i < rb.size(); ++i)
        if (rb[i] > 0) m[i + 1] = rb[i];
    return m;
}

// all faces of lk(v) in ambient labels, flattened
std::vector<Vset> link_faces_flat(const SimplicialComplex& c, int v) {
    std::vector<Vset> out;
    for (int d = 1; d <= c.dimension(); ++d)
        for (Vset face : c.faces(d))
            if (vin(face, v)) out.push_back(face & ~vbit(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

CriticalReport critical_points(const SimplicialComplex& c, const RslOrdering& ord, PrimeField f) {
    check_ordering(c, ord);
    int d = c.dimension();
    CriticalReport rep;
    rep.total_per_index.assign(static_cast<size_t>(d + 1), 0);
    Vset preds = 0;
    for (int v : ord.order) {
        auto lf = link_faces_flat(c, v);
        std::vector<int> m = multiplicities_from_lower_link(lf, d - 1, preds, f);
        for (int idx = 0; idx <= d; ++idx)
            if (m[static_cast<size_t>(idx)] > 0) {
                rep.points.push_back({v, idx, m[static_cast<size_t>(idx)]});
                rep.total_per_index[static_cast<size_t>(idx)] += m[static_cast<size_t>(idx)];
            }
        preds |= vbit(v);
    }
    return rep;
}

bool is_perfect(const SimplicialComplex& c, const RslOrdering& ord, PrimeField f) {
    return critical_points(c, ord, f).total() == betti(c, f).sum();
}

// --- MorseTables -------------------------------------------------------------

MorseTables::MorseTables(const SimplicialComplex& c, PrimeField f)
    : n_(c.vertex_count()), dim_(c.dimension()) {
    link_mask_.assign(static_cast<size_t>(n_) + 1, 0);
    table_.resize(static_cast<size_t>(n_) + 1);
    for (int v = 1; v <= n_; ++v) {
        auto lf = link_faces_flat(c, v);
        Vset lm = 0;
        for (Vset face : lf) lm |= face;
        link_mask_[static_cast<size_t>(v)] = lm;
        int deg = vcount(lm);
        auto& tv = table_[static_cast<size_t>(v)];
        tv.resize(size_t{1} << deg);
        auto lverts = vset_to_vertices(lm);
        for (size_t sub = 0; sub < tv.size(); ++sub) {
            Vset preds = 0;
            for (int b = 0; b < deg; ++b)
                if ((sub >> b) & 1) preds |= vbit(lverts[static_cast<size_t>(b)]);
            tv[sub] = multiplicities_from_lower_link(lf, dim_ - 1, preds, f);
        }
    }
}

size_t MorseTables::compress(int v, Vset preds) const {
    Vset lm = link_mask_[static_cast<size_t>(v)];
    size_t idx = 0;
    int b = 0;
    while (lm) {
        Vset low = lm & (~lm + 1);
        if (preds & low) idx |= (size_t{1} << b);
        lm ^= low;
        ++b;
    }
    return idx;
}

const std::vector<int>& MorseTables::multiplicities(int v, Vset preds) const {
    return table_[static_cast<size_t>(v)][compress(v, preds & link_mask_[static_cast<size_t>(v)])];
}

int MorseTables::total_multiplicity(const RslOrdering& ord) const {
    int total = 0;
    Vset preds = 0;
    for (int v : ord.order) {
        const auto& m = multiplicities(v, preds);
        for (int x : m) total += x;
        preds |= vbit(v);
    }
    return total;
}

std::vector<int> MorseTables::per_index_totals(const RslOrdering& ord) const {
    std::vector<int> totals(static_cast<size_t>(dim_ + 1), 0);
    Vset preds = 0;
    for (int v : ord.order) {
        const auto& m = multiplicities(v, preds);
        for (size_t i = 0; i < totals.size() && i < m.size(); ++i) totals[i] += m[i];
        preds |= vbit(v);
    }
    return totals;
}

namespace {

bool all_perfect_impl(const SimplicialComplex& c, PrimeField f, int cap, bool parallel) {
    int n = c.vertex_count();
    if (n > cap) throw CapExceeded("exhaustive ordering sweep capped at " + std::to_string(cap) +
                                   " vertices");
    MorseTables tables(c, f);
    int target = betti(c, f).sum();

    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int first = 1; first <= n; ++first) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (v != first) rest.push_back(v);
        RslOrdering ord;
        ord.order.resize(static_cast<size_t>(n));
        ord.order[0] = first;
        do {
            std::copy(rest.begin(), rest.end(), ord.order.begin() + 1);
            if (tables.total_multiplicity(ord) != target) {
                ok.store(false, std::memory_order_relaxed);
                break;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return ok.load();
}

}  // namespace

bool all_rsl_perfect(const SimplicialComplex& c, PrimeField f, int cap) {
    return all_perfect_impl(c, f, cap, true);
}
bool all_rsl_perfect_serial(const SimplicialComplex& c, PrimeField f, int cap) {
    return all_perfect_impl(c, f, cap, false);
}

}  // namespace tcm
