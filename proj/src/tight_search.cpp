#include "tcm/tight_search.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <mutex>
#include <sstream>

#include "tcm/bounds.hpp"
#include "tcm/graph.hpp"

namespace tcm {

// --- sigma ------------------------------------------------------------------

namespace {

struct EdgeList {
    int n;
    std::vector<std::pair<int, int>> e;  // 0-based endpoints
};

EdgeList edge_list(const SimplicialComplex& c) {
    EdgeList el;
    el.n = c.vertex_count();
    for (Vset edge : c.faces(1)) {
        auto vs = vset_to_vertices(edge);
        el.e.emplace_back(vs[0] - 1, vs[1] - 1);
    }
    return el;
}

// components of the subgraph induced by W (0-based bitmask); 0 for W = 0
int components(const EdgeList& el, Vset W) {
    std::array<signed char, 16> parent;
    int comp = 0;
    for (int i = 0; i < el.n; ++i)
        if ((W >> i) & 1) {
            parent[static_cast<size_t>(i)] = static_cast<signed char>(i);
            ++comp;
        }
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& [a, b] : el.e) {
        if (((W >> a) & 1) == 0 || ((W >> b) & 1) == 0) continue;
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<size_t>(ra)] = static_cast<signed char>(rb);
            --comp;
        }
    }
    return comp;
}

Rat sigma0_impl(const SimplicialComplex& c, int cap, bool parallel) {
    int n = c.vertex_count();
    if (n > cap) throw CapExceeded("sigma0 capped at " + std::to_string(cap) + " vertices");
    if (n == 0) throw std::invalid_argument("sigma0 of the empty complex");
    EdgeList el = edge_list(c);
    Vset total = Vset{1} << n;

    int nthreads = parallel ? omp_get_max_threads() : 1;
    std::vector<std::vector<long long>> part(
        static_cast<size_t>(nthreads), std::vector<long long>(static_cast<size_t>(n + 1), 0));
#pragma omp parallel num_threads(nthreads) if (parallel)
    {
        auto& sums = part[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (long long w = 0; w < static_cast<long long>(total); ++w) {
            Vset W = static_cast<Vset>(w);
            sums[static_cast<size_t>(vcount(W))] += components(el, W) - 1;
        }
    }
    Rat s = 0;
    for (int j = 0; j <= n; ++j) {
        long long acc = 0;
        for (const auto& sums : part) acc += sums[static_cast<size_t>(j)];
        if (acc != 0) s += make_rat(int_of(acc), binomial(n, j));
    }
    return s;
}

}  // namespace

Rat sigma0(const SimplicialComplex& c, int cap) { return sigma0_impl(c, cap, true); }
Rat sigma0_serial(const SimplicialComplex& c, int cap) { return sigma0_impl(c, cap, false); }

SigmaVector sigma(const SimplicialComplex& c, int i_max, int cap) {
    int n = c.vertex_count();
    if (n > cap) throw CapExceeded("sigma capped at " + std::to_string(cap) + " vertices");
    if (n == 0) throw std::invalid_argument("sigma of the empty complex");
    PrimeField f2(2);
    std::vector<std::vector<long long>> sums(
        static_cast<size_t>(i_max + 1), std::vector<long long>(static_cast<size_t>(n + 1), 0));
#pragma omp parallel
    {
        std::vector<std::vector<long long>> local(
            static_cast<size_t>(i_max + 1), std::vector<long long>(static_cast<size_t>(n + 1), 0));
#pragma omp for schedule(dynamic, 16)
        for (long long w = 1; w < static_cast<long long>(Vset{1} << n); ++w) {
            Vset W = static_cast<Vset>(w);
            std::vector<std::vector<Vset>> faces(static_cast<size_t>(c.dimension() + 1));
            for (int d = 0; d <= c.dimension(); ++d)
                for (Vset face : c.faces(d))
                    if ((face & W) == face) faces[static_cast<size_t>(d)].push_back(face);
            std::vector<int> rb = reduced_betti_of_faces(faces, f2);
            int j = vcount(W);
            for (int i = 0; i <= i_max; ++i) {
                int b = (i < static_cast<int>(rb.size())) ? rb[static_cast<size_t>(i)] : 0;
                local[static_cast<size_t>(i)][static_cast<size_t>(j)] += b;
            }
        }
#pragma omp critical
        for (int i = 0; i <= i_max; ++i)
            for (int j = 0; j <= n; ++j)
                sums[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                    local[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    SigmaVector out;
    for (int i = 0; i <= i_max; ++i) {
        Rat s = (i == 0) ? Rat(-1) : Rat(0);  // the empty set's contribution
        for (int j = 1; j <= n; ++j) {
            long long acc = sums[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (acc != 0) s += make_rat(int_of(acc), binomial(n, j));
        }
        out.s.push_back(s);
    }
    return out;
}

bool is_tight_bd(const SimplicialComplex& c, PrimeField f) {
    if (!c.is_combinatorial_3_manifold() || !c.is_connected())
        throw std::invalid_argument("the link criterion needs a closed connected 3-manifold");
    if (!c.is_k_neighbourly(2)) return false;
    int n = c.vertex_count();
    Rat total = 0;
    for (int v = 1; v <= n; ++v) total += sigma0(c.vertex_link(v));
    Rat avg = total / Rat(n);
    int b1 = betti(c, f).b[1];
    return avg == Rat(b1 - 1);
}

bool property_tk(const SimplicialComplex& sphere, int k) {
    int n = sphere.vertex_count();
    if (Int(k) < tightness_bound(1, n + 1)) return false;
    Graph g = sphere.one_skeleton();
    if (g.has_independent_set(k + 2)) return false;
    if (g.has_6subset_with_components(k + 1)) return false;
    return true;
}

void annotate_catalog(SphereCatalog& cat, const std::vector<int>& tk_values) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(cat.records.size()); ++i) {
        auto& r = cat.records[static_cast<size_t>(i)];
        r.sigma0 = sigma0(r.complex);
        r.tk_flags.clear();
        for (int k : tk_values) r.tk_flags.emplace_back(k, property_tk(r.complex, k));
    }
}

// --- combinations -------------------------------------------------------------

CombinationResult link_combinations(const SphereCatalog& catalog,
                                    const std::vector<int>& eligible, int n, int beta1) {
    CombinationResult out;
    // group eligible records by sigma0 value
    std::map<Rat, std::vector<int>> by_value;
    for (int idx : eligible) {
        const auto& r = catalog.records[static_cast<size_t>(idx)];
        if (!r.sigma0) throw std::logic_error("catalog not annotated with sigma0");
        by_value[*r.sigma0].push_back(idx);
    }
    std::vector<Rat> values;
    std::vector<std::vector<int>> groups;
    for (auto& [val, idxs] : by_value) {
        values.push_back(val);
        groups.push_back(idxs);
    }
    size_t t = values.size();
    Rat target = Rat(n) * Rat(beta1 - 1);

    // choose multiplicities value-by-value with achievable-sum bounds
    std::vector<int> mult(t, 0);
    std::function<void(size_t, int, Rat)> rec = [&](size_t vi, int slots, Rat sum) {
        if (vi == t) {
            if (slots == 0 && sum == target) {
                std::vector<std::pair<Rat, int>> vm;
                for (size_t i = 0; i < t; ++i)
                    if (mult[i] > 0) vm.emplace_back(values[i], mult[i]);
                out.value_multisets.push_back(std::move(vm));
            }
            return;
        }
        // remaining values are values[vi..t-1] (ascending)
        for (int m = 0; m <= slots; ++m) {
            Rat s2 = sum + Rat(m) * values[vi];
            int rest = slots - m;
            Rat lo = s2 + Rat(rest) * values[vi];  // vi itself is min of the tail
            Rat hi = s2 + Rat(rest) * values[t - 1];
            if (vi + 1 == t) {
                lo = s2;
                hi = s2;
                if (rest != 0) continue;
            }
            if (target < lo || target > hi) continue;
            mult[vi] = m;
            rec(vi + 1, rest, s2);
            mult[vi] = 0;
        }
    };
    rec(0, n, Rat(0));

    // expand each value multiset to multisets of records
    for (const auto& vm : out.value_multisets) {
        std::vector<std::vector<std::vector<int>>> per_value;  // choices per value
        for (const auto& [val, m] : vm) {
            const auto& grp = groups[static_cast<size_t>(
                std::lower_bound(values.begin(), values.end(), val) - values.begin())];
            // multisets of size m over grp (combinations with repetition)
            std::vector<std::vector<int>> choices;
            std::vector<int> cur;
            std::function<void(size_t, int)> pick = [&](size_t start, int left) {
                if (left == 0) {
                    choices.push_back(cur);
                    return;
                }
                for (size_t g = start; g < grp.size(); ++g) {
                    cur.push_back(grp[g]);
                    pick(g, left - 1);
                    cur.pop_back();
                }
            };
            pick(0, m);
            per_value.push_back(std::move(choices));
        }
        // cartesian product across values
        std::vector<int> chosen;
        std::function<void(size_t)> cross = [&](size_t vi) {
            if (vi == per_value.size()) {
                LinkCombination comb;
                comb.record_indices = chosen;
                std::sort(comb.record_indices.begin(), comb.record_indices.end());
                comb.sigma0_sum = target;
                out.combinations.push_back(std::move(comb));
                return;
            }
            for (const auto& ch : per_value[vi]) {
                size_t before = chosen.size();
                chosen.insert(chosen.end(), ch.begin(), ch.end());
                cross(vi + 1);
                chosen.resize(before);
            }
        };
        cross(0);
    }
    return out;
}

bool parity_filter(const SphereCatalog& catalog, const LinkCombination& comb) {
    std::map<int, long long> count;
    for (int idx : comb.record_indices)
        for (int d : catalog.records[static_cast<size_t>(idx)].degree_sequence) ++count[d];
    for (const auto& [d, c] : count)
        if (c % 2 != 0) return false;
    return true;
}

// --- assembly ----------------------------------------------------------------

namespace {

Vset tmask(int a, int b, int c) { return vbit(a) | vbit(b) | vbit(c); }

struct LinkType {
    const SimplicialComplex* complex = nullptr;
    int m = 0;
    std::vector<Vset> triangles;
    std::vector<std::vector<int>> tri_at;     // triangle indices at each vertex
    std::vector<std::vector<int>> cycle;      // link cycle of each vertex
    std::vector<int> degree;
    std::vector<int> deg_multiset;
    std::vector<Vset> adj;                    // skeleton adjacency (sphere labels)

    explicit LinkType(const SimplicialComplex& s) : complex(&s), m(s.vertex_count()) {
        triangles = s.facets();
        tri_at.assign(static_cast<size_t>(m + 1), {});
        for (size_t ti = 0; ti < triangles.size(); ++ti)
            for (int v : vset_to_vertices(triangles[ti]))
                tri_at[static_cast<size_t>(v)].push_back(static_cast<int>(ti));
        cycle.assign(static_cast<size_t>(m + 1), {});
        degree.assign(static_cast<size_t>(m + 1), 0);
        adj.assign(static_cast<size_t>(m + 1), 0);
        for (int v = 1; v <= m; ++v) {
            cycle[static_cast<size_t>(v)] = link_cycle(s, v);
            degree[static_cast<size_t>(v)] = static_cast<int>(cycle[static_cast<size_t>(v)].size());
            for (int u : cycle[static_cast<size_t>(v)]) adj[static_cast<size_t>(v)] |= vbit(u);
        }
        deg_multiset.assign(degree.begin() + 1, degree.end());
        std::sort(deg_multiset.begin(), deg_multiset.end());
    }
};

bool is_submultiset(const std::vector<int>& sub, const std::vector<int>& super) {
    size_t i = 0, j = 0;
    while (i < sub.size() && j < super.size()) {
        if (sub[i] == super[j]) {
            ++i;
            ++j;
        } else if (sub[i] > super[j]) {
            ++j;
        } else {
            return false;
        }
    }
    return i == sub.size();
}

struct Assembler {
    int n = 0;
    int tk = -1;
    std::vector<LinkType> types;
    std::vector<int> type_count;

    // dynamic state
    std::vector<int> tri_cof;      // cofacet count per triangle mask
    std::vector<std::uint8_t> tet_in;
    std::vector<Vset> tets;
    Vset placed_mask = 0;
    int placed_upto = 0;

    // ambient permutations of Aut(link of vertex 1) fixing vertex 2
    std::vector<std::vector<int>> aut2;

    std::map<std::string, SimplicialComplex>* results = nullptr;
    std::mutex* results_mu = nullptr;

    void init(int n_, int tk_) {
        n = n_;
        tk = tk_;
        tri_cof.assign(size_t{1} << n, 0);
        tet_in.assign(size_t{1} << n, 0);
        tets.clear();
        placed_mask = 0;
        placed_upto = 0;
    }

    void add_tet(Vset t) {
        tets.push_back(t);
        tet_in[t] = 1;
        for (int v : vset_to_vertices(t)) ++tri_cof[t & ~vbit(v)];
    }
    void pop_tets(size_t down_to) {
        while (tets.size() > down_to) {
            Vset t = tets.back();
            tets.pop_back();
            tet_in[t] = 0;
            for (int v : vset_to_vertices(t)) --tri_cof[t & ~vbit(v)];
        }
    }

    // the link cycle of edge {v,u} read off the placed tetrahedra; u placed
    std::vector<int> edge_cycle(int v, int u) const {
        Vset e = vbit(v) | vbit(u);
        std::vector<int> members;
        for (int x = 1; x <= n; ++x)
            if (x != v && x != u && tri_cof[e | vbit(x)] > 0) members.push_back(x);
        int L = static_cast<int>(members.size());
        if (L < 3) throw std::logic_error("incomplete edge link for a placed star");
        auto nb = [&](int x) {
            Vset out = 0;
            for (int y : members)
                if (y != x && tet_in[e | vbit(x) | vbit(y)]) out |= vbit(y);
            return out;
        };
        std::vector<int> cyc;
        int start = members[0], prev = 0, cur = start;
        do {
            cyc.push_back(cur);
            Vset options = nb(cur) & ~(prev ? vbit(prev) : 0);
            if (options == 0) throw std::logic_error("edge link is not a cycle");
            prev = cur;
            cur = vfirst(options);
        } while (cur != start && static_cast<int>(cyc.size()) <= L);
        if (static_cast<int>(cyc.size()) != L) throw std::logic_error("edge link is not a single cycle");
        return cyc;
    }

    // prunes evaluated on the finalized part of every unplaced link
    bool prune_fails() const {
        for (int u = placed_upto + 1; u <= n; ++u) {
            std::vector<int> forced;
            std::vector<Vset> adj_placed(static_cast<size_t>(placed_upto + 1), 0);
            for (int a = 1; a <= placed_upto; ++a) {
                int deg = 0;
                for (int b = 1; b <= n; ++b) {
                    if (b == u || b == a) continue;
                    if (tri_cof[tmask(u, a, b)] > 0) {
                        ++deg;
                        if (b <= placed_upto) adj_placed[static_cast<size_t>(a)] |= vbit(b);
                    }
                }
                forced.push_back(deg);
            }
            std::sort(forced.begin(), forced.end());
            bool embeddable = false;
            for (size_t ti = 0; ti < types.size() && !embeddable; ++ti)
                if (type_count[ti] > 0 && is_submultiset(forced, types[ti].deg_multiset))
                    embeddable = true;
            if (!embeddable) return true;

            if (tk >= 0 && placed_upto >= tk + 2) {
                // the induced subgraph of lk(u) on placed vertices is final
                Graph g(placed_upto);
                for (int a = 1; a <= placed_upto; ++a)
                    for (int b = a + 1; b <= placed_upto; ++b)
                        if (vin(adj_placed[static_cast<size_t>(a)], b)) g.add_edge(a, b);
                if (g.has_independent_set(tk + 2)) return true;
                if (placed_upto >= 6 && g.has_6subset_with_components_at_least(tk + 1)) return true;
            }
        }
        return false;
    }

    void emit() {
        SimplicialComplex m = SimplicialComplex::from_facet_masks(n, tets);
        SimplicialComplex canon = m.canonical_form();
        std::string sig = serialize_complex(canon);
        if (results_mu) {
            std::lock_guard<std::mutex> lock(*results_mu);
            results->emplace(std::move(sig), std::move(canon));
        } else {
            results->emplace(std::move(sig), std::move(canon));
        }
    }
};

// Embeds one sphere onto the partial star structure of ambient vertex v.
struct Matcher {
    Assembler& A;
    const LinkType& T;
    int v;
    std::vector<std::vector<int>> cycles;  // cycles[u] for placed u (index u)
    std::vector<int> phi, inv;
    int covered = 0, required = 0;
    std::vector<Vset> new_tets;
    std::function<void(const std::vector<Vset>&)> on_match;

    struct Frame {
        std::vector<int> pins;
        int covered = 0;
        size_t newtets = 0;
    };

    Matcher(Assembler& a, const LinkType& t, int v_) : A(a), T(t), v(v_) {
        phi.assign(static_cast<size_t>(T.m + 1), 0);
        inv.assign(static_cast<size_t>(A.n + 1), 0);
        for (Vset tet : A.tets)
            if (vin(tet, v)) ++required;
        cycles.resize(static_cast<size_t>(v));
        for (int u = 1; u < v; ++u) cycles[static_cast<size_t>(u)] = A.edge_cycle(v, u);
    }

    bool try_pin(int s, int a, Frame& fr) {
        phi[static_cast<size_t>(s)] = a;
        inv[static_cast<size_t>(a)] = s;
        fr.pins.push_back(s);
        for (int ti : T.tri_at[static_cast<size_t>(s)]) {
            Vset tri = T.triangles[static_cast<size_t>(ti)];
            Vset t = vbit(v);
            bool complete = true;
            Vset g = tri;
            while (g) {
                int sv = vfirst(g);
                g &= g - 1;
                int av = phi[static_cast<size_t>(sv)];
                if (!av) {
                    complete = false;
                    break;
                }
                t |= vbit(av);
            }
            if (!complete) continue;
            if (A.tet_in[t]) {
                ++covered;
                ++fr.covered;
            } else {
                // a new tetrahedron may not touch any completed star
                if ((t & A.placed_mask) != 0) return false;
                if (A.tri_cof[t & ~vbit(v)] >= 2) return false;
                new_tets.push_back(t);
                ++fr.newtets;
            }
        }
        return true;
    }

    void undo(Frame& fr) {
        for (int s : fr.pins) {
            inv[static_cast<size_t>(phi[static_cast<size_t>(s)])] = 0;
            phi[static_cast<size_t>(s)] = 0;
        }
        covered -= fr.covered;
        new_tets.resize(new_tets.size() - fr.newtets);
        fr.pins.clear();
        fr.covered = 0;
        fr.newtets = 0;
    }

    void run() { rec_placed(1); }

    void rec_placed(int u) {
        if (u == v) {
            // every required tetrahedron contains a placed vertex, so all of
            // them are resolved once the placed cycles are aligned
            if (covered != required) return;
            rec_free();
            return;
        }
        const auto& C = cycles[static_cast<size_t>(u)];
        int L = static_cast<int>(C.size());
        int w0 = inv[static_cast<size_t>(u)];
        if (w0 != 0) {
            if (T.degree[static_cast<size_t>(w0)] != L) return;
            alignments(w0, u, C);
        } else {
            for (int w = 1; w <= T.m; ++w) {
                if (phi[static_cast<size_t>(w)] != 0) continue;
                if (T.degree[static_cast<size_t>(w)] != L) continue;
                Frame fr;
                if (try_pin(w, u, fr)) alignments(w, u, C);
                undo(fr);
            }
        }
    }

    void alignments(int w, int u, const std::vector<int>& C) {
        const auto& cyc = T.cycle[static_cast<size_t>(w)];
        int L = static_cast<int>(C.size());
        for (int r = 0; r < L; ++r) {
            for (int dir : {1, -1}) {
                Frame fr;
                bool ok = true;
                for (int i = 0; i < L && ok; ++i) {
                    int s = cyc[static_cast<size_t>(i)];
                    int a = C[static_cast<size_t>(((r + dir * i) % L + L) % L)];
                    int cur = phi[static_cast<size_t>(s)];
                    if (cur == a) continue;
                    if (cur != 0 || inv[static_cast<size_t>(a)] != 0) {
                        ok = false;
                        break;
                    }
                    ok = try_pin(s, a, fr);
                }
                if (ok) rec_placed(u + 1);
                undo(fr);
            }
        }
    }

    void rec_free() {
        // most-pinned-neighbours-first keeps triangles completing early
        int best = 0, best_score = -1;
        for (int w = 1; w <= T.m; ++w) {
            if (phi[static_cast<size_t>(w)] != 0) continue;
            int score = 0;
            Vset nb = T.adj[static_cast<size_t>(w)];
            while (nb) {
                int s = vfirst(nb);
                nb &= nb - 1;
                if (phi[static_cast<size_t>(s)] != 0) ++score;
            }
            if (score > best_score) {
                best_score = score;
                best = w;
            }
        }
        if (best == 0) {
            on_match(new_tets);
            return;
        }
        for (int a = 2; a <= A.n; ++a) {
            if (a == v || inv[static_cast<size_t>(a)] != 0) continue;
            Frame fr;
            if (try_pin(best, a, fr)) rec_free();
            undo(fr);
        }
    }
};

struct AssemblyDriver {
    Assembler base;
    std::map<std::string, SimplicialComplex> results;
    std::mutex results_mu;

    // choose a link type for ambient vertex v and recurse
    void dfs(Assembler& A, int v) {
        if (v > A.n) {
            A.emit();
            return;
        }
        for (size_t ti = 0; ti < A.types.size(); ++ti) {
            if (A.type_count[ti] == 0) continue;
            // distinct embeddings that place the same star commit the same
            // state, so each new-tetrahedron set is explored once
            std::set<std::vector<Vset>> seen;
            Matcher m(A, A.types[ti], v);
            m.on_match = [&](const std::vector<Vset>& newt) {
                std::vector<Vset> key(newt);
                std::sort(key.begin(), key.end());
                if (!seen.insert(std::move(key)).second) return;
                size_t mark = A.tets.size();
                for (Vset t : newt) A.add_tet(t);
                A.placed_mask |= vbit(v);
                A.placed_upto = v;
                --A.type_count[ti];
                if (!A.prune_fails()) dfs(A, v + 1);
                ++A.type_count[ti];
                A.placed_mask &= ~vbit(v);
                A.placed_upto = v - 1;
                A.pop_tets(mark);
            };
            m.run();
        }
    }

    // star(2) branches are collected first and explored in parallel
    struct Branch {
        size_t type = 0;
        std::vector<Vset> new_tets;
    };

    std::vector<SimplicialComplex> run(int n) {
        // star(1): the first type in canonical position, identity embedding
        const LinkType& t1 = base.types[0];
        for (Vset tri : t1.triangles) {
            Vset t = vbit(1);
            for (int s : vset_to_vertices(tri)) t |= vbit(s + 1);
            base.add_tet(t);
        }
        base.placed_mask = vbit(1);
        base.placed_upto = 1;
        --base.type_count[0];

        // ambient automorphisms of star(1) fixing vertices 1 and 2
        for (const auto& aut : t1.complex->automorphisms()) {
            if (aut[0] != 1) continue;  // sphere vertex 1 = ambient vertex 2
            std::vector<int> perm(static_cast<size_t>(n + 1));
            perm[1] = 1;
            for (int s = 1; s <= t1.m; ++s) perm[static_cast<size_t>(s + 1)] = aut[static_cast<size_t>(s - 1)] + 1;
            bool identity = true;
            for (int x = 1; x <= n; ++x)
                if (perm[static_cast<size_t>(x)] != x) identity = false;
            if (!identity) base.aut2.push_back(std::move(perm));
        }

        std::vector<Branch> branches;
        for (size_t ti = 0; ti < base.types.size(); ++ti) {
            if (base.type_count[ti] == 0) continue;
            std::set<std::vector<Vset>> seen;
            Matcher m(base, base.types[ti], 2);
            m.on_match = [&](const std::vector<Vset>& newt) {
                std::vector<Vset> key(newt);
                std::sort(key.begin(), key.end());
                if (!seen.insert(std::move(key)).second) return;
                if (!aut2_minimal(newt)) return;
                branches.push_back({ti, newt});
            };
            m.run();
        }

        base.results = &results;
        base.results_mu = &results_mu;
#pragma omp parallel for schedule(dynamic)
        for (long long bi = 0; bi < static_cast<long long>(branches.size()); ++bi) {
            Assembler A = base;  // private copy per branch
            A.results = &results;
            A.results_mu = &results_mu;
            const Branch& br = branches[static_cast<size_t>(bi)];
            for (Vset t : br.new_tets) A.add_tet(t);
            A.placed_mask |= vbit(2);
            A.placed_upto = 2;
            --A.type_count[br.type];
            if (!A.prune_fails()) dfs(A, 3);
        }

        std::vector<SimplicialComplex> out;
        for (auto& [sig, c] : results) out.push_back(std::move(c));
        return out;
    }

    // keep one representative of each star(2) orbit under Aut(star(1))
    bool aut2_minimal(const std::vector<Vset>& newt) const {
        if (base.aut2.empty()) return true;
        std::vector<Vset> star2;
        for (Vset t : base.tets)
            if (vin(t, 2)) star2.push_back(t);
        star2.insert(star2.end(), newt.begin(), newt.end());
        std::sort(star2.begin(), star2.end());
        for (const auto& perm : base.aut2) {
            std::vector<Vset> mapped;
            mapped.reserve(star2.size());
            for (Vset t : star2) {
                Vset mt = 0;
                for (int x : vset_to_vertices(t)) mt |= vbit(perm[static_cast<size_t>(x)]);
                mapped.push_back(mt);
            }
            std::sort(mapped.begin(), mapped.end());
            if (mapped < star2) return false;
        }
        return true;
    }
};

}  // namespace

std::vector<SimplicialComplex> assemble(const SphereCatalog& catalog,
                                        const LinkCombination& comb, int n, int tk) {
    if (static_cast<int>(comb.record_indices.size()) != n)
        throw std::invalid_argument("combination size must equal the vertex count");
    for (int idx : comb.record_indices)
        if (catalog.records[static_cast<size_t>(idx)].complex.vertex_count() != n - 1)
            throw std::invalid_argument("link vertex counts inconsistent with n");

    AssemblyDriver drv;
    drv.base.init(n, tk);
    // distinct types in catalog order, with multiplicities
    std::vector<int> distinct;
    for (int idx : comb.record_indices)
        if (distinct.empty() || distinct.back() != idx) distinct.push_back(idx);
    for (int idx : distinct) {
        drv.base.types.push_back(LinkType(catalog.records[static_cast<size_t>(idx)].complex));
        drv.base.type_count.push_back(static_cast<int>(
            std::count(comb.record_indices.begin(), comb.record_indices.end(), idx)));
    }
    return drv.run(n);
}

// --- the classification pipeline ---------------------------------------------

SearchReport search_tight_3manifolds(int beta1) {
    if (beta1 < 0 || beta1 > 2) throw std::invalid_argument("beta1 must be 0, 1 or 2");
    SearchReport rep;
    rep.beta1 = beta1;
    long lower = three_manifold_lower_bounds()[static_cast<size_t>(beta1)];
    long upper = max_vertices(1, beta1);
    PrimeField f2(2);

    for (long n = lower; n <= upper; ++n) {
        SearchCase sc;
        sc.n = static_cast<int>(n);
        if (beta1 == 2 && n == 11) {
            // settled by the external census of 11-vertex 3-manifolds
            sc.delegated = true;
            rep.cases.push_back(std::move(sc));
            continue;
        }
        SphereCatalog cat = enumerate_spheres(static_cast<int>(n) - 1);
        annotate_catalog(cat, {beta1});
        sc.catalog_size = cat.records.size();

        std::vector<int> eligible;
        for (size_t i = 0; i < cat.records.size(); ++i)
            if (cat.records[i].tk_flags.front().second) eligible.push_back(static_cast<int>(i));
        sc.tk_pass = eligible.size();

        CombinationResult combs = link_combinations(cat, eligible, static_cast<int>(n), beta1);
        sc.value_multisets = combs.value_multisets.size();
        sc.link_combination_count = combs.combinations.size();

        for (size_t ci = 0; ci < combs.combinations.size(); ++ci) {
            const auto& comb = combs.combinations[ci];
            CombinationRow row;
            row.id = static_cast<int>(ci) + 1;
            {
                std::ostringstream ms;
                for (size_t k = 0; k < comb.record_indices.size(); ++k) {
                    if (k) ms << ',';
                    ms << rat_to_string(*cat.records[static_cast<size_t>(comb.record_indices[k])].sigma0);
                }
                row.sigma_multiset = ms.str();
            }
            row.parity_ok = parity_filter(cat, comb);
            if (row.parity_ok) {
                ++sc.parity_survivors;
                std::vector<SimplicialComplex> found =
                    assemble(cat, comb, static_cast<int>(n), beta1);
                row.manifolds_found = static_cast<int>(found.size());
                for (auto& m : found) {
                    row.signatures.push_back(serialize_complex(m));
                    bool tight = m.is_combinatorial_3_manifold() && is_tight_exhaustive(m, f2);
                    if (tight) sc.manifolds.push_back(std::move(m));
                }
            }
            sc.rows.push_back(std::move(row));
        }
        rep.cases.push_back(std::move(sc));
    }
    return rep;
}

std::string search_report_text(const SearchReport& rep) {
    std::ostringstream os;
    os << "tight combinatorial 3-manifolds with first Betti number " << rep.beta1 << "\n";
    size_t total = 0;
    for (const auto& sc : rep.cases) {
        os << "  n=" << sc.n << ": ";
        if (sc.delegated) {
            os << "delegated to the external classification of 11-vertex 3-manifolds\n";
            continue;
        }
        os << sc.catalog_size << " spheres, " << sc.tk_pass << " pass T_" << rep.beta1 << ", "
           << sc.value_multisets << " value multisets, " << sc.link_combination_count
           << " link combinations, " << sc.parity_survivors << " parity survivors, "
           << sc.manifolds.size() << " tight manifold(s)\n";
        for (const auto& m : sc.manifolds) os << "    " << serialize_complex(m) << "\n";
        total += sc.manifolds.size();
    }
    os << "total: " << total << " tight manifold(s)\n";
    return os.str();
}

std::string search_report_tsv(const SearchReport& rep) {
    std::ostringstream os;
    os << "n\tcombination\tsigma0_multiset\tparity\tmanifolds\tsignatures\n";
    for (const auto& sc : rep.cases) {
        if (sc.delegated) {
            os << sc.n << "\t-\t-\tdelegated\t0\t\n";
            continue;
        }
        for (const auto& row : sc.rows) {
            os << sc.n << '\t' << row.id << '\t' << row.sigma_multiset << '\t'
               << (row.parity_ok ? "even" : "odd") << '\t' << row.manifolds_found << '\t';
            for (size_t i = 0; i < row.signatures.size(); ++i) {
                if (i) os << ',';
                os << row.signatures[i];
            }
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace tcm
