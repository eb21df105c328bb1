#include "tcm/simplicial_complex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace tcm {

namespace {

// Drop masks contained in another mask, deduplicate, sort.
std::vector<Vset> maximalize(std::vector<Vset> masks) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Vset> out;
    for (size_t i = 0; i < masks.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < masks.size() && !dominated; ++j)
            if (i != j && (masks[i] & masks[j]) == masks[i] &&
                masks[i] != masks[j])
                dominated = true;
        // equal masks removed by unique; strict subsets dropped here
        if (!dominated) out.push_back(masks[i]);
    }
    return out;
}

}  // namespace

void SimplicialComplex::build_faces() {
    faces_.assign(static_cast<size_t>(dim_ + 1), {});
    if (dim_ < 0) return;
    std::vector<std::unordered_set<Vset>> sets(static_cast<size_t>(dim_ + 1));
    for (Vset f : facets_) {
        // enumerate all nonempty subsets of the facet
        for (Vset s = f;; s = (s - 1) & f) {
            if (s) sets[static_cast<size_t>(vcount(s) - 1)].insert(s);
            if (s == 0) break;
        }
    }
    for (int d = 0; d <= dim_; ++d) {
        faces_[static_cast<size_t>(d)].assign(sets[static_cast<size_t>(d)].begin(),
                                              sets[static_cast<size_t>(d)].end());
        std::sort(faces_[static_cast<size_t>(d)].begin(), faces_[static_cast<size_t>(d)].end());
    }
}

SimplicialComplex SimplicialComplex::from_facet_masks(int n, std::vector<Vset> facets) {
    SimplicialComplex c;
    c.facets_ = maximalize(std::move(facets));
    c.n_ = n;
    if (c.facets_.empty()) {
        if (n != 0) throw std::invalid_argument("vertices without facets");
        return c;
    }
    Vset cover = 0;
    int dmin = 64, dmax = -1;
    for (Vset f : c.facets_) {
        cover |= f;
        int k = vcount(f) - 1;
        dmin = std::min(dmin, k);
        dmax = std::max(dmax, k);
    }
    if (cover != full_vset(n))
        throw std::invalid_argument("facet masks do not cover labels 1..n");
    c.dim_ = dmax;
    c.pure_ = (dmin == dmax);
    c.build_faces();
    return c;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<int>>& facets) {
    if (facets.empty()) throw std::invalid_argument("empty facet list");
    std::vector<int> labels;
    for (const auto& f : facets) {
        if (f.empty()) throw std::invalid_argument("empty facet");
        std::vector<int> s(f);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("facet with repeated vertex");
        for (int v : s) {
            if (v <= 0) throw std::invalid_argument("vertex labels must be positive");
            labels.push_back(v);
        }
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() > 62) throw std::invalid_argument("too many vertices");
    std::map<int, int> dense;
    for (size_t i = 0; i < labels.size(); ++i) dense[labels[i]] = static_cast<int>(i) + 1;

    std::vector<Vset> masks;
    masks.reserve(facets.size());
    for (const auto& f : facets) {
        Vset m = 0;
        for (int v : f) m |= vbit(dense[v]);
        masks.push_back(m);
    }
    return from_facet_masks(static_cast<int>(labels.size()), std::move(masks));
}

const std::vector<Vset>& SimplicialComplex::faces(int d) const {
    static const std::vector<Vset> kEmpty;
    if (d < 0 || d > dim_) return kEmpty;
    return faces_[static_cast<size_t>(d)];
}

bool SimplicialComplex::has_face(Vset f) const {
    if (f == 0) return !empty();
    int d = vcount(f) - 1;
    if (d > dim_) return false;
    const auto& fs = faces(d);
    return std::binary_search(fs.begin(), fs.end(), f);
}

FVector SimplicialComplex::f_vector() const {
    FVector f(static_cast<size_t>(dim_ + 1));
    for (int d = 0; d <= dim_; ++d) f[static_cast<size_t>(d)] = static_cast<long long>(faces(d).size());
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= dim_; ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(faces(d).size());
    return chi;
}

RelabeledComplex relabel_faces(const std::vector<Vset>& maximal_faces) {
    Vset cover = 0;
    for (Vset f : maximal_faces) cover |= f;
    std::vector<int> verts = vset_to_vertices(cover);
    std::vector<int> dense_of(65, 0);
    for (size_t i = 0; i < verts.size(); ++i) dense_of[static_cast<size_t>(verts[i])] = static_cast<int>(i) + 1;

    std::vector<Vset> relabeled;
    relabeled.reserve(maximal_faces.size());
    for (Vset f : maximal_faces) {
        Vset m = 0;
        for (int v : vset_to_vertices(f)) m |= vbit(dense_of[static_cast<size_t>(v)]);
        relabeled.push_back(m);
    }
    RelabeledComplex out;
    out.to_ambient = verts;
    out.complex = maximal_faces.empty()
                      ? SimplicialComplex()
                      : SimplicialComplex::from_facet_masks(static_cast<int>(verts.size()), std::move(relabeled));
    return out;
}

SimplicialComplex SimplicialComplex::induced_subcomplex(Vset W) const {
    std::vector<Vset> cand;
    for (Vset f : facets_) {
        Vset g = f & W;
        if (g) cand.push_back(g);
    }
    if (cand.empty()) return SimplicialComplex();
    return relabel_faces(cand).complex;
}

std::vector<Vset> SimplicialComplex::link_facets_ambient(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("unknown vertex");
    std::vector<Vset> out;
    for (Vset f : facets_)
        if (vin(f, v)) out.push_back(f & ~vbit(v));
    return out;
}

SimplicialComplex SimplicialComplex::vertex_link(int v) const {
    std::vector<Vset> lf = link_facets_ambient(v);
    lf.erase(std::remove(lf.begin(), lf.end(), Vset{0}), lf.end());
    if (lf.empty()) return SimplicialComplex();
    return relabel_faces(lf).complex;
}

SimplicialComplex SimplicialComplex::vertex_star(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("unknown vertex");
    std::vector<Vset> sf;
    for (Vset f : facets_)
        if (vin(f, v)) sf.push_back(f);
    return relabel_faces(sf).complex;
}

std::vector<int> SimplicialComplex::link_vertices(int v) const {
    Vset m = 0;
    for (Vset f : link_facets_ambient(v)) m |= f;
    return vset_to_vertices(m);
}

bool SimplicialComplex::is_k_neighbourly(int k) const {
    if (k < 1 || k > dim_ + 1) throw std::invalid_argument("k out of range");
    // C(n,k) fits comfortably in 64 bits at this scale
    long long binom = 1;
    for (int i = 1; i <= k; ++i) binom = binom * (n_ - i + 1) / i;
    return static_cast<long long>(faces(k - 1).size()) == binom;
}

Graph SimplicialComplex::one_skeleton() const {
    Graph g(n_);
    for (Vset e : faces(1)) {
        auto vs = vset_to_vertices(e);
        g.add_edge(vs[0], vs[1]);
    }
    return g;
}

std::vector<int> SimplicialComplex::degree_sequence() const {
    Graph g = one_skeleton();
    std::vector<int> d;
    d.reserve(static_cast<size_t>(n_));
    for (int v = 1; v <= n_; ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
}

std::string SimplicialComplex::degree_sequence_string() const {
    std::vector<int> d = degree_sequence();
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < d.size()) {
        size_t j = i;
        while (j < d.size() && d[j] == d[i]) ++j;
        if (!first) os << ' ';
        os << d[i] << '^' << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

bool SimplicialComplex::is_connected() const {
    if (empty()) return false;
    if (n_ == 1) return true;
    // walk facet-overlap components via vertices
    Graph g(n_);
    for (Vset f : facets_) {
        auto vs = vset_to_vertices(f);
        for (size_t i = 1; i < vs.size(); ++i) g.add_edge(vs[0], vs[i]);
    }
    return g.is_connected();
}

bool SimplicialComplex::is_closed_surface() const {
    if (empty() || dim_ != 2 || !pure_) return false;
    for (Vset e : faces(1)) {
        int cof = 0;
        for (Vset t : faces(2))
            if ((t & e) == e) ++cof;
        if (cof != 2) return false;
    }
    // vertex links must be single cycles
    for (int v = 1; v <= n_; ++v) {
        std::vector<Vset> lf = link_facets_ambient(v);
        // for a pure 2-complex these are edges of the link graph
        Vset lverts = 0;
        for (Vset e : lf) lverts |= e;
        auto vs = vset_to_vertices(lverts);
        if (vs.size() < 3) return false;
        Graph lg(n_);
        for (Vset e : lf) {
            auto ev = vset_to_vertices(e);
            if (ev.size() != 2) return false;
            lg.add_edge(ev[0], ev[1]);
        }
        for (int u : vs)
            if (lg.degree(u) != 2) return false;
        if (lg.components_within(lverts) != 1) return false;
    }
    return is_connected();
}

bool SimplicialComplex::is_combinatorial_3_manifold() const {
    if (empty() || dim_ != 3 || !pure_) return false;
    for (Vset t : faces(2)) {
        int cof = 0;
        for (Vset f : facets_)
            if ((f & t) == t) ++cof;
        if (cof != 2) return false;
    }
    for (int v = 1; v <= n_; ++v) {
        SimplicialComplex lk = vertex_link(v);
        if (!lk.is_closed_surface()) return false;
        if (lk.euler_characteristic() != 2) return false;
    }
    return true;
}

bool SimplicialComplex::is_closed_pseudomanifold() const {
    if (empty() || !pure_ || dim_ < 1) return false;
    for (Vset r : faces(dim_ - 1)) {
        int cof = 0;
        for (Vset f : facets_)
            if ((f & r) == r) ++cof;
        if (cof != 2) return false;
    }
    return true;
}

bool SimplicialComplex::is_orientable() const {
    if (!is_closed_pseudomanifold())
        throw std::invalid_argument("orientability needs a closed pseudomanifold");
    // cofacet pairs per ridge
    std::map<Vset, std::vector<int>> cof;
    for (size_t i = 0; i < facets_.size(); ++i) {
        Vset f = facets_[i];
        for (int v : vset_to_vertices(f)) cof[f & ~vbit(v)].push_back(static_cast<int>(i));
    }
    // sign of the induced orientation of facet f on ridge f \ v:
    // (-1)^(position of v among the sorted vertices of f)
    auto removed_sign = [](Vset f, int v) {
        int pos = vcount(f & (vbit(v) - 1));
        return pos % 2 == 0 ? 1 : -1;
    };
    std::vector<int> orient(facets_.size(), 0);
    for (size_t seed = 0; seed < facets_.size(); ++seed) {
        if (orient[seed]) continue;
        orient[seed] = 1;
        std::vector<size_t> stack{seed};
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            Vset f = facets_[i];
            for (int v : vset_to_vertices(f)) {
                Vset r = f & ~vbit(v);
                const auto& pair = cof[r];
                size_t j = static_cast<size_t>(pair[0] == static_cast<int>(i) ? pair[1] : pair[0]);
                int w = vfirst(facets_[j] & ~r);
                // opposite induced orientations on the shared ridge
                int needed = -orient[i] * removed_sign(f, v) * removed_sign(facets_[j], w);
                if (orient[j] == 0) {
                    orient[j] = needed;
                    stack.push_back(j);
                } else if (orient[j] != needed) {
                    return false;
                }
            }
        }
    }
    return true;
}

// --- canonical labeling ----------------------------------------------------
namespace {

struct CanonSearch {
    int n;
    const std::vector<Vset>& facets;
    std::vector<Vset> adj;                  // skeleton adjacency
    std::vector<std::vector<int>> seed_key; // initial invariant per vertex

    std::vector<Vset> best;                 // minimal relabeled facet set
    bool have_best = false;
    std::vector<std::vector<int>> best_labelings;  // perms achieving best

    explicit CanonSearch(const SimplicialComplex& c)
        : n(c.vertex_count()), facets(c.facets()) {
        adj.assign(static_cast<size_t>(n), 0);
        for (Vset e : c.faces(1)) {
            auto vs = vset_to_vertices(e);
            adj[static_cast<size_t>(vs[0] - 1)] |= vbit(vs[1]);
            adj[static_cast<size_t>(vs[1] - 1)] |= vbit(vs[0]);
        }
        // invariant: skeleton degree plus facet-size histogram
        seed_key.assign(static_cast<size_t>(n), {});
        for (int v = 1; v <= n; ++v) {
            std::vector<int> key(static_cast<size_t>(n + 2), 0);
            key[0] = vcount(adj[static_cast<size_t>(v - 1)]);
            for (Vset f : facets)
                if (vin(f, v)) key[static_cast<size_t>(vcount(f))]++;
            seed_key[static_cast<size_t>(v - 1)] = std::move(key);
        }
    }

    // Split cells until equitable w.r.t. skeleton-neighbour colour counts.
    // Sub-cells are ordered by their (isomorphism-invariant) keys.
    void refine(std::vector<std::vector<int>>& cells) const {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> colour(static_cast<size_t>(n), 0);
            for (size_t ci = 0; ci < cells.size(); ++ci)
                for (int v : cells[ci]) colour[static_cast<size_t>(v - 1)] = static_cast<int>(ci);
            std::vector<std::vector<int>> next;
            for (auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                // key of v = counts of neighbours per colour
                std::vector<std::pair<std::vector<int>, int>> keyed;
                for (int v : cell) {
                    std::vector<int> key(cells.size(), 0);
                    Vset nb = adj[static_cast<size_t>(v - 1)];
                    while (nb) {
                        int u = vfirst(nb);
                        nb &= nb - 1;
                        key[static_cast<size_t>(colour[static_cast<size_t>(u - 1)])]++;
                    }
                    keyed.emplace_back(std::move(key), v);
                }
                std::stable_sort(keyed.begin(), keyed.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                std::vector<int> cur;
                for (size_t i = 0; i < keyed.size(); ++i) {
                    if (i > 0 && keyed[i].first != keyed[i - 1].first) {
                        next.push_back(cur);
                        cur.clear();
                        changed = true;
                    }
                    cur.push_back(keyed[i].second);
                }
                next.push_back(cur);
            }
            cells.swap(next);
        }
    }

    void evaluate(const std::vector<std::vector<int>>& cells) {
        // discrete partition: cells in order give new labels
        std::vector<int> new_label(static_cast<size_t>(n), 0);
        for (size_t i = 0; i < cells.size(); ++i)
            new_label[static_cast<size_t>(cells[i][0] - 1)] = static_cast<int>(i) + 1;
        std::vector<Vset> rel;
        rel.reserve(facets.size());
        for (Vset f : facets) {
            Vset m = 0;
            Vset g = f;
            while (g) {
                int v = vfirst(g);
                g &= g - 1;
                m |= vbit(new_label[static_cast<size_t>(v - 1)]);
            }
            rel.push_back(m);
        }
        std::sort(rel.begin(), rel.end());
        if (!have_best || rel < best) {
            best = rel;
            have_best = true;
            best_labelings.clear();
            best_labelings.push_back(new_label);
        } else if (rel == best) {
            best_labelings.push_back(new_label);
        }
    }

    void search(std::vector<std::vector<int>> cells) {
        refine(cells);
        size_t target = cells.size();
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = i;
                break;
            }
        if (target == cells.size()) {
            evaluate(cells);
            return;
        }
        for (int v : cells[target]) {
            std::vector<std::vector<int>> split;
            for (size_t i = 0; i < cells.size(); ++i) {
                if (i == target) {
                    split.push_back({v});
                    std::vector<int> rest;
                    for (int u : cells[i])
                        if (u != v) rest.push_back(u);
                    split.push_back(rest);
                } else {
                    split.push_back(cells[i]);
                }
            }
            search(std::move(split));
        }
    }

    void run() {
        // initial cells grouped by seed key
        std::vector<std::pair<std::vector<int>, int>> keyed;
        for (int v = 1; v <= n; ++v) keyed.emplace_back(seed_key[static_cast<size_t>(v - 1)], v);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::vector<int>> cells;
        for (size_t i = 0; i < keyed.size(); ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first) cells.push_back({});
            cells.back().push_back(keyed[i].second);
        }
        search(std::move(cells));
    }
};

std::string serialize_facets(int n, const std::vector<Vset>& facets) {
    std::ostringstream os;
    os << n << ':';
    for (size_t i = 0; i < facets.size(); ++i) {
        if (i) os << ';';
        auto vs = vset_to_vertices(facets[i]);
        for (size_t j = 0; j < vs.size(); ++j) {
            if (j) os << ',';
            os << vs[j];
        }
    }
    return os.str();
}

}  // namespace

std::string SimplicialComplex::canonical_signature() const {
    if (empty()) return "0:";
    CanonSearch cs(*this);
    cs.run();
    return serialize_facets(n_, cs.best);
}

SimplicialComplex SimplicialComplex::canonical_form() const {
    if (empty()) return SimplicialComplex();
    CanonSearch cs(*this);
    cs.run();
    return from_facet_masks(n_, cs.best);
}

std::vector<std::vector<int>> SimplicialComplex::automorphisms() const {
    if (empty()) return {};
    CanonSearch cs(*this);
    cs.run();
    // automorphisms = l0^{-1} composed with each minimal labeling
    const auto& l0 = cs.best_labelings.front();
    std::vector<int> inv0(static_cast<size_t>(n_) + 1, 0);
    for (int v = 1; v <= n_; ++v) inv0[static_cast<size_t>(l0[static_cast<size_t>(v - 1)])] = v;
    std::vector<std::vector<int>> auts;
    auts.reserve(cs.best_labelings.size());
    for (const auto& l : cs.best_labelings) {
        std::vector<int> perm(static_cast<size_t>(n_), 0);
        for (int v = 1; v <= n_; ++v)
            perm[static_cast<size_t>(v - 1)] = inv0[static_cast<size_t>(l[static_cast<size_t>(v - 1)])];
        auts.push_back(std::move(perm));
    }
    return auts;
}

// --- text formats ------------------------------------------------------------

std::vector<std::vector<int>> parse_facet_lines(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<int> facet;
        long long v;
        while (ls >> v) {
            if (v <= 0 || v > 1000000000) throw std::invalid_argument("bad vertex label");
            facet.push_back(static_cast<int>(v));
        }
        if (!ls.eof()) throw std::invalid_argument("non-integer token in facet file");
        if (!facet.empty()) out.push_back(std::move(facet));
    }
    return out;
}

SimplicialComplex load_facet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return SimplicialComplex::from_facets(parse_facet_lines(ss.str()));
}

std::string facet_list_to_string(const SimplicialComplex& c) {
    std::ostringstream os;
    for (Vset f : c.facets()) {
        auto vs = vset_to_vertices(f);
        for (size_t j = 0; j < vs.size(); ++j) {
            if (j) os << ' ';
            os << vs[j];
        }
        os << '\n';
    }
    return os.str();
}

SimplicialComplex complex_from_signature(const std::string& sig) {
    auto colon = sig.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad signature");
    int n = std::stoi(sig.substr(0, colon));
    if (n == 0) return SimplicialComplex();
    std::vector<std::vector<int>> facets;
    std::istringstream fs(sig.substr(colon + 1));
    std::string tok;
    while (std::getline(fs, tok, ';')) {
        std::vector<int> f;
        std::istringstream vs(tok);
        std::string v;
        while (std::getline(vs, v, ',')) f.push_back(std::stoi(v));
        facets.push_back(std::move(f));
    }
    SimplicialComplex c = SimplicialComplex::from_facets(facets);
    if (c.vertex_count() != n) throw std::invalid_argument("signature vertex count mismatch");
    return c;
}

std::string serialize_complex(const SimplicialComplex& c) {
    return serialize_facets(c.vertex_count(), c.facets());
}

SimplicialComplex boundary_of_simplex(int d) {
    std::vector<Vset> facets;
    Vset all = full_vset(d + 1);
    for (int v = 1; v <= d + 1; ++v) facets.push_back(all & ~vbit(v));
    return SimplicialComplex::from_facet_masks(d + 1, std::move(facets));
}

}  // namespace tcm
