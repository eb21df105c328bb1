#include "tcm/sphere_enum.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tcm {

std::vector<int> link_cycle(const SimplicialComplex& sphere, int v) {
    // link edges of v are the opposite edges of the triangles at v
    std::vector<Vset> ledges;
    for (Vset t : sphere.facets())
        if (vin(t, v)) ledges.push_back(t & ~vbit(v));
    Vset lverts = 0;
    for (Vset e : ledges) lverts |= e;
    auto verts = vset_to_vertices(lverts);
    std::vector<Vset> nb(65, 0);
    for (Vset e : ledges) {
        auto ev = vset_to_vertices(e);
        nb[static_cast<size_t>(ev[0])] |= vbit(ev[1]);
        nb[static_cast<size_t>(ev[1])] |= vbit(ev[0]);
    }
    std::vector<int> cycle;
    int start = verts[0];
    int prev = 0, cur = start;
    do {
        cycle.push_back(cur);
        Vset next = nb[static_cast<size_t>(cur)] & ~(prev ? vbit(prev) : 0);
        prev = cur;
        cur = vfirst(next);
    } while (cur != start);
    if (cycle.size() != verts.size()) throw std::logic_error("vertex link is not a single cycle");
    return cycle;
}

std::vector<SimplicialComplex> vertex_splits(const SimplicialComplex& sphere) {
    int n = sphere.vertex_count();
    int nv = n + 1;  // the new vertex
    std::vector<SimplicialComplex> children;
    for (int v = 1; v <= n; ++v) {
        std::vector<int> cycle = link_cycle(sphere, v);
        int deg = static_cast<int>(cycle.size());
        for (int a = 0; a < deg; ++a) {
            for (int b = a + 1; b < deg; ++b) {
                // v keeps the arc cycle[a..b]; the new vertex takes cycle[b..a]
                std::vector<Vset> facets;
                for (Vset t : sphere.facets())
                    if (!vin(t, v)) facets.push_back(t);
                for (int i = a; i < b; ++i)
                    facets.push_back(vbit(v) | vbit(cycle[static_cast<size_t>(i)]) |
                                     vbit(cycle[static_cast<size_t>(i + 1)]));
                for (int i = b; i != a; i = (i + 1) % deg) {
                    int j = (i + 1) % deg;
                    facets.push_back(vbit(nv) | vbit(cycle[static_cast<size_t>(i)]) |
                                     vbit(cycle[static_cast<size_t>(j)]));
                }
                facets.push_back(vbit(v) | vbit(nv) | vbit(cycle[static_cast<size_t>(a)]));
                facets.push_back(vbit(v) | vbit(nv) | vbit(cycle[static_cast<size_t>(b)]));
                children.push_back(SimplicialComplex::from_facet_masks(nv, std::move(facets)));
            }
        }
    }
    return children;
}

namespace {

SphereRecord make_record(SimplicialComplex canonical, std::string signature) {
    SphereRecord r;
    r.degree_sequence = canonical.degree_sequence();
    r.stacked = is_stacked(canonical);
    r.signature = std::move(signature);
    r.complex = std::move(canonical);
    return r;
}

SphereCatalog enumerate_impl(int n, int cap, bool parallel) {
    if (n < 4) throw std::invalid_argument("2-spheres need at least 4 vertices");
    if (n > cap) throw CapExceeded("sphere enumeration capped at " + std::to_string(cap) + " vertices");

    std::vector<SimplicialComplex> level{boundary_of_simplex(3)};
    for (int m = 4; m < n; ++m) {
        std::map<std::string, SimplicialComplex> next;  // signature -> canonical child
        std::mutex mu;
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (long long i = 0; i < static_cast<long long>(level.size()); ++i) {
            for (SimplicialComplex& child : vertex_splits(level[static_cast<size_t>(i)])) {
                SimplicialComplex canon = child.canonical_form();
                std::string sig = serialize_complex(canon);
                std::lock_guard<std::mutex> lock(mu);
                next.emplace(std::move(sig), std::move(canon));
            }
        }
        level.clear();
        level.reserve(next.size());
        for (auto& [sig, c] : next) level.push_back(std::move(c));
    }

    SphereCatalog cat;
    cat.n = n;
    cat.records.reserve(level.size());
    for (auto& c : level) {
        SimplicialComplex canon = (n == 4) ? c.canonical_form() : std::move(c);
        std::string sig = serialize_complex(canon);
        cat.records.push_back(make_record(std::move(canon), std::move(sig)));
    }
    std::sort(cat.records.begin(), cat.records.end(),
              [](const SphereRecord& a, const SphereRecord& b) { return a.signature < b.signature; });
    return cat;
}

}  // namespace

SphereCatalog enumerate_spheres(int n, int cap) { return enumerate_impl(n, cap, true); }
SphereCatalog enumerate_spheres_serial(int n, int cap) { return enumerate_impl(n, cap, false); }

bool is_stacked(const SimplicialComplex& sphere) {
    if (!sphere.is_closed_surface() || sphere.euler_characteristic() != 2) return false;
    std::vector<Vset> tris = sphere.facets();
    const int labels = sphere.vertex_count();  // labels stay fixed; some retire
    int n = labels;
    while (n > 4) {
        // find a vertex lying in exactly three triangles
        int pick = 0;
        Vset neighbours = 0;
        for (int v = 1; v <= labels; ++v) {
            int cnt = 0;
            Vset nb = 0;
            for (Vset t : tris)
                if (vin(t, v)) {
                    ++cnt;
                    nb |= t & ~vbit(v);
                }
            if (cnt == 3 && vcount(nb) == 3) {
                pick = v;
                neighbours = nb;
                break;
            }
        }
        if (pick == 0) return false;
        std::vector<Vset> next;
        for (Vset t : tris)
            if (!vin(t, pick)) next.push_back(t);
        next.push_back(neighbours);
        tris = std::move(next);
        --n;
    }
    return true;
}

void save_catalog(const SphereCatalog& cat, const std::string& path) {
    std::ostringstream os;
    os << "spheres n=" << cat.n << " count=" << cat.records.size() << '\n';
    for (const auto& r : cat.records) {
        os << r.signature << '\t';
        const auto& fs = r.complex.facets();
        for (size_t i = 0; i < fs.size(); ++i) {
            if (i) os << ';';
            auto vs = vset_to_vertices(fs[i]);
            for (size_t j = 0; j < vs.size(); ++j) {
                if (j) os << ',';
                os << vs[j];
            }
        }
        os << '\n';
    }
    // write whole file at once so partial output never lands on disk
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << os.str();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move catalog into place: " + path);
}

SphereCatalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string header;
    std::getline(in, header);
    int n = 0;
    size_t count = 0;
    if (std::sscanf(header.c_str(), "spheres n=%d count=%zu", &n, &count) != 2)
        throw std::invalid_argument("bad catalog header");
    SphereCatalog cat;
    cat.n = n;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("bad catalog line");
        std::string sig = line.substr(0, tab);
        std::vector<std::vector<int>> facets;
        std::istringstream fs(line.substr(tab + 1));
        std::string tok;
        while (std::getline(fs, tok, ';')) {
            std::vector<int> f;
            std::istringstream vs(tok);
            std::string v;
            while (std::getline(vs, v, ',')) f.push_back(std::stoi(v));
            facets.push_back(std::move(f));
        }
        SimplicialComplex c = SimplicialComplex::from_facets(facets);
        if (c.canonical_signature() != sig)
            throw std::invalid_argument("catalog record does not match its signature");
        cat.records.push_back(make_record(std::move(c), std::move(sig)));
    }
    if (cat.records.size() != count) throw std::invalid_argument("catalog count mismatch");
    return cat;
}

}  // namespace tcm
