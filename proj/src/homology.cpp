#include "tcm/homology.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>

namespace tcm {

namespace {

// --- GF(2): rows packed into 64-bit blocks ---------------------------------

struct Gf2Row {
    std::vector<std::uint64_t> w;
    explicit Gf2Row(int ncols = 0) : w(static_cast<size_t>((ncols + 63) / 64), 0) {}
    void set(int i) { w[static_cast<size_t>(i) / 64] ^= (std::uint64_t{1} << (i % 64)); }
    bool zero() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    int leading() const {
        for (size_t b = 0; b < w.size(); ++b)
            if (w[b]) return static_cast<int>(b * 64) + std::countr_zero(w[b]);
        return -1;
    }
    void add(const Gf2Row& o) {
        for (size_t b = 0; b < w.size(); ++b) w[b] ^= o.w[b];
    }
    bool get(int i) const { return (w[static_cast<size_t>(i) / 64] >> (i % 64)) & 1; }
};

// Incremental row space over GF(2): insert rows, count independent ones.
struct Gf2Space {
    int ncols;
    std::vector<Gf2Row> rows;    // reduced rows, one pivot each
    std::vector<int> pivots;
    explicit Gf2Space(int nc) : ncols(nc) {}
    // Reduce v against the space; if nonzero, keep it and return true.
    bool insert(Gf2Row v) {
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) v.add(rows[i]);
        int lead = v.leading();
        if (lead < 0) return false;
        rows.push_back(std::move(v));
        pivots.push_back(lead);
        return true;
    }
    int rank() const { return static_cast<int>(rows.size()); }
};

// --- GF(p), small odd primes: plain int rows --------------------------------

struct GfpSpace {
    int p, ncols;
    std::vector<std::vector<int>> rows;
    std::vector<int> pivots;
    GfpSpace(int p_, int nc) : p(p_), ncols(nc) {}
    static int inv_mod(int a, int p) {
        int r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    bool insert(std::vector<int> v) {
        for (size_t i = 0; i < rows.size(); ++i) {
            int c = v[static_cast<size_t>(pivots[i])];
            if (c) {
                for (int j = 0; j < ncols; ++j)
                    v[static_cast<size_t>(j)] = (v[static_cast<size_t>(j)] + (p - c) * rows[i][static_cast<size_t>(j)]) % p;
            }
        }
        int lead = -1;
        for (int j = 0; j < ncols; ++j)
            if (v[static_cast<size_t>(j)]) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        int s = inv_mod(v[static_cast<size_t>(lead)], p);
        for (int j = 0; j < ncols; ++j) v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] * s % p;
        rows.push_back(std::move(v));
        pivots.push_back(lead);
        return true;
    }
    int rank() const { return static_cast<int>(rows.size()); }
};

int face_index(const std::vector<Vset>& sorted, Vset f) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), f) - sorted.begin());
}

// rank of the boundary map d_k : C_k -> C_{k-1} given the two face lists
int boundary_rank(const std::vector<Vset>& kfaces, const std::vector<Vset>& km1, int p) {
    if (kfaces.empty() || km1.empty()) return 0;
    int nc = static_cast<int>(km1.size());
    if (p == 2) {
        Gf2Space sp(nc);
        for (Vset f : kfaces) {
            Gf2Row row(nc);
            Vset g = f;
            while (g) {
                int v = vfirst(g);
                g &= g - 1;
                row.set(face_index(km1, f & ~vbit(v)));
            }
            sp.insert(std::move(row));
        }
        return sp.rank();
    }
    GfpSpace sp(p, nc);
    for (Vset f : kfaces) {
        std::vector<int> row(static_cast<size_t>(nc), 0);
        int pos = 0;
        Vset g = f;
        while (g) {
            int v = vfirst(g);
            g &= g - 1;
            int sign = (pos % 2 == 0) ? 1 : p - 1;
            row[static_cast<size_t>(face_index(km1, f & ~vbit(v)))] = sign;
            ++pos;
        }
        sp.insert(std::move(row));
    }
    return sp.rank();
}

std::vector<int> betti_of_faces(const std::vector<std::vector<Vset>>& faces, int p) {
    int dim = static_cast<int>(faces.size()) - 1;
    while (dim >= 0 && faces[static_cast<size_t>(dim)].empty()) --dim;
    std::vector<int> b(static_cast<size_t>(std::max(dim + 1, 0)), 0);
    static const std::vector<Vset> kEmpty;
    for (int k = 0; k <= dim; ++k) {
        const auto& fk = faces[static_cast<size_t>(k)];
        const auto& fkm1 = k > 0 ? faces[static_cast<size_t>(k - 1)] : kEmpty;
        const auto& fkp1 = k + 1 <= dim ? faces[static_cast<size_t>(k + 1)] : kEmpty;
        int rk = boundary_rank(fk, fkm1, p);
        int rk1 = boundary_rank(fkp1, fk, p);
        b[static_cast<size_t>(k)] = static_cast<int>(fk.size()) - rk - rk1;
    }
    return b;
}

std::vector<std::vector<Vset>> faces_of(const SimplicialComplex& c) {
    std::vector<std::vector<Vset>> fs;
    for (int d = 0; d <= c.dimension(); ++d) fs.push_back(c.faces(d));
    return fs;
}

// Faces of c supported inside W, by dimension.
std::vector<std::vector<Vset>> faces_within(const SimplicialComplex& c, Vset W) {
    std::vector<std::vector<Vset>> fs(static_cast<size_t>(c.dimension() + 1));
    for (int d = 0; d <= c.dimension(); ++d)
        for (Vset f : c.faces(d))
            if ((f & W) == f) fs[static_cast<size_t>(d)].push_back(f);
    return fs;
}

// Kernel basis of d_k over F_p for the face lists given (columns = kfaces).
// Each kernel vector is returned as coefficients indexed like kfaces.
template <class Insert>
void kernel_basis(const std::vector<Vset>& kfaces, const std::vector<Vset>& km1, int p,
                  Insert&& emit) {
    int nc = static_cast<int>(kfaces.size());
    if (nc == 0) return;
    int nr = static_cast<int>(km1.size());
    // dense column-major elimination with transformation bookkeeping:
    // reduce the matrix rowwise; free columns yield kernel vectors
    std::vector<std::vector<int>> a(static_cast<size_t>(nr), std::vector<int>(static_cast<size_t>(nc), 0));
    for (int j = 0; j < nc; ++j) {
        Vset f = kfaces[static_cast<size_t>(j)];
        int pos = 0;
        Vset g = f;
        while (g) {
            int v = vfirst(g);
            g &= g - 1;
            int sign = (pos % 2 == 0) ? 1 : p - 1;
            if (nr) a[static_cast<size_t>(face_index(km1, f & ~vbit(v)))][static_cast<size_t>(j)] = sign;
            ++pos;
        }
    }
    // row-reduce to RREF
    std::vector<int> pivot_col;
    int r = 0;
    for (int j = 0; j < nc && r < nr; ++j) {
        int sel = -1;
        for (int i = r; i < nr; ++i)
            if (a[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[static_cast<size_t>(sel)], a[static_cast<size_t>(r)]);
        int s = GfpSpace::inv_mod(a[static_cast<size_t>(r)][static_cast<size_t>(j)], p);
        for (int jj = j; jj < nc; ++jj)
            a[static_cast<size_t>(r)][static_cast<size_t>(jj)] = a[static_cast<size_t>(r)][static_cast<size_t>(jj)] * s % p;
        for (int i = 0; i < nr; ++i) {
            if (i == r) continue;
            int c = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!c) continue;
            for (int jj = j; jj < nc; ++jj)
                a[static_cast<size_t>(i)][static_cast<size_t>(jj)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(jj)] + (p - c) * a[static_cast<size_t>(r)][static_cast<size_t>(jj)]) % p;
        }
        pivot_col.push_back(j);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(nc), false);
    for (int j : pivot_col) is_pivot[static_cast<size_t>(j)] = true;
    for (int j = 0; j < nc; ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        std::vector<int> x(static_cast<size_t>(nc), 0);
        x[static_cast<size_t>(j)] = 1;
        for (int i = 0; i < r; ++i) {
            int pc = pivot_col[static_cast<size_t>(i)];
            int v = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v) x[static_cast<size_t>(pc)] = (p - v) % p;
        }
        emit(x);
    }
}

}  // namespace

std::vector<int> reduced_betti_of_faces(const std::vector<std::vector<Vset>>& faces_by_dim,
                                        PrimeField f) {
    bool nonempty = false;
    for (const auto& fs : faces_by_dim)
        if (!fs.empty()) nonempty = true;
    if (!nonempty) return {-1};
    std::vector<int> b = betti_of_faces(faces_by_dim, f.p);
    if (!b.empty()) b[0] -= 1;
    return b;
}

BettiVector betti(const SimplicialComplex& c, PrimeField f) {
    BettiVector out;
    out.reduced = false;
    if (c.empty()) return out;
    out.b = betti_of_faces(faces_of(c), f.p);
    return out;
}

BettiVector reduced_betti(const SimplicialComplex& c, PrimeField f) {
    BettiVector out;
    out.reduced = true;
    if (c.empty()) {
        out.b = {-1};
        return out;
    }
    out.b = betti_of_faces(faces_of(c), f.p);
    out.b[0] -= 1;
    return out;
}

namespace {

// Cached data for the exhaustive subset sweep of one complex.
struct TightnessContext {
    const SimplicialComplex& c;
    int p;
    // echelon basis of the image of d_{k+1} over all of c, per k
    std::vector<Gf2Space> big2;
    std::vector<GfpSpace> bigp;

    TightnessContext(const SimplicialComplex& c_, int p_) : c(c_), p(p_) {
        for (int k = 0; k <= c.dimension(); ++k) {
            const auto& fk = c.faces(k);
            const auto& fk1 = c.faces(k + 1);
            if (p == 2) {
                Gf2Space sp(static_cast<int>(fk.size()));
                for (Vset f : fk1) {
                    Gf2Row row(static_cast<int>(fk.size()));
                    Vset g = f;
                    while (g) {
                        int v = vfirst(g);
                        g &= g - 1;
                        row.set(face_index(fk, f & ~vbit(v)));
                    }
                    sp.insert(std::move(row));
                }
                big2.push_back(std::move(sp));
            } else {
                GfpSpace sp(p, static_cast<int>(fk.size()));
                for (Vset f : fk1) {
                    std::vector<int> row(fk.size(), 0);
                    int pos = 0;
                    Vset g = f;
                    while (g) {
                        int v = vfirst(g);
                        g &= g - 1;
                        row[static_cast<size_t>(face_index(fk, f & ~vbit(v)))] = (pos % 2 == 0) ? 1 : p - 1;
                        ++pos;
                    }
                    sp.insert(std::move(row));
                }
                bigp.push_back(std::move(sp));
            }
        }
    }

    // injectivity of H_k(c[W]) -> H_k(c) by rank arithmetic
    bool injective(Vset W, int k) const {
        const auto& fk = c.faces(k);
        std::vector<Vset> Wk, Wkm1, Wkp1;
        for (Vset f : fk)
            if ((f & W) == f) Wk.push_back(f);
        if (Wk.empty()) return true;  // H_k(c[W]) = 0
        for (Vset f : c.faces(k - 1))
            if ((f & W) == f) Wkm1.push_back(f);
        for (Vset f : c.faces(k + 1))
            if ((f & W) == f) Wkp1.push_back(f);
        int rank_dW = boundary_rank(Wkp1, Wk, p);
        int dimZ = static_cast<int>(Wk.size()) - boundary_rank(Wk, Wkm1, p);
        int beta_w = dimZ - rank_dW;
        if (beta_w == 0) return true;
        // count kernel vectors of d_k^W independent modulo the boundaries of c
        int extra = 0;
        if (p == 2) {
            Gf2Space sp = big2[static_cast<size_t>(k)];
            kernel_basis(Wk, Wkm1, 2, [&](const std::vector<int>& x) {
                Gf2Row row(static_cast<int>(fk.size()));
                for (size_t j = 0; j < Wk.size(); ++j)
                    if (x[j]) row.set(face_index(fk, Wk[j]));
                if (sp.insert(std::move(row))) ++extra;
            });
        } else {
            GfpSpace sp = bigp[static_cast<size_t>(k)];
            kernel_basis(Wk, Wkm1, p, [&](const std::vector<int>& x) {
                std::vector<int> row(fk.size(), 0);
                for (size_t j = 0; j < Wk.size(); ++j)
                    if (x[j]) row[static_cast<size_t>(face_index(fk, Wk[j]))] = x[j];
                if (sp.insert(std::move(row))) ++extra;
            });
        }
        return extra == beta_w;
    }

    bool all_injective(Vset W) const {
        for (int k = 0; k <= c.dimension(); ++k)
            if (!injective(W, k)) return false;
        return true;
    }
};

bool tight_exhaustive_impl(const SimplicialComplex& c, PrimeField f, bool parallel) {
    if (!c.is_connected()) throw std::invalid_argument("tightness needs a connected complex");
    TightnessContext ctx(c, f.p);
    int n = c.vertex_count();
    // subsets grouped by cardinality: small ones fail fastest
    std::vector<Vset> order;
    order.reserve((size_t{1} << n));
    for (int card = 1; card < n; ++card)
        for (Vset W = 0; W < (Vset{1} << n); ++W)
            if (vcount(W) == card) order.push_back(W);
    std::atomic<bool> ok{true};
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < static_cast<long long>(order.size()); ++i) {
            if (!ok.load(std::memory_order_relaxed)) continue;
            if (!ctx.all_injective(order[static_cast<size_t>(i)]))
                ok.store(false, std::memory_order_relaxed);
        }
        return ok.load();
    }
    for (Vset W : order)
        if (!ctx.all_injective(W)) return false;
    return true;
}

}  // namespace

bool induced_map_injective(const SimplicialComplex& c, Vset W, int k, PrimeField f) {
    if (k < 0 || k > c.dimension()) throw std::invalid_argument("k outside 0..dim");
    if ((W & ~c.vertex_set()) != 0) throw std::invalid_argument("W not a vertex subset");
    TightnessContext ctx(c, f.p);
    return ctx.injective(W, k);
}

bool is_tight_exhaustive(const SimplicialComplex& c, PrimeField f) {
    return tight_exhaustive_impl(c, f, true);
}

bool is_tight_exhaustive_serial(const SimplicialComplex& c, PrimeField f) {
    return tight_exhaustive_impl(c, f, false);
}

}  // namespace tcm
