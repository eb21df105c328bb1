#include "tcm/bounds.hpp"

#include <omp.h>

#include <atomic>
#include <stdexcept>

namespace tcm {

Rat pochhammer(const Rat& a, unsigned m) {
    Rat r = 1;
    Rat t = a;
    for (unsigned i = 0; i < m; ++i) {
        r *= t;
        t += 1;
    }
    return r;
}

Int pochhammer_int(long a, unsigned m) {
    Int r = 1;
    for (unsigned i = 0; i < m; ++i) r *= Int(a + static_cast<long>(i));
    return r;
}

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rat tightness_bound_rational(int ell, long n, long k) {
    if (ell < 1) throw std::invalid_argument("ell must be positive");
    if (n < 2 * ell + 3) throw std::invalid_argument("n below the simplex-boundary minimum");
    unsigned m = static_cast<unsigned>(ell + 1);
    Int num = pochhammer_int(1 - k, m) * pochhammer_int(1 - n + k, m);
    Int den = factorial(m) * pochhammer_int(1 - n, m);
    Rat q = make_rat(num, den);
    if (ell % 2 == 1) return q;  // (-1)^(ell+1) = +1
    return -q;
}

Int tightness_bound(int ell, long n) {
    return ceil_rat(tightness_bound_rational(ell, n, n / 2));
}

long max_vertices(int ell, const Int& beta) {
    long n = 2 * ell + 3;
    while (tightness_bound(ell, n + 1) <= beta) ++n;
    return n;
}

BoundTable bound_table(int ell_max, int beta_max) {
    BoundTable t;
    t.ell_max = ell_max;
    t.beta_max = beta_max;
    t.n_max.assign(static_cast<size_t>(beta_max + 1), std::vector<long>(static_cast<size_t>(ell_max), 0));
    for (int beta = 0; beta <= beta_max; ++beta)
        for (int ell = 1; ell <= ell_max; ++ell)
            t.n_max[static_cast<size_t>(beta)][static_cast<size_t>(ell - 1)] = max_vertices(ell, beta);
    return t;
}

std::string bound_table_tsv(const BoundTable& t, bool ditto) {
    std::string out = "beta";
    for (int ell = 1; ell <= t.ell_max; ++ell) out += "\td=" + std::to_string(2 * ell + 1);
    out += '\n';
    for (int beta = 0; beta <= t.beta_max; ++beta) {
        out += std::to_string(beta);
        for (int ell = 1; ell <= t.ell_max; ++ell) {
            long v = t.n_max[static_cast<size_t>(beta)][static_cast<size_t>(ell - 1)];
            bool same = ditto && beta > 0 &&
                        t.n_max[static_cast<size_t>(beta - 1)][static_cast<size_t>(ell - 1)] == v;
            out += '\t';
            out += same ? "\"" : std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

const std::vector<long>& three_manifold_lower_bounds() {
    static const std::vector<long> kLower = {5, 9, 11, 13, 14, 15, 16, 17, 18, 18, 19, 20, 20};
    return kLower;
}

FVector cyclic_fvector(int ell, int n) {
    if (n < 2 * ell + 3) throw std::invalid_argument("n below the simplex-boundary minimum");
    int d = 2 * ell + 1;  // dimension of the boundary complex
    FVector f(static_cast<size_t>(d + 1));
    for (int i = 1; i <= d + 1; ++i) {
        Int s = 0;
        for (int j = 0; j <= ell + 1; ++j)
            s += binomial(n - j - 1, i - j) * binomial(n - i, 2 * j - i);
        Rat v = make_rat(Int(n) * s, Int(n - i));
        if (v.get_den() != 1) throw std::logic_error("cyclic f-vector entry not integral");
        f[static_cast<size_t>(i - 1)] = static_cast<long long>(v.get_num().get_si());
    }
    return f;
}

SimplicialComplex gale_cyclic_boundary(int d_even, int n) {
    if (d_even < 2 || d_even % 2 != 0) throw std::invalid_argument("even polytope dimension required");
    if (n < d_even + 1) throw std::invalid_argument("too few vertices");
    // S (|S| = d) is a facet iff every two elements not in S are separated by
    // an even number of elements of S.
    std::vector<Vset> facets;
    std::vector<int> comb(static_cast<size_t>(d_even));
    for (int i = 0; i < d_even; ++i) comb[static_cast<size_t>(i)] = i + 1;
    auto is_facet = [&](Vset S) {
        // scan 1..n, counting the S-run between consecutive non-elements;
        // runs before the first and after the last non-element do not matter
        int count = 0;
        bool started = false;
        for (int v = 1; v <= n; ++v) {
            if (vin(S, v)) {
                if (started) ++count;
            } else {
                if (started && count % 2 != 0) return false;
                started = true;
                count = 0;
            }
        }
        return true;
    };
    // iterate all d-subsets of 1..n
    while (true) {
        Vset S = 0;
        for (int i = 0; i < d_even; ++i) S |= vbit(comb[static_cast<size_t>(i)]);
        if (is_facet(S)) facets.push_back(S);
        int i = d_even - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] == n - (d_even - 1 - i)) --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < d_even; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
    return SimplicialComplex::from_facet_masks(n, std::move(facets));
}

Rat avg_f_formula(const FVector& f, int n, int k, int i) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("k out of range");
    Int fi1 = (i + 1 < static_cast<int>(f.size())) ? Int(static_cast<long>(f[static_cast<size_t>(i + 1)])) : Int(0);
    Rat frac = make_rat(binomial(k, i + 2) + binomial(n - k, i + 2), binomial(n, i + 2));
    return Rat(fi1) * (Rat(1) - frac);
}

Rat avg_chi_formula(const FVector& f, int n, int k) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("k out of range");
    Rat chi = 0;
    for (int i = 0; i < static_cast<int>(f.size()); ++i) {
        Rat term = make_rat(Int(static_cast<long>(f[static_cast<size_t>(i)])) *
                                (binomial(k, i + 1) + binomial(n - k, i + 1)),
                            binomial(n, i + 1));
        chi += (i % 2 == 0) ? term : -term;
    }
    return chi;
}

Rat s_term(long i, long j, long k, long n) {
    if (j > i || i > 2 * j) return 0;
    Int a = binomial(k, i);
    Int b = binomial(n - j - 1, i - j);
    Int c = binomial(n - i, 2 * j - i);
    if (a == 0 || b == 0 || c == 0) return 0;
    Int den = binomial(n - 1, i);  // nonzero here: i <= n-1 forced by b != 0
    Rat q = make_rat(a * b * c, den);
    return (i % 2 == 0) ? q : -q;
}

bool verify_identity_row(long j, long k, long n) {
    // the sum runs over j <= i <= 2j, so n-1 must reach 2j for the inverse
    // binomial in s to stay meaningful
    if (n < 2 * j + 1) throw std::invalid_argument("row identity needs n >= 2j+1");
    Rat lhs = 0;
    for (long i = 0; i <= 2 * j; ++i) lhs += s_term(i, j, k, n);
    Int num = binomial(k, j) * binomial(n - k, j);
    Rat rhs = 0;
    if (num != 0) {
        rhs = make_rat(num, binomial(n - 1, j));
        if (j % 2 != 0) rhs = -rhs;
    }
    return lhs == rhs;
}

bool verify_identity_col(long i, long k, long n) {
    if (i > n - 1) throw std::invalid_argument("column identity needs i <= n-1");
    Rat lhs = 0;
    for (long j = 0; j <= i; ++j) lhs += s_term(i, j, k, n);
    Rat rhs = Rat(binomial(k, i));
    if (i % 2 != 0) rhs = -rhs;
    return lhs == rhs;
}

bool verify_double_sum(int ell, long k, long n) {
    // every row of the box must be in-domain, which is n >= 2(ell+1)+1
    if (n < 2 * ell + 3) throw std::invalid_argument("double sum needs n >= 2*ell+3");
    Rat lhs = 0;
    for (long i = 0; i <= 2 * ell + 2; ++i)
        for (long j = 0; j <= ell + 1; ++j) lhs += s_term(i, j, k, n);
    unsigned m = static_cast<unsigned>(ell + 1);
    Rat rhs = make_rat(pochhammer_int(1 - k, m) * pochhammer_int(1 - n + k, m),
                       factorial(m) * pochhammer_int(1 - n, m));
    return lhs == rhs;
}

bool verify_chu_vandermonde_instance(long i, long k, long n) {
    Int lhs = 0;
    for (long j = 1; j <= i + 1; ++j) lhs += binomial(k, j) * binomial(n - k, i + 2 - j);
    Int rhs = binomial(n, i + 2) - binomial(k, i + 2) - binomial(n - k, i + 2);
    return lhs == rhs;
}

bool verify_facecount_identity(long i, long n) {
    Int lhs = 0;
    for (long j = 0; j <= i; ++j) lhs += binomial(n - j - 1, i - j) * binomial(n - i, 2 * j - i);
    return lhs == binomial(n - 1, i);
}

bool run_identity_sweeps(int ell_max, long n_max) {
    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic)
    for (long n = 2; n <= n_max; ++n) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        bool good = true;
        for (long k = 0; k <= n && good; ++k) {
            for (int ell = 1; ell <= ell_max && good; ++ell) {
                for (long j = 0; j <= ell + 1 && good; ++j)
                    if (n >= 2 * j + 1) good = verify_identity_row(j, k, n);
                for (long i = 0; i <= 2 * ell + 2 && good; ++i)
                    if (i <= n - 1) good = verify_identity_col(i, k, n);
                if (good && n >= 2 * ell + 3) good = verify_double_sum(ell, k, n);
                for (long i = 0; i <= ell + 1 && good; ++i) good = verify_facecount_identity(i, n);
            }
            if (good && n <= 20)
                for (long i = 0; i <= n && good; ++i) good = verify_chu_vandermonde_instance(i, k, n);
        }
        if (!good) ok.store(false, std::memory_order_relaxed);
    }
    return ok.load();
}

}  // namespace tcm
