#pragma once

#include <string>
#include <vector>

#include "tcm/rational.hpp"
#include "tcm/simplicial_complex.hpp"

namespace tcm {

// Rising factorial a(a+1)...(a+m-1); empty product for m=0.
Rat pochhammer(const Rat& a, unsigned m);
Int pochhammer_int(long a, unsigned m);
Int factorial(unsigned n);

// Binomial with the vanishing convention: 0 whenever k < 0, n < 0 or k > n.
// This is what makes the double sums below safe over ambient index boxes.
Int binomial(long n, long k);

// Least beta_l that a tight (l-1)-connected (2l+1)-manifold on n vertices
// can have: ceil of (-1)^(l+1) (1-floor(n/2))_(l+1) (1-ceil(n/2))_(l+1)
//                  / ((l+1)! (1-n)_(l+1)).
// Requires n >= 2l+3.
Int tightness_bound(int ell, long n);
// The same quantity before the ceiling, for a single bipartition size k;
// k = floor(n/2) is the most restrictive case and is what the bound uses.
Rat tightness_bound_rational(int ell, long n, long k);

// Largest n with tightness_bound(ell, n) <= beta.
long max_vertices(int ell, const Int& beta);

struct BoundTable {
    int ell_max = 0, beta_max = 0;
    // n_max[beta][ell-1]
    std::vector<std::vector<long>> n_max;
};
BoundTable bound_table(int ell_max, int beta_max);
// TSV with header row; ditto=true collapses repeated column values to '"'.
std::string bound_table_tsv(const BoundTable& t, bool ditto = false);

// Vertex-count lower bounds for combinatorial three-manifolds with first
// Betti number 0..12, from the f-vector lower-bound literature. Shipped as
// reference data, not computed here.
const std::vector<long>& three_manifold_lower_bounds();

// f-vector (f_0..f_{2l+1}) of the boundary of the cyclic (2l+2)-polytope on
// n vertices, by the explicit double-binomial formula.
FVector cyclic_fvector(int ell, int n);
// Independent route: facets by Gale's evenness condition (even dimension).
SimplicialComplex gale_cyclic_boundary(int d_even, int n);

// Average f-vector entry and average Euler characteristic over all slicings
// separating k vertices, as functions of the f-vector alone.
Rat avg_f_formula(const FVector& f, int n, int k, int i);
Rat avg_chi_formula(const FVector& f, int n, int k);

// s_{i,j}(k,n) = (-1)^i C(k,i) C(n-1,i)^{-1} C(n-j-1,i-j) C(n-i,2j-i),
// zero whenever j > i or i > 2j.
Rat s_term(long i, long j, long k, long n);
// sum_i s_{i,j} = (-1)^j C(k,j) C(n-k,j) / C(n-1,j). Domain n >= 2j+1 (the
// sum reaches i = 2j, where the inverse binomial must stay nonzero);
// degenerate corners like j=1, k=n=2 genuinely fail outside it.
bool verify_identity_row(long j, long k, long n);
// sum_j s_{i,j} = (-1)^i C(k,i). Domain i <= n-1.
bool verify_identity_col(long i, long k, long n);
// sum over the box i<=2l+2, j<=l+1 equals
// (1-k)_(l+1) (1-n+k)_(l+1) / ((l+1)! (1-n)_(l+1)). Domain n >= 2l+3,
// keeping every row of the box in-domain.
bool verify_double_sum(int ell, long k, long n);
// sum_{j=1}^{i+1} C(k,j) C(n-k,i+2-j) = C(n,i+2) - C(k,i+2) - C(n-k,i+2)
bool verify_chu_vandermonde_instance(long i, long k, long n);
// sum_j C(n-j-1,i-j) C(n-i,2j-i) = C(n-1,i)
bool verify_facecount_identity(long i, long n);

// Runs every identity sweep up to the given caps; returns false on the
// first failure. Parallel over the (k,n) grid.
bool run_identity_sweeps(int ell_max, long n_max);

}  // namespace tcm
