#pragma once

#include <string>
#include <vector>

#include "tcm/homology.hpp"
#include "tcm/rational.hpp"
#include "tcm/sphere_enum.hpp"

namespace tcm {

struct SigmaVector {
    std::vector<Rat> s;  // s[i] = sigma_i
};

// sigma_0 = sum over all vertex subsets W of (components(c[W]) - 1) / C(n,|W|),
// the empty set contributing -1. Components are read off the 1-skeleton with
// union-find; exact rational result. Capped at 2^cap subsets.
Rat sigma0(const SimplicialComplex& c, int cap = 13);
Rat sigma0_serial(const SimplicialComplex& c, int cap = 13);

// Full sigma-vector up to index i_max; entries above 0 use reduced Betti
// numbers over F_2 per subset, which is considerably heavier than sigma0.
SigmaVector sigma(const SimplicialComplex& c, int i_max, int cap = 13);

// Two-neighbourly and the average sigma_0 over all vertex links equals
// beta_1(c, f) - 1. Exact rational comparison.
bool is_tight_bd(const SimplicialComplex& c, PrimeField f);

// Necessary conditions for an n-vertex 2-sphere to appear as a vertex link
// of a tight 3-manifold with first Betti number k:
//  (i) k >= tightness_bound(1, n+1),
// (ii) the 1-skeleton has no independent set of size k+2,
// (iii) no 6 vertices induce a subgraph with k+1 components.
bool property_tk(const SimplicialComplex& sphere, int k);

// Fill sigma0 / tk flags / stacked over a catalog (parallel per record).
void annotate_catalog(SphereCatalog& cat, const std::vector<int>& tk_values);

struct LinkCombination {
    std::vector<int> record_indices;  // multiset, ascending, into the catalog
    Rat sigma0_sum;
};

struct CombinationResult {
    // distinct sigma0-value multisets with the required sum
    std::vector<std::vector<std::pair<Rat, int>>> value_multisets;
    std::vector<LinkCombination> combinations;
};

// All multisets of n catalog records whose sigma0 values sum to n*(beta1-1);
// enumerated value-first, then expanded to record multisets.
CombinationResult link_combinations(const SphereCatalog& catalog,
                                    const std::vector<int>& eligible, int n, int beta1);

// True iff every vertex degree occurs an even number of times across the
// whole multiset of links.
bool parity_filter(const SphereCatalog& catalog, const LinkCombination& comb);

// All closed combinatorial 3-manifolds on n vertices, up to isomorphism,
// whose vertex links realize exactly the given multiset. tk >= 0 switches on
// the generalized T_k pruning of partial links (sound: final links satisfy
// Property T_k, so no completion is lost).
std::vector<SimplicialComplex> assemble(const SphereCatalog& catalog,
                                        const LinkCombination& comb, int n, int tk = -1);

struct CombinationRow {
    int id = 0;
    std::string sigma_multiset;
    bool parity_ok = false;
    int manifolds_found = 0;
    std::vector<std::string> signatures;
};

struct SearchCase {
    int n = 0;
    bool delegated = false;  // handled by the external classification
    size_t catalog_size = 0;
    size_t tk_pass = 0;
    size_t value_multisets = 0;
    size_t link_combination_count = 0;
    size_t parity_survivors = 0;
    std::vector<CombinationRow> rows;
    std::vector<SimplicialComplex> manifolds;  // tight ones, verified
};

struct SearchReport {
    int beta1 = 0;
    std::vector<SearchCase> cases;
    std::vector<const SimplicialComplex*> all_manifolds() const {
        std::vector<const SimplicialComplex*> out;
        for (const auto& c : cases)
            for (const auto& m : c.manifolds) out.push_back(&m);
        return out;
    }
};

// The full classification pipeline for beta1 in {0,1,2}: candidate vertex
// counts from the bound table, per-n sphere catalog, T_k filter, sigma0-sum
// combinations, degree-parity filter, assembly, and exhaustive-tightness
// re-verification of every manifold found.
SearchReport search_tight_3manifolds(int beta1);

std::string search_report_text(const SearchReport& rep);
std::string search_report_tsv(const SearchReport& rep);

}  // namespace tcm
