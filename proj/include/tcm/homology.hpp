#pragma once

#include <stdexcept>
#include <vector>

#include "tcm/simplicial_complex.hpp"

namespace tcm {

struct PrimeField {
    int p;
    explicit PrimeField(int p_ = 2) : p(p_) {
        if (p < 2) throw std::invalid_argument("field characteristic must be prime");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    }
};

// Betti numbers; entries may be -1 only in the reduced degree-0 slot of the
// empty complex (the convention used by the sigma-vector).
struct BettiVector {
    std::vector<int> b;
    bool reduced = false;
    int sum() const {
        int s = 0;
        for (int x : b) s += x;
        return s;
    }
};

// Exact ranks of the boundary maps over F_p (bit-packed elimination for p=2).
BettiVector betti(const SimplicialComplex& c, PrimeField f);
// Subtracts 1 from beta_0 for nonempty complexes; for the empty complex
// reports b = {-1}.
BettiVector reduced_betti(const SimplicialComplex& c, PrimeField f);

// Is H_k(c[W]) -> H_k(c) injective? Rank arithmetic only: the number of
// independent k-cycles of c[W] modulo the boundaries of c must equal
// beta_k(c[W]).
bool induced_map_injective(const SimplicialComplex& c, Vset W, int k, PrimeField f);

// Quantifies induced_map_injective over all vertex subsets and all k,
// smallest subsets first. Requires a connected complex.
bool is_tight_exhaustive(const SimplicialComplex& c, PrimeField f);
bool is_tight_exhaustive_serial(const SimplicialComplex& c, PrimeField f);

// Internal-but-reusable: reduced Betti numbers of the subcomplex spanned by
// the given faces (faces_by_dim[d] = masks of d-faces; must be closed under
// taking subfaces). Used by the critical-point tables where building full
// SimplicialComplex objects would dominate the cost.
std::vector<int> reduced_betti_of_faces(const std::vector<std::vector<Vset>>& faces_by_dim,
                                        PrimeField f);

}  // namespace tcm
