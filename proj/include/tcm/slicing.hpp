#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "tcm/homology.hpp"
#include "tcm/rational.hpp"
#include "tcm/simplicial_complex.hpp"

namespace tcm {

// An rsl-function up to equivalence: only the vertex order matters for its
// critical structure and slicings. order[pos] = vertex at that rank.
struct RslOrdering {
    std::vector<int> order;
    static RslOrdering of(std::vector<int> perm) { return RslOrdering{std::move(perm)}; }
};

struct CriticalPoint {
    int vertex;
    int index;
    int multiplicity;
};

struct CriticalReport {
    std::vector<CriticalPoint> points;
    std::vector<int> total_per_index;
    int total() const {
        int s = 0;
        for (int x : total_per_index) s += x;
        return s;
    }
};

// The polygonal level surface of a 3-manifold bipartition: one triangle per
// facet meeting the lower set in 1 or 3 vertices, one quadrilateral per
// facet split 2/2.
struct SlicingSurface {
    Vset lower = 0;
    long long vertices = 0;   // cut edges
    long long edges = 0;      // cut triangles
    long long triangles = 0;  // cells from 1/3 splits
    long long quads = 0;      // cells from 2/2 splits
    long long chi = 0;
    int components = 0;
    bool orientable = false;
    // F_2 Betti numbers of a closed surface from its classification data.
    std::array<long long, 3> betti_f2() const {
        return {components, 2 * components - chi, components};
    }
};

// f-vector of the slicing defined by the bipartition (W, V\W):
// f_i = number of (i+1)-faces with vertices on both sides.
FVector slicing_f_vector(const SimplicialComplex& c, Vset W);

// Requires a closed combinatorial 3-manifold and a nontrivial bipartition.
SlicingSurface slicing_surface(const SimplicialComplex& c, Vset W);

struct AverageSlicingStats {
    std::vector<Rat> f;
    Rat chi;
};
// Exact mean over all C(n,k) bipartitions with |W| = k.
AverageSlicingStats average_slicing_stats(const SimplicialComplex& c, int k);
AverageSlicingStats average_slicing_stats_serial(const SimplicialComplex& c, int k);

// Critical vertices of the ordering with multiplicities: the multiplicity of
// index i at v is the reduced (i-1)-th Betti number of the part of lk(v)
// spanned by the vertices preceding v; an empty lower link contributes
// multiplicity 1 at index 0.
CriticalReport critical_points(const SimplicialComplex& c, const RslOrdering& ord, PrimeField f);

bool is_perfect(const SimplicialComplex& c, const RslOrdering& ord, PrimeField f);

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quantifies perfectness over all n! orderings. Throws CapExceeded above the
// cap (default 9; 9! orderings are desk scale, bigger factorials are not).
bool all_rsl_perfect(const SimplicialComplex& c, PrimeField f, int cap = 9);
bool all_rsl_perfect_serial(const SimplicialComplex& c, PrimeField f, int cap = 9);

// Precomputed per-vertex multiplicity tables: the critical multiplicities of
// v depend only on the set of predecessors within lk(v). Shared by the
// exhaustive ordering sweeps and the property tests.
class MorseTables {
  public:
    MorseTables(const SimplicialComplex& c, PrimeField f);
    // multiplicity vector (per index 0..d) of vertex v given predecessor set
    const std::vector<int>& multiplicities(int v, Vset predecessors) const;
    int total_multiplicity(const RslOrdering& ord) const;
    std::vector<int> per_index_totals(const RslOrdering& ord) const;
    int dimension() const { return dim_; }

  private:
    int n_, dim_;
    std::vector<Vset> link_mask_;                          // link vertices of v
    std::vector<std::vector<std::vector<int>>> table_;     // [v][compressed subset]
    size_t compress(int v, Vset preds) const;
};

}  // namespace tcm
