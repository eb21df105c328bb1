#pragma once

#include <string>
#include <vector>

#include "tcm/graph.hpp"
#include "tcm/vset.hpp"

namespace tcm {

using FVector = std::vector<long long>;

// Immutable pure-or-general simplicial complex given by its facets.
// Vertices carry dense labels 1..n; every vertex appears in some facet.
// The full face table is built once at construction, so all queries are
// const and safe to call concurrently.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;  // the empty complex

    // Normalizes arbitrary positive labels: deduplicates facets, drops faces
    // contained in other facets, relabels vertices densely preserving order.
    // Throws std::invalid_argument on an empty list or a facet with repeated
    // vertices.
    static SimplicialComplex from_facets(const std::vector<std::vector<int>>& facets);

    // Facets already given as masks over dense labels 1..n (every vertex of
    // 1..n must be covered). Non-maximal entries are absorbed.
    static SimplicialComplex from_facet_masks(int n, std::vector<Vset> facets);

    int vertex_count() const { return n_; }
    int dimension() const { return dim_; }  // -1 for the empty complex
    bool empty() const { return n_ == 0; }
    bool is_pure() const { return pure_; }
    Vset vertex_set() const { return full_vset(n_); }

    const std::vector<Vset>& facets() const { return facets_; }
    // Faces of dimension d as sorted masks; empty vector outside 0..dim.
    const std::vector<Vset>& faces(int d) const;
    bool has_face(Vset f) const;

    FVector f_vector() const;
    long long euler_characteristic() const;

    // All faces with vertex set inside W, relabeled densely.
    SimplicialComplex induced_subcomplex(Vset W) const;

    // lk(v) = { s : s+v is a face, v not in s }, st(v) = all faces of facets
    // containing v. Both relabeled densely; use link_to_ambient for the map
    // back (dense label i+1 -> ambient label link_to_ambient[i]).
    SimplicialComplex vertex_link(int v) const;
    SimplicialComplex vertex_star(int v) const;
    std::vector<int> link_vertices(int v) const;       // ambient labels, ascending
    std::vector<Vset> link_facets_ambient(int v) const;

    bool is_k_neighbourly(int k) const;  // f_{k-1} == C(n,k)
    bool is_connected() const;

    // Surface test: pure of dimension 2, every edge in exactly two
    // triangles, every vertex link a single cycle, connected.
    bool is_closed_surface() const;
    // Every triangle in exactly two facets and every vertex link a closed
    // surface with Euler characteristic 2.
    bool is_combinatorial_3_manifold() const;

    bool is_closed_pseudomanifold() const;  // pure, every ridge in exactly 2 facets
    // Orientation propagation over the facet adjacency graph. Throws
    // std::invalid_argument unless the complex is a closed pseudomanifold.
    bool is_orientable() const;

    // Canonical labeling via individualization-refinement; the string is
    // equal for two complexes iff they are isomorphic.
    std::string canonical_signature() const;
    // The complex relabeled into canonical position.
    SimplicialComplex canonical_form() const;
    // Full automorphism group, each entry a permutation p with p[v-1] = image of v.
    std::vector<std::vector<int>> automorphisms() const;

    Graph one_skeleton() const;
    std::vector<int> degree_sequence() const;  // ascending skeleton degrees
    // Compact d1^e1 d2^e2 ... rendering of the degree sequence.
    std::string degree_sequence_string() const;

    bool operator==(const SimplicialComplex& o) const {
        return n_ == o.n_ && facets_ == o.facets_;
    }

  private:
    int n_ = 0;
    int dim_ = -1;
    bool pure_ = true;
    std::vector<Vset> facets_;                 // sorted masks, inclusion-maximal
    std::vector<std::vector<Vset>> faces_;     // faces_[d] sorted masks

    void build_faces();
};

// Dense relabeling of a face list living on a subset of ambient labels.
struct RelabeledComplex {
    SimplicialComplex complex;
    std::vector<int> to_ambient;  // dense label i+1 -> ambient label
};
RelabeledComplex relabel_faces(const std::vector<Vset>& maximal_faces);

// Facet-list text format: one facet per line, whitespace-separated positive
// integers, '#' starts a comment, blank lines ignored.
SimplicialComplex load_facet_file(const std::string& path);
std::vector<std::vector<int>> parse_facet_lines(const std::string& text);
std::string facet_list_to_string(const SimplicialComplex& c);

// Canonical signature parsing (format "n:a,b,c;d,e,f;...").
SimplicialComplex complex_from_signature(const std::string& sig);

// Serialization of the facet list as stored; equals canonical_signature()
// exactly when the complex is already in canonical position.
std::string serialize_complex(const SimplicialComplex& c);

// Handy fixed complexes.
SimplicialComplex boundary_of_simplex(int d);  // boundary of the d-simplex on d+1 vertices

}  // namespace tcm
