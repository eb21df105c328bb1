#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcm/rational.hpp"
#include "tcm/simplicial_complex.hpp"
#include "tcm/slicing.hpp"

namespace tcm {

// One catalogued 2-sphere triangulation, stored in canonical position.
// sigma0 and the T_k flags are filled by the search pipeline.
struct SphereRecord {
    SimplicialComplex complex;
    std::string signature;
    std::vector<int> degree_sequence;
    std::optional<Rat> sigma0;
    std::vector<std::pair<int, bool>> tk_flags;
    bool stacked = false;
};

struct SphereCatalog {
    int n = 0;
    std::vector<SphereRecord> records;  // sorted by signature, pairwise non-isomorphic
};

// Every triangulated 2-sphere on n vertices exactly once up to isomorphism,
// generated by vertex splitting from the tetrahedron boundary with canonical
// -signature rejection at each level. Throws CapExceeded above the cap.
SphereCatalog enumerate_spheres(int n, int cap = 13);
SphereCatalog enumerate_spheres_serial(int n, int cap = 13);

// True iff the sphere reduces to the tetrahedron boundary by repeatedly
// removing a degree-3 vertex.
bool is_stacked(const SimplicialComplex& sphere);

// All children of one sphere under a single vertex split (used by the
// generator; exposed for the structural tests).
std::vector<SimplicialComplex> vertex_splits(const SimplicialComplex& sphere);

// Cyclic order of the link of v in a 2-sphere (ambient labels).
std::vector<int> link_cycle(const SimplicialComplex& sphere, int v);

// Catalog file format: header "spheres n=<n> count=<c>", then one line per
// record: <signature>\t<triangles as comma-joined triples, ';'-separated>.
void save_catalog(const SphereCatalog& cat, const std::string& path);
SphereCatalog load_catalog(const std::string& path);

}  // namespace tcm
