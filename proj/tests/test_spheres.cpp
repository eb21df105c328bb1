#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cstdio>
#include <set>

#include "oracles.hpp"
#include "tcm/sphere_enum.hpp"

using namespace tcm;

TEST_CASE("census counts up to 9 vertices") {
    CHECK(enumerate_spheres(4).records.size() == 1);
    CHECK(enumerate_spheres(5).records.size() == 1);
    CHECK(enumerate_spheres(6).records.size() == 2);
    CHECK(enumerate_spheres(7).records.size() == 5);
    CHECK(enumerate_spheres(8).records.size() == 14);
    CHECK(enumerate_spheres(9).records.size() == 50);
    CHECK_THROWS_AS(enumerate_spheres(3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spheres(14), CapExceeded);
}

TEST_CASE("census agrees with the brute-force oracle for small n") {
    for (int n = 4; n <= 6; ++n) {
        std::vector<std::string> brute = oracles::brute_force_sphere_signatures(n);
        SphereCatalog cat = enumerate_spheres(n);
        std::vector<std::string> gen;
        for (const auto& r : cat.records) gen.push_back(r.signature);
        CHECK(gen == brute);
    }
}

TEST_CASE("every record is a sphere with the closed-surface count identities") {
    SphereCatalog cat = enumerate_spheres(8);
    for (const auto& r : cat.records) {
        CHECK(r.complex.is_closed_surface());
        CHECK(r.complex.euler_characteristic() == 2);
        FVector f = r.complex.f_vector();
        CHECK(f[1] == 3 * f[0] - 6);
        CHECK(f[2] == 2 * f[0] - 4);
    }
    // pairwise non-isomorphic
    std::set<std::string> sigs;
    for (const auto& r : cat.records) sigs.insert(r.signature);
    CHECK(sigs.size() == cat.records.size());
}

TEST_CASE("vertex splits preserve sphere-ness") {
    for (const auto& parent : enumerate_spheres(7).records)
        for (const auto& child : vertex_splits(parent.complex)) {
            CHECK(child.is_closed_surface());
            CHECK(child.euler_characteristic() == 2);
            CHECK(child.vertex_count() == 8);
        }
}

TEST_CASE("enumeration is deterministic across thread counts") {
    omp_set_num_threads(4);
    SphereCatalog par = enumerate_spheres(9);
    omp_set_num_threads(1);
    SphereCatalog ser = enumerate_spheres_serial(9);
    omp_set_num_threads(4);
    REQUIRE(par.records.size() == ser.records.size());
    for (size_t i = 0; i < par.records.size(); ++i) {
        CHECK(par.records[i].signature == ser.records[i].signature);
        CHECK(par.records[i].complex == ser.records[i].complex);
    }
}

TEST_CASE("stackedness") {
    CHECK(is_stacked(boundary_of_simplex(3)));
    CHECK(is_stacked(oracles::stacked_sphere_6()));
    CHECK_FALSE(is_stacked(oracles::octahedron()));
    int stacked8 = 0;
    for (const auto& r : enumerate_spheres(8).records)
        if (r.stacked) ++stacked8;
    CHECK(stacked8 == 7);
}

TEST_CASE("link cycles") {
    std::vector<int> cyc = link_cycle(oracles::octahedron(), 1);
    CHECK(cyc.size() == 4);
    std::set<int> members(cyc.begin(), cyc.end());
    CHECK(members == std::set<int>{3, 4, 5, 6});
}

TEST_CASE("catalog files round-trip") {
    SphereCatalog cat = enumerate_spheres(7);
    std::string path = "build/test_catalog_7.cat";
    save_catalog(cat, path);
    SphereCatalog loaded = load_catalog(path);
    REQUIRE(loaded.records.size() == cat.records.size());
    CHECK(loaded.n == 7);
    for (size_t i = 0; i < cat.records.size(); ++i) {
        CHECK(loaded.records[i].signature == cat.records[i].signature);
        CHECK(loaded.records[i].complex == cat.records[i].complex);
        CHECK(loaded.records[i].stacked == cat.records[i].stacked);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_catalog("build/does_not_exist.cat"), std::invalid_argument);
}
