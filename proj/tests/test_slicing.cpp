#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tcm/bounds.hpp"
#include "tcm/slicing.hpp"

using namespace tcm;

namespace {
const PrimeField F2{2};

RslOrdering iota_ordering(int n) {
    std::vector<int> o(static_cast<size_t>(n));
    std::iota(o.begin(), o.end(), 1);
    return RslOrdering::of(o);
}
}  // namespace

TEST_CASE("slicing f-vectors on the 4-simplex boundary") {
    SimplicialComplex bd4 = boundary_of_simplex(4);
    // |W| = 2: 6 cut edges, 9 cut triangles, 5 cut facets
    CHECK(slicing_f_vector(bd4, vbit(1) | vbit(2)) == FVector{6, 9, 5});
    // |W| = 1: the slicing is the vertex link
    CHECK(slicing_f_vector(bd4, vbit(3)) == FVector{4, 6, 4});
    CHECK_THROWS_AS(slicing_f_vector(bd4, 0), std::invalid_argument);
    CHECK_THROWS_AS(slicing_f_vector(bd4, bd4.vertex_set()), std::invalid_argument);
}

TEST_CASE("slicing surfaces") {
    SimplicialComplex bd4 = boundary_of_simplex(4);
    SlicingSurface s = slicing_surface(bd4, vbit(1) | vbit(2));
    CHECK(s.chi == 2);
    CHECK(s.components == 1);
    CHECK(s.orientable);
    CHECK(s.vertices == 6);
    CHECK(s.edges == 9);
    CHECK(s.triangles + s.quads == 5);

    // every single-vertex slicing of a 3-manifold is the link sphere
    for (const auto& m : oracles::three_manifold_corpus(false))
        for (int v = 1; v <= m.vertex_count(); ++v) {
            SlicingSurface lk = slicing_surface(m, vbit(v));
            CHECK(lk.chi == 2);
            CHECK(lk.components == 1);
        }

    // cell counts agree with the slicing f-vector on every bipartition
    SimplicialComplex s7 = oracles::stacked_3sphere_7();
    for (Vset W = 1; W < s7.vertex_set(); ++W) {
        FVector f = slicing_f_vector(s7, W);
        SlicingSurface surf = slicing_surface(s7, W);
        CHECK(surf.vertices == f[0]);
        CHECK(surf.edges == f[1]);
        CHECK(surf.triangles + surf.quads == f[2]);
        CHECK(surf.chi == f[0] - f[1] + f[2]);
    }

    CHECK_THROWS_AS(slicing_surface(boundary_of_simplex(3), vbit(1)), std::invalid_argument);
}

TEST_CASE("slicings of orientable manifolds are orientable") {
    // level surfaces bound their sublevel sets, so they are two-sided;
    // two-sided surfaces in orientable manifolds are orientable
    for (int n : {6, 7, 9}) {
        SimplicialComplex m = gale_cyclic_boundary(4, n);
        REQUIRE(m.is_orientable());
        for (Vset W = 1; W < m.vertex_set(); ++W) CHECK(slicing_surface(m, W).orientable);
    }
    // the nonorientable 9-vertex manifold has nonorientable slicings,
    // so the orientation propagation is not trivially positive
    SimplicialComplex k = load_facet_file("data/manifold_s2xs1_9.fl");
    int nonorientable = 0;
    for (Vset W = 1; W < k.vertex_set(); ++W)
        if (!slicing_surface(k, W).orientable) ++nonorientable;
    CHECK(nonorientable == 240);
}

TEST_CASE("brute-force averages match the closed formulas") {
    for (const auto& m : oracles::three_manifold_corpus(false)) {
        int n = m.vertex_count();
        FVector f = m.f_vector();
        for (int k = 1; k <= n - 1; ++k) {
            AverageSlicingStats stats = average_slicing_stats(m, k);
            CHECK(stats.chi == avg_chi_formula(f, n, k));
            for (int i = 0; i < static_cast<int>(stats.f.size()); ++i)
                CHECK(stats.f[static_cast<size_t>(i)] == avg_f_formula(f, n, k, i));
        }
    }
    // serial twin agrees
    SimplicialComplex bd4 = boundary_of_simplex(4);
    AverageSlicingStats a = average_slicing_stats(bd4, 2);
    AverageSlicingStats b = average_slicing_stats_serial(bd4, 2);
    CHECK(a.chi == b.chi);
    CHECK(a.f == b.f);
    CHECK(a.f[0] == Rat(6));
    CHECK(a.chi == Rat(2));
}

TEST_CASE("critical points of orderings") {
    SimplicialComplex bd4 = boundary_of_simplex(4);
    std::vector<int> perm{1, 2, 3, 4, 5};
    do {
        CriticalReport rep = critical_points(bd4, RslOrdering::of(perm), F2);
        REQUIRE(rep.points.size() == 2);
        CHECK(rep.points[0].vertex == perm[0]);
        CHECK(rep.points[0].index == 0);
        CHECK(rep.points[0].multiplicity == 1);
        CHECK(rep.points[1].vertex == perm[4]);
        CHECK(rep.points[1].index == 3);
        CHECK(rep.points[1].multiplicity == 1);
    } while (std::next_permutation(perm.begin(), perm.end()));

    CHECK_THROWS_AS(critical_points(bd4, RslOrdering::of({1, 1, 2, 3, 4}), F2),
                    std::invalid_argument);
}

TEST_CASE("separating an independent pair creates an index-1 critical point") {
    // order the two endpoints of the missing edge of the stacked 3-sphere first
    SimplicialComplex s6 = oracles::stacked_3sphere_6();
    CriticalReport rep = critical_points(s6, RslOrdering::of({1, 6, 2, 3, 4, 5}), F2);
    CHECK(rep.total_per_index[1] >= 1);
    CHECK(rep.total() > betti(s6, F2).sum());
    CHECK_FALSE(is_perfect(s6, RslOrdering::of({1, 6, 2, 3, 4, 5}), F2));
}

TEST_CASE("perfectness sweeps") {
    SimplicialComplex bd4 = boundary_of_simplex(4);
    CHECK(all_rsl_perfect(bd4, F2));
    CHECK(all_rsl_perfect_serial(bd4, F2));
    CHECK_FALSE(all_rsl_perfect(oracles::stacked_3sphere_6(), F2));
    CHECK_FALSE(all_rsl_perfect(gale_cyclic_boundary(4, 7), F2));
    CHECK_THROWS_AS(all_rsl_perfect(gale_cyclic_boundary(4, 10), F2), CapExceeded);

    SimplicialComplex klein = load_facet_file("data/manifold_s2xs1_9.fl");
    CHECK(all_rsl_perfect(klein, F2));
}

TEST_CASE("morse tables agree with direct critical point reports") {
    SimplicialComplex klein = load_facet_file("data/manifold_s2xs1_9.fl");
    MorseTables tables(klein, F2);
    std::mt19937 rng(11);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        RslOrdering ord = RslOrdering::of(perm);
        CriticalReport rep = critical_points(klein, ord, F2);
        CHECK(rep.total() == tables.total_multiplicity(ord));
        CHECK(rep.total_per_index == tables.per_index_totals(ord));
    }
}

TEST_CASE("morse inequality and reversal duality") {
    const int dim = 3;
    for (const auto& m : {boundary_of_simplex(4), oracles::stacked_3sphere_6()}) {
        int target = betti(m, F2).sum();
        MorseTables tables(m, F2);
        std::vector<int> perm(static_cast<size_t>(m.vertex_count()));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            RslOrdering ord = RslOrdering::of(perm);
            std::vector<int> fwd = tables.per_index_totals(ord);
            int total = 0;
            for (int x : fwd) total += x;
            CHECK(total >= target);
            std::vector<int> rev_perm(perm.rbegin(), perm.rend());
            std::vector<int> bwd = tables.per_index_totals(RslOrdering::of(rev_perm));
            for (int i = 0; i <= dim; ++i)
                CHECK(fwd[static_cast<size_t>(i)] == bwd[static_cast<size_t>(dim - i)]);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    // sampled orderings on the 9-vertex manifold
    SimplicialComplex klein = load_facet_file("data/manifold_s2xs1_9.fl");
    MorseTables tables(klein, F2);
    int target = betti(klein, F2).sum();
    std::mt19937 rng(23);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 1);
    for (int trial = 0; trial < 10000; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(tables.total_multiplicity(RslOrdering::of(perm)) >= target);
    }
}

TEST_CASE("betti bound for slicings of tight manifolds") {
    // beta_i(S) <= beta_i(M) + beta_{i+1}(M) for every bipartition
    for (const char* tight_member : {"bd4", "klein"}) {
        SimplicialComplex m = std::string(tight_member) == "bd4"
                                  ? boundary_of_simplex(4)
                                  : load_facet_file("data/manifold_s2xs1_9.fl");
        std::vector<int> bm = betti(m, F2).b;
        for (Vset W = 1; W < m.vertex_set(); ++W) {
            SlicingSurface s = slicing_surface(m, W);
            auto bs = s.betti_f2();
            for (int i = 0; i <= 2; ++i) {
                long long bound = bm[static_cast<size_t>(i)] + bm[static_cast<size_t>(i + 1)];
                CHECK(bs[static_cast<size_t>(i)] <= bound);
            }
        }
    }
}

TEST_CASE("per-ordering maximum slicing betti stays within the betti sum") {
    // sum_i max over levels of beta_i(S(g,j)) <= sum_i beta_i(M), ordering by ordering
    SimplicialComplex klein = load_facet_file("data/manifold_s2xs1_9.fl");
    int n = klein.vertex_count();
    int target = betti(klein, F2).sum();
    // precompute surface betti per bipartition
    std::vector<std::array<long long, 3>> by_mask(size_t{1} << n);
    for (Vset W = 1; W < klein.vertex_set(); ++W) by_mask[W] = slicing_surface(klein, W).betti_f2();

    std::mt19937 rng(37);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    for (int trial = 0; trial < 5000; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::array<long long, 3> best{0, 0, 0};
        Vset prefix = 0;
        for (int pos = 0; pos < n - 1; ++pos) {
            prefix |= vbit(perm[static_cast<size_t>(pos)]);
            for (int i = 0; i < 3; ++i)
                best[static_cast<size_t>(i)] = std::max(best[static_cast<size_t>(i)],
                                                        by_mask[prefix][static_cast<size_t>(i)]);
        }
        CHECK(best[0] + best[1] + best[2] <= target);
    }
}
