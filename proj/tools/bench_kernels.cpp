// Serial vs OpenMP timings for the data-parallel kernels: sigma_0 subset
// sweeps over a sphere catalog, the exhaustive tightness sweep, the full
// rsl-ordering sweep and a census level.

#include <omp.h>

#include <chrono>
#include <iostream>

#include "tcm/homology.hpp"
#include "tcm/sphere_enum.hpp"
#include "tcm/tight_search.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
static double timed(F&& fn) {
    auto t0 = Clock::now();
    fn();
    return ms_since(t0);
}

int main(int argc, char** argv) {
    int census_n = argc > 1 ? std::atoi(argv[1]) : 10;
    std::cout << "threads available: " << omp_get_max_threads() << "\n\n";
    std::cout << "kernel\tserial_ms\tparallel_ms\tspeedup\n";

    tcm::SphereCatalog cat = tcm::enumerate_spheres(9);

    double s, p;
    s = timed([&] {
        for (const auto& r : cat.records) (void)tcm::sigma0_serial(r.complex);
    });
    p = timed([&] {
        for (const auto& r : cat.records) (void)tcm::sigma0(r.complex);
    });
    std::cout << "sigma0 over the 9-vertex catalog\t" << s << '\t' << p << '\t' << s / p << '\n';

    tcm::SearchReport rep = tcm::search_tight_3manifolds(1);
    const tcm::SimplicialComplex* klein = nullptr;
    for (const auto& c : rep.cases)
        if (!c.manifolds.empty()) klein = &c.manifolds.front();
    if (klein) {
        tcm::PrimeField f2(2);
        s = timed([&] { (void)tcm::is_tight_exhaustive_serial(*klein, f2); });
        p = timed([&] { (void)tcm::is_tight_exhaustive(*klein, f2); });
        std::cout << "exhaustive tightness, 9-vertex manifold\t" << s << '\t' << p << '\t' << s / p
                  << '\n';

        s = timed([&] { (void)tcm::all_rsl_perfect_serial(*klein, f2); });
        p = timed([&] { (void)tcm::all_rsl_perfect(*klein, f2); });
        std::cout << "all 9! rsl orderings\t" << s << '\t' << p << '\t' << s / p << '\n';
    }

    s = timed([&] { (void)tcm::enumerate_spheres_serial(census_n); });
    p = timed([&] { (void)tcm::enumerate_spheres(census_n); });
    std::cout << "sphere census n=" << census_n << '\t' << s << '\t' << p << '\t' << s / p << '\n';
    return 0;
}
