// Command-line front end: analysis of facet-list complexes, tightness
// criteria, slicing statistics, the vertex-count bound tables, cyclic
// polytope cross-checks, hypergeometric identity sweeps, the 2-sphere
// census, sigma/T_k catalog passes and the tight-3-manifold search.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcm/bounds.hpp"
#include "tcm/homology.hpp"
#include "tcm/simplicial_complex.hpp"
#include "tcm/slicing.hpp"
#include "tcm/sphere_enum.hpp"
#include "tcm/tight_search.hpp"

namespace {

using namespace tcm;

// Buffered write so partially computed tables never land on disk.
void write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move output into place: " + path);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string fvec_to_string(const FVector& f) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << ',';
        os << f[i];
    }
    os << ')';
    return os.str();
}

int cmd_analyze(const std::string& file, int characteristic) {
    SimplicialComplex c = load_facet_file(file);
    PrimeField f(characteristic);
    std::ostringstream os;
    os << "vertices\t" << c.vertex_count() << '\n';
    os << "dimension\t" << c.dimension() << '\n';
    os << "f_vector\t" << fvec_to_string(c.f_vector()) << '\n';
    os << "euler_characteristic\t" << c.euler_characteristic() << '\n';
    os << "connected\t" << (c.is_connected() ? "yes" : "no") << '\n';
    int max_k = 0;
    for (int k = 1; k <= c.dimension() + 1; ++k)
        if (c.is_k_neighbourly(k)) max_k = k;
    os << "neighbourly\t" << max_k << '\n';
    BettiVector b = betti(c, f);
    os << "betti_F" << characteristic << '\t';
    for (size_t i = 0; i < b.b.size(); ++i) os << (i ? "," : "") << b.b[i];
    os << '\n';
    os << "closed_surface\t" << (c.dimension() == 2 && c.is_closed_surface() ? "yes" : "no") << '\n';
    os << "combinatorial_3_manifold\t" << (c.dimension() == 3 && c.is_combinatorial_3_manifold() ? "yes" : "no")
       << '\n';
    if (c.is_closed_pseudomanifold())
        os << "orientable\t" << (c.is_orientable() ? "yes" : "no") << '\n';
    os << "degree_sequence\t" << c.degree_sequence_string() << '\n';
    os << "signature\t" << c.canonical_signature() << '\n';
    std::cout << os.str();
    return 0;
}

int cmd_tight(const std::string& file, const std::string& mode, int characteristic, int cap) {
    SimplicialComplex c = load_facet_file(file);
    PrimeField f(characteristic);
    bool tight = false;
    if (mode == "exhaustive") {
        if (!c.is_connected()) {
            std::cerr << "input is not connected\n";
            return 1;
        }
        tight = is_tight_exhaustive(c, f);
    } else if (mode == "bd") {
        tight = is_tight_bd(c, f);
    } else if (mode == "rsl") {
        tight = all_rsl_perfect(c, f, cap);
    } else {
        std::cerr << "unknown mode " << mode << '\n';
        return 1;
    }
    std::cout << (tight ? "tight" : "not tight") << " (mode=" << mode << ", char=" << characteristic
              << ")\n";
    return 0;
}

int cmd_slicings(const std::string& file, int k, bool all, bool avg, const std::string& out) {
    SimplicialComplex c = load_facet_file(file);
    if (!c.is_combinatorial_3_manifold()) {
        std::cerr << "input is not a closed combinatorial 3-manifold\n";
        return 1;
    }
    int n = c.vertex_count();
    std::ostringstream os;
    if (all) {
        os << "W\tf_vector\tchi\tcomponents\torientable\n";
        for (Vset W = 1; W < c.vertex_set(); ++W) {
            if (vcount(W) != k) continue;
            SlicingSurface s = slicing_surface(c, W);
            FVector f = slicing_f_vector(c, W);
            auto vs = vset_to_vertices(W);
            for (size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
            os << '\t' << fvec_to_string(f) << '\t' << s.chi << '\t' << s.components << '\t'
               << (s.orientable ? "yes" : "no") << '\n';
        }
    }
    if (avg) {
        AverageSlicingStats stats = average_slicing_stats(c, k);
        FVector fv = c.f_vector();
        os << "avg_f\t";
        for (size_t i = 0; i < stats.f.size(); ++i) os << (i ? "," : "") << rat_to_string(stats.f[i]);
        os << '\n';
        os << "avg_chi\t" << rat_to_string(stats.chi) << '\n';
        os << "formula_chi\t" << rat_to_string(avg_chi_formula(fv, n, k)) << '\n';
        bool agree = stats.chi == avg_chi_formula(fv, n, k);
        for (size_t i = 0; i < stats.f.size(); ++i)
            agree = agree && stats.f[i] == avg_f_formula(fv, n, k, static_cast<int>(i));
        os << "formula_agrees\t" << (agree ? "yes" : "no") << '\n';
    }
    emit(out, os.str());
    return 0;
}

int cmd_search(int beta1, const std::string& report_path) {
    SearchReport rep = search_tight_3manifolds(beta1);
    std::cout << search_report_text(rep);
    if (!report_path.empty()) write_file(report_path, search_report_tsv(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for tight combinatorial manifolds"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: OMP_NUM_THREADS or all cores)");

    std::string file, out, mode = "exhaustive", catalog_path;
    int characteristic = 2, k = 1, ell = 1, nn = 0, cap = 9, beta1 = 1, tk = 1;
    bool table = false, ditto = false, all = false, avg = false, oracle = false;
    long long beta_opt = -1;

    auto* analyze = app.add_subcommand("analyze", "f-vector, Betti numbers, manifold checks");
    analyze->add_option("file", file)->required();
    analyze->add_option("--char", characteristic);

    auto* tight = app.add_subcommand("tight", "tightness of a complex");
    tight->add_option("file", file)->required();
    tight->add_option("--mode", mode, "exhaustive|bd|rsl");
    tight->add_option("--char", characteristic);
    tight->add_option("--cap", cap, "vertex cap for the rsl sweep");

    auto* slicings = app.add_subcommand("slicings", "bipartition surfaces and averages");
    slicings->add_option("file", file)->required();
    slicings->add_option("--k", k)->required();
    slicings->add_flag("--all", all);
    slicings->add_flag("--avg", avg);
    slicings->add_option("--out", out);

    auto* bound = app.add_subcommand("bound", "vertex-count bounds for tight manifolds");
    bound->add_flag("--table", table);
    bound->add_flag("--ditto", ditto, "collapse repeated column values");
    bound->add_option("--ell", ell);
    bound->add_option("--n", nn);
    bound->add_option("--beta", beta_opt, "report the largest admissible vertex count");
    bound->add_option("--out", out);

    auto* cyclic = app.add_subcommand("cyclic", "cyclic polytope boundary f-vectors");
    cyclic->add_option("--ell", ell)->required();
    cyclic->add_option("--n", nn)->required();
    cyclic->add_flag("--oracle", oracle, "compare against the Gale evenness facet list");

    auto* identities = app.add_subcommand("identities", "hypergeometric identity sweeps");
    std::vector<long long> sweep{5, 25};
    identities->add_option("--sweep", sweep, "LMAX NMAX")->expected(2);

    auto* spheres = app.add_subcommand("spheres", "2-sphere census");
    spheres->add_option("--n", nn)->required();
    spheres->add_option("--out", out)->required();
    int sphere_cap = 13;
    spheres->add_option("--cap", sphere_cap);

    auto* sigma_cmd = app.add_subcommand("sigma", "sigma_0 of every record in a catalog");
    sigma_cmd->add_option("--catalog", catalog_path)->required();
    sigma_cmd->add_option("--out", out);

    auto* tk_cmd = app.add_subcommand("tk", "Property T_k filter over a catalog");
    tk_cmd->add_option("--catalog", catalog_path)->required();
    tk_cmd->add_option("--k", tk)->required();
    tk_cmd->add_option("--out", out);

    auto* search = app.add_subcommand("search", "classify tight 3-manifolds by first Betti number");
    search->add_option("--beta1", beta1)->required();
    search->add_option("--report", out);

    // global flags may appear after the subcommand
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*analyze) return cmd_analyze(file, characteristic);
        if (*tight) return cmd_tight(file, mode, characteristic, cap);
        if (*slicings) {
            if (!all && !avg) avg = true;
            return cmd_slicings(file, k, all, avg, out);
        }
        if (*bound) {
            if (table) {
                emit(out, bound_table_tsv(tcm::bound_table(15, 10), ditto));
            } else if (beta_opt >= 0) {
                std::cout << max_vertices(ell, tcm::int_of(beta_opt)) << '\n';
            } else if (nn > 0) {
                std::cout << tightness_bound(ell, nn).get_str() << '\n';
            } else {
                std::cerr << "bound needs --table, --beta or --n\n";
                return 1;
            }
            return 0;
        }
        if (*cyclic) {
            FVector f = cyclic_fvector(ell, nn);
            std::cout << "formula\t" << fvec_to_string(f) << '\n';
            if (oracle) {
                SimplicialComplex g = gale_cyclic_boundary(2 * ell + 2, nn);
                FVector fo = g.f_vector();
                std::cout << "oracle\t" << fvec_to_string(fo) << '\n';
                if (f != fo) {
                    std::cerr << "formula and Gale oracle disagree\n";
                    return 1;
                }
            }
            return 0;
        }
        if (*identities) {
            bool ok = run_identity_sweeps(static_cast<int>(sweep[0]), sweep[1]);
            std::cout << (ok ? "all identities hold" : "IDENTITY FAILURE") << " (ell<="
                      << sweep[0] << ", n<=" << sweep[1] << ")\n";
            return ok ? 0 : 1;
        }
        if (*spheres) {
            SphereCatalog cat = enumerate_spheres(nn, sphere_cap);
            save_catalog(cat, out);
            std::cout << "spheres n=" << nn << " count=" << cat.records.size() << " -> " << out
                      << '\n';
            return 0;
        }
        if (*sigma_cmd) {
            SphereCatalog cat = load_catalog(catalog_path);
            annotate_catalog(cat, {});
            std::ostringstream os;
            os << "signature\tsigma0\tdegree_sequence\n";
            for (const auto& r : cat.records)
                os << r.signature << '\t' << rat_to_string(*r.sigma0) << '\t'
                   << r.complex.degree_sequence_string() << '\n';
            emit(out, os.str());
            return 0;
        }
        if (*tk_cmd) {
            SphereCatalog cat = load_catalog(catalog_path);
            annotate_catalog(cat, {tk});
            std::ostringstream os;
            os << "signature\tT_" << tk << "\tsigma0\tdegree_sequence\n";
            for (const auto& r : cat.records)
                os << r.signature << '\t' << (r.tk_flags.front().second ? "pass" : "fail") << '\t'
                   << rat_to_string(*r.sigma0) << '\t' << r.complex.degree_sequence_string() << '\n';
            emit(out, os.str());
            return 0;
        }
        if (*search) return cmd_search(beta1, out);
    } catch (const tcm::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
