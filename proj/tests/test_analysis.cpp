#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pyrofield/analysis.hpp"

using namespace pyrofield;
namespace fs = std::filesystem;

namespace {

std::vector<ReplicaTrace> simulate_batch(const SimConfig& c) {
    std::vector<ReplicaTrace> traces;
    for (std::uint64_t r = 0; r < c.replicas; ++r)
        traces.push_back(simulate_replica(c, r));
    return traces;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("convergence diagnostics on degenerate fields") {
    SimConfig c;
    c.boundary = Boundary::delta();
    c.n_max = 40;
    c.replicas = 50;
    c.master_seed = 5;
    const std::vector<std::uint32_t> checkpoints{10, 20, 40};

    SUBCASE("all ones") {
        c.params = validate_params(1, 1, 1);
        const ConvergenceReport rep =
            convergence_diagnostics(simulate_batch(c), checkpoints, default_epsilons());
        for (double m : rep.mean_z) CHECK(m == 1.0);
        for (const auto& fr : rep.cauchy_fractions)
            for (double f : fr) CHECK(f == 0.0);
        for (double e : rep.extinct_fraction) CHECK(e == 0.0);
    }
    SUBCASE("all zeros") {
        c.params = validate_params(0, 0, 0);
        const ConvergenceReport rep =
            convergence_diagnostics(simulate_batch(c), checkpoints, default_epsilons());
        for (double m : rep.mean_z) CHECK(m == 0.0);
        for (const auto& fr : rep.cauchy_fractions)
            for (double f : fr) CHECK(f == 0.0);
        for (double e : rep.extinct_fraction) CHECK(e == 1.0);
    }
}

TEST_CASE("convergence report shape and sanity") {
    SimConfig c;
    c.params = validate_params(0.7, 0.7, 0.9);
    c.boundary = Boundary::delta();
    c.n_max = 80;
    c.replicas = 400;
    c.master_seed = 99;
    const std::vector<std::uint32_t> checkpoints{10, 20, 40, 80};
    const ConvergenceReport rep =
        convergence_diagnostics(simulate_batch(c), checkpoints, default_epsilons());

    REQUIRE(rep.checkpoints.size() == 4);
    REQUIRE(rep.cauchy_fractions.size() == 3);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rep.mean_z[i] >= 0.0);
        CHECK(rep.mean_z[i] <= 1.0);
        CHECK(rep.extinct_fraction[i] >= 0.0);
        CHECK(rep.extinct_fraction[i] <= 1.0);
        const auto& q = rep.quantiles[i];
        CHECK(q[0] <= q[1]);
        CHECK(q[1] <= q[2]);
        CHECK(q[2] <= q[3]);
        CHECK(q[3] <= q[4]);
    }
    // epsilon list is decreasing, so exceedance fractions must not decrease
    for (const auto& fr : rep.cauchy_fractions)
        for (std::size_t e = 1; e < fr.size(); ++e) CHECK(fr[e] >= fr[e - 1]);

    CHECK_THROWS_AS(convergence_diagnostics(simulate_batch(c), {10, 200}, default_epsilons()),
                    std::out_of_range);
}

TEST_CASE("valid grid") {
    SUBCASE("resolution 2 keeps the four admissible corners") {
        const std::vector<Params> g = valid_grid(2);
        REQUIRE(g.size() == 4);
        CHECK(g[0].alpha == 0.0);
        CHECK(g[0].beta == 0.0);
        CHECK(g[0].gamma == 0.0);
        CHECK(g[1].alpha == 0.0);
        CHECK(g[1].beta == 1.0);
        CHECK(g[1].gamma == 1.0);
        CHECK(g[2].alpha == 1.0);
        CHECK(g[2].beta == 0.0);
        CHECK(g[2].gamma == 1.0);
        CHECK(g[3].alpha == 1.0);
        CHECK(g[3].beta == 1.0);
        CHECK(g[3].gamma == 1.0);
    }
    SUBCASE("resolution 11 matches an independent filter count") {
        std::size_t expected = 0;
        for (int ia = 0; ia <= 10; ++ia)
            for (int ib = 0; ib <= 10; ++ib)
                for (int ig = 0; ig <= 10; ++ig) {
                    const double a = ia / 10.0, b = ib / 10.0, g = ig / 10.0;
                    if (a <= g && b <= g && g <= 1.0 && g <= a + b) ++expected;
                }
        CHECK(valid_grid(11).size() == expected);
    }
    SUBCASE("every triple passes validation") {
        for (const Params& p : valid_grid(5))
            CHECK_NOTHROW(validate_params(p.alpha, p.beta, p.gamma));
    }
    CHECK_THROWS_AS(valid_grid(1), std::invalid_argument);
}

TEST_CASE("sweep") {
    const fs::path dir = fs::temp_directory_path() / "pyrofield_sweep_test";
    fs::create_directories(dir);
    const fs::path csv = dir / "sweep.csv";
    fs::remove(csv);

    SweepTemplate tmpl;
    tmpl.boundary = Boundary::delta();
    tmpl.n_max = 12;
    tmpl.replicas = 200;
    tmpl.master_seed = 31;
    tmpl.checkpoint = 12;
    const std::vector<Params> grid = valid_grid(2);

    const auto cells = run_sweep(grid, tmpl, csv.string(), false, 2);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].mean_z == 0.0);  // (0,0,0)
    CHECK(cells[0].extinct_frac == 1.0);
    CHECK(cells[3].mean_z == 1.0);  // (1,1,1)
    CHECK(cells[3].extinct_frac == 0.0);

    const std::string first = slurp(csv);
    CHECK(first.starts_with(sweep_csv_header()));

    SUBCASE("rerun is byte-identical") {
        run_sweep(grid, tmpl, csv.string(), false, 1);
        CHECK(slurp(csv) == first);
    }
    SUBCASE("resume on a complete file is a no-op") {
        const auto resumed = run_sweep(grid, tmpl, csv.string(), true, 2);
        CHECK(resumed.empty());
        CHECK(slurp(csv) == first);
    }
    SUBCASE("resume completes a truncated file") {
        // keep header + first two rows
        std::istringstream in(first);
        std::string line, kept;
        for (int i = 0; i < 3 && std::getline(in, line); ++i) kept += line + "\n";
        std::ofstream(csv, std::ios::trunc | std::ios::binary) << kept;
        const auto resumed = run_sweep(grid, tmpl, csv.string(), true, 1);
        CHECK(resumed.size() == 2);
        CHECK(slurp(csv) == first);
    }
}

TEST_CASE("coupled seeds give monotone sweep means along an ordered grid line") {
    SimConfig lo, hi;
    lo.params = validate_params(0.35, 0.35, 0.5);
    hi.params = validate_params(0.6, 0.6, 0.85);
    lo.boundary = hi.boundary = Boundary::delta();
    lo.n_max = hi.n_max = 60;
    lo.master_seed = hi.master_seed = 17;
    double mean_lo = 0.0, mean_hi = 0.0;
    const std::uint64_t replicas = 500;
    for (std::uint64_t r = 0; r < replicas; ++r) {
        const CoupledTrace ct = simulate_coupled(lo, hi, r);
        mean_lo += ct.lo.z(60);
        mean_hi += ct.hi.z(60);
        CHECK(ct.domination_violations == 0);
    }
    CHECK(mean_lo <= mean_hi);
}
