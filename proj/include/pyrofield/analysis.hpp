#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pyrofield/mc.hpp"
#include "pyrofield/model.hpp"

namespace pyrofield {

// Within-path convergence diagnostics for Z_n. Evidence only: reports
// never claim the limit exists.
struct ConvergenceReport {
    std::vector<std::uint32_t> checkpoints;
    std::vector<double> mean_z;
    std::vector<double> var_z;                      // across replicas
    std::vector<std::array<double, 5>> quantiles;   // 5, 25, 50, 75, 95
    std::vector<double> extinct_fraction;
    std::vector<double> epsilons;
    // cauchy_fractions[i][e]: fraction of replicas with
    // |Z_{c[i+1]} - Z_{c[i]}| > epsilons[e], differences taken on the
    // same path.
    std::vector<std::vector<double>> cauchy_fractions;
};

inline const std::vector<double>& default_epsilons() {
    static const std::vector<double> eps{0.1, 0.05, 0.02, 0.01};
    return eps;
}

// y_by_checkpoint[i][r] = Y at checkpoint i for replica r.
ConvergenceReport convergence_from_matrix(const std::vector<std::uint32_t>& checkpoints,
                                          const std::vector<double>& epsilons,
                                          const std::vector<std::vector<std::uint32_t>>& y_by_checkpoint);

ConvergenceReport convergence_diagnostics(const std::vector<ReplicaTrace>& traces,
                                          const std::vector<std::uint32_t>& checkpoints,
                                          const std::vector<double>& epsilons);

// Uniform lattice over [0,1]^3 filtered by the validity inequalities,
// lexicographic in (alpha, beta, gamma).
std::vector<Params> valid_grid(std::uint32_t resolution);

struct SweepTemplate {
    Boundary boundary = Boundary::delta();
    std::uint32_t n_max = 0;
    std::uint64_t replicas = 1;
    std::uint64_t master_seed = 0;
    std::uint32_t checkpoint = 0;  // diagonal at which cell stats are taken
};

struct SweepCell {
    Params params;
    std::uint32_t checkpoint = 0;
    double mean_z = 0.0;
    double var_z = 0.0;
    double extinct_frac = 0.0;
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
};

// One simulation batch for one grid cell; seed derived from the master
// seed and the cell's grid position.
SweepCell run_sweep_cell(const Params& params, const SweepTemplate& tmpl,
                         std::size_t cell_index, unsigned threads = 1);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepCell& cell);

// Runs the whole grid, appending each completed cell's row to csv_path.
// With resume, cells already present in the file are skipped and the
// existing rows are left untouched.
std::vector<SweepCell> run_sweep(const std::vector<Params>& grid, const SweepTemplate& tmpl,
                                 const std::string& csv_path, bool resume,
                                 unsigned threads = 1);

}  // namespace pyrofield
