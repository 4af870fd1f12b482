#include "pyrofield/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pyrofield/errors.hpp"
#include "pyrofield/rng.hpp"

namespace pyrofield {

namespace {

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

std::array<double, 5> quantiles_of_sorted(const std::vector<double>& sorted) {
    static constexpr double qs[5] = {0.05, 0.25, 0.50, 0.75, 0.95};
    std::array<double, 5> out{};
    const std::size_t n = sorted.size();
    for (int i = 0; i < 5; ++i) {
        const auto idx = static_cast<std::size_t>(
            std::llround(qs[i] * static_cast<double>(n - 1)));
        out[i] = sorted[idx];
    }
    return out;
}

}  // namespace

ConvergenceReport convergence_from_matrix(
    const std::vector<std::uint32_t>& checkpoints, const std::vector<double>& epsilons,
    const std::vector<std::vector<std::uint32_t>>& y_by_checkpoint) {
    if (checkpoints.size() != y_by_checkpoint.size())
        throw std::invalid_argument("checkpoint count mismatch");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");

    ConvergenceReport rep;
    rep.checkpoints = checkpoints;
    rep.epsilons = epsilons;

    std::vector<std::vector<double>> z(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const auto& ys = y_by_checkpoint[i];
        z[i].reserve(ys.size());
        const double denom = static_cast<double>(checkpoints[i]) + 1.0;
        std::uint64_t extinct = 0;
        double sum = 0.0;
        for (std::uint32_t y : ys) {
            const double zz = static_cast<double>(y) / denom;
            z[i].push_back(zz);
            sum += zz;
            if (y == 0) ++extinct;
        }
        const double mean = ys.empty() ? 0.0 : sum / static_cast<double>(ys.size());
        rep.mean_z.push_back(mean);
        rep.var_z.push_back(sample_variance(z[i], mean));
        rep.extinct_fraction.push_back(
            ys.empty() ? 0.0 : static_cast<double>(extinct) / static_cast<double>(ys.size()));
        std::vector<double> sorted = z[i];
        std::sort(sorted.begin(), sorted.end());
        rep.quantiles.push_back(sorted.empty() ? std::array<double, 5>{}
                                               : quantiles_of_sorted(sorted));
    }

    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
        if (z[i].size() != z[i + 1].size())
            throw std::invalid_argument("replica count differs across checkpoints");
        std::vector<double> fracs;
        for (double eps : epsilons) {
            std::uint64_t over = 0;
            for (std::size_t r = 0; r < z[i].size(); ++r)
                if (std::abs(z[i + 1][r] - z[i][r]) > eps) ++over;
            fracs.push_back(z[i].empty()
                                ? 0.0
                                : static_cast<double>(over) / static_cast<double>(z[i].size()));
        }
        rep.cauchy_fractions.push_back(std::move(fracs));
    }
    return rep;
}

ConvergenceReport convergence_diagnostics(const std::vector<ReplicaTrace>& traces,
                                          const std::vector<std::uint32_t>& checkpoints,
                                          const std::vector<double>& epsilons) {
    std::vector<std::vector<std::uint32_t>> ys(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        ys[i].reserve(traces.size());
        for (const auto& t : traces) {
            if (checkpoints[i] >= t.y.size())
                throw std::out_of_range("checkpoint beyond trace length");
            ys[i].push_back(t.y[checkpoints[i]]);
        }
    }
    return convergence_from_matrix(checkpoints, epsilons, ys);
}

std::vector<Params> valid_grid(std::uint32_t resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    std::vector<Params> grid;
    const double denom = static_cast<double>(resolution - 1);
    for (std::uint32_t ia = 0; ia < resolution; ++ia)
        for (std::uint32_t ib = 0; ib < resolution; ++ib)
            for (std::uint32_t ig = 0; ig < resolution; ++ig) {
                const double a = ia / denom, b = ib / denom, g = ig / denom;
                try {
                    grid.push_back(validate_params(a, b, g));
                } catch (const ConstraintViolation&) {
                }
            }
    return grid;
}

SweepCell run_sweep_cell(const Params& params, const SweepTemplate& tmpl,
                         std::size_t cell_index, unsigned threads) {
    if (tmpl.checkpoint > tmpl.n_max)
        throw std::invalid_argument("sweep checkpoint beyond n_max");
    SweepCell cell;
    cell.params = params;
    cell.checkpoint = tmpl.checkpoint;
    cell.replicas = tmpl.replicas;
    cell.seed = mix64(tmpl.master_seed ^ (0x5EEDull * (cell_index + 1)));

    SimConfig config;
    config.params = params;
    config.boundary = tmpl.boundary;
    config.n_max = tmpl.n_max;
    config.replicas = tmpl.replicas;
    config.master_seed = cell.seed;

    std::vector<std::uint32_t> y_at(tmpl.replicas, 0);
    parallel_replicas(tmpl.replicas, threads, [&](std::uint64_t r) {
        const ReplicaTrace t = simulate_replica(config, r);
        y_at[r] = t.y[tmpl.checkpoint];
    });

    const double denom = static_cast<double>(tmpl.checkpoint) + 1.0;
    std::vector<double> z;
    z.reserve(tmpl.replicas);
    std::uint64_t extinct = 0;
    double sum = 0.0;
    for (std::uint32_t y : y_at) {
        z.push_back(static_cast<double>(y) / denom);
        sum += z.back();
        if (y == 0) ++extinct;
    }
    cell.mean_z = sum / static_cast<double>(tmpl.replicas);
    cell.var_z = sample_variance(z, cell.mean_z);
    cell.extinct_frac = static_cast<double>(extinct) / static_cast<double>(tmpl.replicas);
    return cell;
}

namespace {
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

std::string sweep_csv_header() {
    return "alpha,beta,gamma,checkpoint,mean_z,var_z,extinct_frac,replicas,seed\n";
}

std::string sweep_csv_row(const SweepCell& c) {
    std::ostringstream os;
    os << fmt_double(c.params.alpha) << ',' << fmt_double(c.params.beta) << ','
       << fmt_double(c.params.gamma) << ',' << c.checkpoint << ','
       << fmt_double(c.mean_z) << ',' << fmt_double(c.var_z) << ','
       << fmt_double(c.extinct_frac) << ',' << c.replicas << ',' << c.seed << '\n';
    return os.str();
}

std::vector<SweepCell> run_sweep(const std::vector<Params>& grid, const SweepTemplate& tmpl,
                                 const std::string& csv_path, bool resume,
                                 unsigned threads) {
    // Key completed cells by their formatted parameter columns.
    std::set<std::string> done;
    if (resume) {
        std::ifstream in(csv_path);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                first = false;
                continue;
            }
            std::size_t p = 0, commas = 0;
            while (commas < 3 && p != std::string::npos) {
                p = line.find(',', p);
                if (p != std::string::npos) {
                    ++commas;
                    ++p;
                }
            }
            if (commas == 3 && p != std::string::npos && p > 0)
                done.insert(line.substr(0, p - 1));
        }
    }

    const bool fresh = !resume || done.empty();
    std::ofstream out;
    bool out_open = false;
    auto ensure_open = [&] {
        if (out_open) return;
        out.open(csv_path, fresh ? std::ios::trunc : std::ios::app);
        if (!out) throw std::runtime_error("cannot open sweep output: " + csv_path);
        if (fresh) out << sweep_csv_header();
        out_open = true;
    };

    std::vector<SweepCell> cells;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string key = fmt_double(grid[i].alpha) + "," + fmt_double(grid[i].beta) +
                                "," + fmt_double(grid[i].gamma);
        if (done.contains(key)) continue;
        const SweepCell cell = run_sweep_cell(grid[i], tmpl, i, threads);
        cells.push_back(cell);
        ensure_open();
        out << sweep_csv_row(cell);
        out.flush();  // a killed sweep resumes from the last full row
    }
    return cells;
}

}  // namespace pyrofield
