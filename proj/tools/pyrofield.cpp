// pyrofield: exact computation, simulation, sweeps and diagnostics for a
// directed lattice fire-spread field. One executable, one subcommand per
// engine; all randomness flows from --seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pyrofield/analysis.hpp"
#include "pyrofield/errors.hpp"
#include "pyrofield/exact.hpp"
#include "pyrofield/kernels.hpp"
#include "pyrofield/mc.hpp"
#include "pyrofield/model.hpp"
#include "pyrofield/oned.hpp"
#include "pyrofield/rng.hpp"

using json = nlohmann::ordered_json;
using namespace pyrofield;

namespace {

std::vector<std::uint32_t> parse_index_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw CLI::ValidationError("bad index list entry: " + item);
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json params_json(const Params& p) {
    return json{{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
}

json boundary_json(const Boundary& b) {
    return json{{"fire_x", b.fire_x()}, {"fire_y", b.fire_y()}};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

// Shared model flags for subcommands that take the 2-D field.
struct FieldFlags {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    std::string fire_x = "0", fire_y = "0";

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "burn probability, left neighbor only")->required();
        cmd->add_option("--beta", beta, "burn probability, bottom neighbor only")->required();
        cmd->add_option("--gamma", gamma, "burn probability, both neighbors")->required();
        cmd->add_option("--fire-x", fire_x, "comma-separated ignition indices j with S(j,-1)=1")
            ->capture_default_str();
        cmd->add_option("--fire-y", fire_y, "comma-separated ignition indices k with S(-1,k)=1")
            ->capture_default_str();
    }
    Params params() const { return validate_params(alpha, beta, gamma); }
    Boundary boundary() const {
        return Boundary(parse_index_list(fire_x), parse_index_list(fire_y));
    }
};

struct RecordRange {
    std::uint32_t n0 = 0, n1 = 0, stride = 1;
};

RecordRange parse_record(const std::string& s, std::uint32_t n_max) {
    RecordRange r{0, n_max, 1};
    if (s.empty()) return r;
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 3)
        throw CLI::ValidationError("--record expects n0:n1[:stride]");
    r.n0 = static_cast<std::uint32_t>(std::stoul(parts[0]));
    r.n1 = static_cast<std::uint32_t>(std::stoul(parts[1]));
    if (parts.size() == 3) r.stride = static_cast<std::uint32_t>(std::stoul(parts[2]));
    if (r.stride == 0 || r.n1 < r.n0 || r.n1 > n_max)
        throw CLI::ValidationError("--record range invalid for n_max");
    return r;
}

int run_exact(const FieldFlags& field, std::uint32_t n, std::uint32_t n_max_exact,
              const std::string& out_path, const std::string& dist_csv) {
    const Params params = field.params();
    const Boundary boundary = field.boundary();
    ExactOptions opts;
    opts.n_max_exact = n_max_exact;

    DiagonalDistribution dist = initial_distribution(params, boundary);
    for (std::uint32_t d = 0; d < n; ++d)
        dist = step_distribution(params, boundary, dist, opts);
    const YnPmf pmf = yn_pmf(dist);
    pmf.check_normalized();

    json doc;
    doc["n"] = n;
    doc["ez"] = pmf.mean_z();
    doc["pmf"] = pmf.pmf;
    doc["params"] = params_json(params);
    doc["boundary"] = boundary_json(boundary);
    write_output(out_path, doc.dump(2) + "\n");

    if (!dist_csv.empty()) {
        std::ostringstream csv;
        csv << "config_index,probability\n";
        for (std::size_t cfg = 0; cfg < dist.probs.size(); ++cfg)
            csv << cfg << ',' << fmt_double(dist.probs[cfg]) << '\n';
        write_output(dist_csv, csv.str());
    }
    return 0;
}

int run_simulate(const FieldFlags& field, std::uint32_t n_max, std::uint64_t replicas,
                 std::uint64_t seed, const std::string& record, const std::string& out_path,
                 bool no_stop, unsigned threads_flag) {
    SimConfig config;
    config.params = field.params();
    config.boundary = field.boundary();
    config.n_max = n_max;
    config.replicas = replicas;
    config.master_seed = seed;
    config.stop_on_extinction = !no_stop;

    const RecordRange rec = parse_record(record, n_max);
    std::vector<std::uint32_t> rec_ns;
    for (std::uint32_t n = rec.n0; n <= rec.n1; n += rec.stride) rec_ns.push_back(n);

    const unsigned threads = resolve_threads(threads_flag);
    // y_matrix[i][r]: Y at recorded diagonal i for replica r.
    std::vector<std::vector<std::uint32_t>> y_matrix(
        rec_ns.size(), std::vector<std::uint32_t>(replicas, 0));

    parallel_replicas(replicas, threads, [&](std::uint64_t r) {
        std::size_t next_idx = 0;
        std::uint32_t target = rec_ns.empty() ? n_max + 1 : rec_ns[0];
        simulate_replica_observe(config, r, active_kernels(),
                                 [&](std::uint32_t n, std::uint32_t y, const std::uint64_t*) {
                                     if (n != target) return;
                                     y_matrix[next_idx][r] = y;
                                     ++next_idx;
                                     target = next_idx < rec_ns.size() ? rec_ns[next_idx]
                                                                       : n_max + 1;
                                 });
    });

    const bool csv = out_path.size() >= 4 &&
                     out_path.compare(out_path.size() - 4, 4, ".csv") == 0;
    if (csv) {
        std::ostringstream os;
        os << "replica_id,n,y,z\n";
        for (std::uint64_t r = 0; r < replicas; ++r)
            for (std::size_t i = 0; i < rec_ns.size(); ++i) {
                const std::uint32_t n = rec_ns[i];
                const std::uint32_t y = y_matrix[i][r];
                os << r << ',' << n << ',' << y << ','
                   << fmt_double(static_cast<double>(y) / (n + 1)) << '\n';
            }
        write_output(out_path, os.str());
    } else {
        const ConvergenceReport rep =
            convergence_from_matrix(rec_ns, default_epsilons(), y_matrix);
        json doc;
        doc["params"] = params_json(config.params);
        doc["boundary"] = boundary_json(config.boundary);
        doc["n_max"] = n_max;
        doc["replicas"] = replicas;
        doc["seed"] = seed;
        json stats = json::array();
        for (std::size_t i = 0; i < rec_ns.size(); ++i) {
            stats.push_back(json{{"n", rec_ns[i]},
                                 {"mean_z", rep.mean_z[i]},
                                 {"var_z", rep.var_z[i]},
                                 {"quantiles",
                                  json{{"q05", rep.quantiles[i][0]},
                                       {"q25", rep.quantiles[i][1]},
                                       {"q50", rep.quantiles[i][2]},
                                       {"q75", rep.quantiles[i][3]},
                                       {"q95", rep.quantiles[i][4]}}},
                                 {"extinct_frac", rep.extinct_fraction[i]}});
        }
        doc["stats"] = std::move(stats);
        write_output(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int run_sweep_cmd(const std::string& fire_x, const std::string& fire_y,
                  std::uint32_t resolution, std::uint32_t n_max, std::uint64_t replicas,
                  std::uint64_t seed, const std::string& out_path, bool resume,
                  unsigned threads_flag) {
    SweepTemplate tmpl;
    tmpl.boundary = Boundary(parse_index_list(fire_x), parse_index_list(fire_y));
    tmpl.n_max = n_max;
    tmpl.replicas = replicas;
    tmpl.master_seed = seed;
    tmpl.checkpoint = n_max;
    run_sweep(valid_grid(resolution), tmpl, out_path, resume, resolve_threads(threads_flag));
    return 0;
}

int run_oned(double p, std::uint64_t replicas, std::uint64_t seed, std::uint32_t max_tail,
             const std::string& out_path, unsigned threads_flag) {
    const OneDParams params = validate_oned(p);
    const auto [mean, var] = y_moments(params);
    const OneDEmpirical emp =
        simulate_1d(params, replicas, seed, resolve_threads(threads_flag));

    json analytic, empirical, z_scores;
    analytic["mean"] = mean;
    analytic["var"] = var;
    empirical["mean"] = emp.mean();
    empirical["var"] = emp.variance();
    const double se_mean = std::sqrt(var / static_cast<double>(replicas));
    z_scores["mean"] = se_mean > 0 ? (emp.mean() - mean) / se_mean : 0.0;

    json tails_a = json::array(), tails_e = json::array(), tails_z = json::array();
    for (std::uint32_t n = 1; n <= max_tail; ++n) {
        const double t = y_tail(params, n);
        const double f = emp.tail_frequency(n);
        tails_a.push_back(t);
        tails_e.push_back(f);
        const double se = std::sqrt(t * (1.0 - t) / static_cast<double>(replicas));
        tails_z.push_back(se > 0 ? (f - t) / se : 0.0);
    }
    analytic["tails"] = std::move(tails_a);
    empirical["tails"] = std::move(tails_e);
    z_scores["tails"] = std::move(tails_z);

    json doc;
    doc["p"] = p;
    doc["replicas"] = replicas;
    doc["seed"] = seed;
    doc["analytic"] = std::move(analytic);
    doc["empirical"] = std::move(empirical);
    doc["z_scores"] = std::move(z_scores);
    write_output(out_path, doc.dump(2) + "\n");
    return 0;
}

int run_converge(const FieldFlags& field, const std::string& checkpoints_s,
                 const std::string& epsilons_s, std::uint64_t replicas, std::uint64_t seed,
                 const std::string& out_path, unsigned threads_flag) {
    std::vector<std::uint32_t> checkpoints = parse_index_list(checkpoints_s);
    if (checkpoints.empty()) throw CLI::ValidationError("--checkpoints must be non-empty");
    std::vector<double> epsilons = parse_double_list(epsilons_s);
    if (epsilons.empty()) epsilons = default_epsilons();

    SimConfig config;
    config.params = field.params();
    config.boundary = field.boundary();
    config.n_max = *std::max_element(checkpoints.begin(), checkpoints.end());
    config.replicas = replicas;
    config.master_seed = seed;

    std::vector<std::vector<std::uint32_t>> y_matrix(
        checkpoints.size(), std::vector<std::uint32_t>(replicas, 0));
    parallel_replicas(replicas, resolve_threads(threads_flag), [&](std::uint64_t r) {
        std::size_t next_idx = 0;
        simulate_replica_observe(config, r, active_kernels(),
                                 [&](std::uint32_t n, std::uint32_t y, const std::uint64_t*) {
                                     if (next_idx < checkpoints.size() &&
                                         n == checkpoints[next_idx]) {
                                         y_matrix[next_idx][r] = y;
                                         ++next_idx;
                                     }
                                 });
    });

    const ConvergenceReport rep = convergence_from_matrix(checkpoints, epsilons, y_matrix);
    json doc;
    doc["params"] = params_json(config.params);
    doc["boundary"] = boundary_json(config.boundary);
    doc["replicas"] = replicas;
    doc["seed"] = seed;
    doc["checkpoints"] = rep.checkpoints;
    doc["epsilons"] = rep.epsilons;
    doc["mean_z"] = rep.mean_z;
    doc["var_z"] = rep.var_z;
    json q = json::array();
    for (const auto& a : rep.quantiles) q.push_back(std::vector<double>(a.begin(), a.end()));
    doc["quantiles"] = std::move(q);
    doc["extinct_fraction"] = rep.extinct_fraction;
    doc["cauchy_fractions"] = rep.cauchy_fractions;
    write_output(out_path, doc.dump(2) + "\n");
    return 0;
}

// Small built-in cross-check suite; prints one PASS/FAIL line per check.
int run_verify() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail = "") {
        if (ok) {
            std::cout << "PASS " << name << "\n";
        } else {
            std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
            ++failures;
        }
    };

    {
        const auto r = philox::block({0, 0, 0, 0}, {0, 0});
        report("philox-known-answer",
               r == philox::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    }
    {
        bool ok = true;
        std::string detail = "avx2 unavailable, scalar only";
        if (const Kernels* avx = avx2_kernels()) {
            detail.clear();
            const Kernels sc = scalar_kernels();
            std::vector<std::uint32_t> a(4 * 100), b(4 * 100);
            sc.fill(0xABCDEFull, 7, 3, 100, a.data());
            avx->fill(0xABCDEFull, 7, 3, 100, b.data());
            ok = a == b;
        }
        report("kernel-equivalence-fill", ok, detail);
    }
    {
        // DP marginals against brute-force enumeration, n <= 4.
        bool ok = true;
        std::string detail;
        std::uint64_t s = 42;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            const double g = (mix64(s++) >> 11) * 0x1p-53;
            const double a = g * ((mix64(s++) >> 11) * 0x1p-53);
            const double bmin = std::max(0.0, g - a);
            const double b = bmin + (g - bmin) * ((mix64(s++) >> 11) * 0x1p-53);
            const Params p = validate_params(a, b, g);
            const Boundary bd = Boundary::delta();
            const TriangleJoint joint = triangle_enumeration(p, bd, 4);
            DiagonalDistribution dist = initial_distribution(p, bd);
            for (std::uint32_t d = 0; d <= 4 && ok; ++d) {
                if (d > 0) dist = step_distribution(p, bd, dist);
                const DiagonalDistribution m = joint.diagonal_marginal(d);
                for (std::size_t c = 0; c < m.probs.size(); ++c)
                    if (std::abs(m.probs[c] - dist.probs[c]) > 1e-12) {
                        ok = false;
                        detail = "mismatch at diagonal " + std::to_string(d);
                        break;
                    }
            }
        }
        report("oracle-equivalence", ok, detail);
    }
    {
        bool ok = true;
        std::uint64_t s = 77;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            const double g = (mix64(s++) >> 11) * 0x1p-53;
            const double a = g * ((mix64(s++) >> 11) * 0x1p-53);
            const double bmin = std::max(0.0, g - a);
            const double b = bmin + (g - bmin) * ((mix64(s++) >> 11) * 0x1p-53);
            const Params p = validate_params(a, b, g);
            const Boundary bd = Boundary::delta();
            const double lhs = cylinder_probability(
                p, bd, CylinderEvent{{{2, 2, true}, {1, 2, false}, {1, 1, true}}});
            const double rhs =
                p.beta * cylinder_probability(
                             p, bd, CylinderEvent{{{1, 2, false}, {2, 1, true}, {1, 1, true}}});
            ok = std::abs(lhs - rhs) <= 1e-12;
        }
        report("example3-identity", ok);
    }
    {
        const Params p = validate_params(0.5, 0.5, 0.75);
        bool ok = true;
        for (std::uint32_t k = 0; k <= 5 && ok; ++k) {
            const double got =
                cylinder_probability(p, Boundary::delta(), CylinderEvent{{{0, k, true}}});
            ok = std::abs(got - p.gamma * std::pow(p.beta, k)) <= 1e-12;
        }
        report("column-law-exact", ok);
    }
    {
        const OneDParams p{0.5};
        const OneDEmpirical emp = simulate_1d(p, 100000, 20240817);
        const auto [mean, var] = y_moments(p);
        const double se = std::sqrt(var / 100000.0);
        report("oned-closed-form", std::abs(emp.mean() - mean) <= 4 * se);
    }
    {
        const Params p = validate_params(0.5, 0.5, 0.75);
        const Boundary bd = Boundary::delta();
        DiagonalDistribution dist = initial_distribution(p, bd);
        for (std::uint32_t d = 0; d < 6; ++d) dist = step_distribution(p, bd, dist);
        const double exact_ez = yn_pmf(dist).mean_z();

        SimConfig config;
        config.params = p;
        config.boundary = bd;
        config.n_max = 6;
        config.replicas = 20000;
        config.master_seed = 99;
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t r = 0; r < config.replicas; ++r) {
            const double z = simulate_replica(config, r).z(6);
            sum += z;
            sumsq += z * z;
        }
        const double n = static_cast<double>(config.replicas);
        const double mean = sum / n;
        const double se = std::sqrt((sumsq / n - mean * mean) / n);
        report("mc-vs-exact", std::abs(mean - exact_ez) <= 4 * se,
               "mean " + std::to_string(mean) + " vs exact " + std::to_string(exact_ez));
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pyrofield: directed lattice fire-spread field toolkit"};
    app.require_subcommand(1);

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "exact law of one anti-diagonal");
    FieldFlags exact_field;
    exact_field.attach(exact_cmd);
    std::uint32_t exact_n = 0, n_max_exact = 12;
    std::string exact_out, exact_dist_csv;
    exact_cmd->add_option("--n", exact_n, "target diagonal index")->required();
    exact_cmd->add_option("--n-max-exact", n_max_exact, "cap on exact diagonal index")
        ->capture_default_str();
    exact_cmd->add_option("--out", exact_out, "output JSON path (default stdout)");
    exact_cmd->add_option("--dist-csv", exact_dist_csv,
                          "also write the full diagonal distribution as CSV");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "streaming Monte Carlo over diagonals");
    FieldFlags sim_field;
    sim_field.attach(sim_cmd);
    std::uint32_t sim_n_max = 0;
    std::uint64_t sim_replicas = 1, sim_seed = 0;
    std::string sim_record, sim_out;
    bool sim_no_stop = false;
    unsigned sim_threads = 0;
    sim_cmd->add_option("--n-max", sim_n_max, "final diagonal index")->required();
    sim_cmd->add_option("--replicas", sim_replicas, "independent replicas")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "master seed (required: no time-derived seeds)")
        ->required();
    sim_cmd->add_option("--record", sim_record, "diagonal recording range n0:n1[:stride]");
    sim_cmd->add_option("--out", sim_out, "traces.csv or stats.json (default stats to stdout)");
    sim_cmd->add_flag("--no-stop-on-extinction", sim_no_stop,
                      "keep sampling after extinction instead of extending with zeros");
    sim_cmd->add_option("--threads", sim_threads,
                        "worker threads (default: PYROFIELD_THREADS or hardware)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over the valid grid");
    std::uint32_t sweep_res = 0, sweep_n_max = 0;
    std::uint64_t sweep_replicas = 1, sweep_seed = 0;
    std::string sweep_out = "sweep.csv", sweep_fx = "0", sweep_fy = "0";
    bool sweep_resume = false;
    unsigned sweep_threads = 0;
    sweep_cmd->add_option("--resolution", sweep_res, "grid points per axis")->required();
    sweep_cmd->add_option("--n-max", sweep_n_max, "final diagonal (also the checkpoint)")
        ->required();
    sweep_cmd->add_option("--replicas", sweep_replicas, "replicas per cell")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_seed, "master seed")->required();
    sweep_cmd->add_option("--out", sweep_out, "sweep CSV path")->capture_default_str();
    sweep_cmd->add_flag("--resume", sweep_resume, "skip cells already present in --out");
    sweep_cmd->add_option("--fire-x", sweep_fx, "ignition indices j")->capture_default_str();
    sweep_cmd->add_option("--fire-y", sweep_fy, "ignition indices k")->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads");

    // oned
    auto* oned_cmd = app.add_subcommand("oned", "1-D chain: closed forms vs simulation");
    double oned_p = 0.0;
    std::uint64_t oned_replicas = 1, oned_seed = 0;
    std::uint32_t oned_max_tail = 20;
    std::string oned_out;
    unsigned oned_threads = 0;
    oned_cmd->add_option("--p", oned_p, "spread probability")->required();
    oned_cmd->add_option("--replicas", oned_replicas, "replicas")->capture_default_str();
    oned_cmd->add_option("--seed", oned_seed, "master seed")->required();
    oned_cmd->add_option("--max-tail", oned_max_tail, "largest tail index reported")
        ->capture_default_str();
    oned_cmd->add_option("--out", oned_out, "output JSON path (default stdout)");
    oned_cmd->add_option("--threads", oned_threads, "worker threads");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "within-path Cauchy diagnostics for Z_n");
    FieldFlags conv_field;
    conv_field.attach(conv_cmd);
    std::string conv_checkpoints = "250,500,1000,2000";
    std::string conv_epsilons = "0.1,0.05,0.02,0.01";
    std::uint64_t conv_replicas = 1, conv_seed = 0;
    std::string conv_out;
    unsigned conv_threads = 0;
    conv_cmd->add_option("--checkpoints", conv_checkpoints, "comma-separated diagonal indices")
        ->capture_default_str();
    conv_cmd->add_option("--epsilons", conv_epsilons, "comma-separated thresholds")
        ->capture_default_str();
    conv_cmd->add_option("--replicas", conv_replicas, "replicas")->capture_default_str();
    conv_cmd->add_option("--seed", conv_seed, "master seed")->required();
    conv_cmd->add_option("--out", conv_out, "output JSON path (default stdout)");
    conv_cmd->add_option("--threads", conv_threads, "worker threads");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in cross-check suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    }

    try {
        if (exact_cmd->parsed())
            return run_exact(exact_field, exact_n, n_max_exact, exact_out, exact_dist_csv);
        if (sim_cmd->parsed())
            return run_simulate(sim_field, sim_n_max, sim_replicas, sim_seed, sim_record,
                                sim_out, sim_no_stop, sim_threads);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(sweep_fx, sweep_fy, sweep_res, sweep_n_max, sweep_replicas,
                                 sweep_seed, sweep_out, sweep_resume, sweep_threads);
        if (oned_cmd->parsed())
            return run_oned(oned_p, oned_replicas, oned_seed, oned_max_tail, oned_out,
                            oned_threads);
        if (conv_cmd->parsed())
            return run_converge(conv_field, conv_checkpoints, conv_epsilons, conv_replicas,
                                conv_seed, conv_out, conv_threads);
        if (verify_cmd->parsed()) return run_verify();
    } catch (const ConstraintViolation& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const CouplingOrderViolation& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ERROR 2: " << e.what() << "\n";
        return 2;
    } catch (const InternalConsistencyError& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ERROR 1: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
