#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return PYROFIELD_CLI_PATH; }

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "pyrofield_cli_stdout.txt";
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream os;
    os << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), os.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("exact subcommand emits the expected JSON") {
    const RunResult r = run_cli("exact --alpha .5 --beta .5 --gamma .75 --n 6");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc["n"] == 6);
    // golden value from an exact rational evaluation: 31810845/469762048
    CHECK(std::abs(doc["ez"].get<double>() - 0.06771693272250039) < 1e-9);
    CHECK(doc["pmf"].size() == 8);
    CHECK(doc["params"]["gamma"] == 0.75);
    CHECK(doc["boundary"]["fire_x"] == nlohmann::json::array({0}));
}

TEST_CASE("validation errors exit with code 2 and name the inequality") {
    const RunResult r =
        run_cli("simulate --alpha .5 --beta .5 --gamma 2 --n-max 5 --seed 1");
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("ERROR 2") != std::string::npos);
    CHECK(r.stdout_text.find("gamma <= 1") != std::string::npos);

    const RunResult bad_flag = run_cli("simulate --nonsense 3");
    CHECK(bad_flag.exit_code == 2);

    // randomness without --seed is refused
    const RunResult no_seed =
        run_cli("simulate --alpha .5 --beta .5 --gamma .75 --n-max 5");
    CHECK(no_seed.exit_code == 2);
}

TEST_CASE("help runs clean") {
    CHECK(run_cli("--help").exit_code == 0);
    const RunResult r = run_cli("exact --help");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("--n-max-exact") != std::string::npos);
}

TEST_CASE("simulate output is byte-identical across runs and thread counts") {
    const fs::path dir = fs::temp_directory_path() / "pyrofield_cli_test";
    fs::create_directories(dir);
    const std::string base =
        "simulate --alpha .6 --beta .6 --gamma .8 --n-max 60 --replicas 400 --seed 99 ";

    const fs::path t1 = dir / "t1.csv", t2 = dir / "t2.csv", t8 = dir / "t8.csv";
    CHECK(run_cli(base + "--threads 1 --out " + t1.string()).exit_code == 0);
    CHECK(run_cli(base + "--threads 2 --out " + t2.string()).exit_code == 0);
    CHECK(run_cli(base + "--threads 8 --out " + t8.string()).exit_code == 0);
    const std::string ref = slurp(t1);
    CHECK(!ref.empty());
    CHECK(slurp(t2) == ref);
    CHECK(slurp(t8) == ref);

    const fs::path j1 = dir / "s1.json", j2 = dir / "s2.json";
    CHECK(run_cli(base + "--threads 1 --out " + j1.string()).exit_code == 0);
    CHECK(run_cli(base + "--threads 8 --out " + j2.string()).exit_code == 0);
    CHECK(slurp(j1) == slurp(j2));
    const auto doc = nlohmann::json::parse(slurp(j1));
    CHECK(doc["stats"].size() == 61);
    CHECK(doc["stats"][0].contains("mean_z"));
    CHECK(doc["stats"][0]["quantiles"].contains("q95"));
}

TEST_CASE("oned subcommand reports analytic, empirical and z-scores") {
    const RunResult r = run_cli("oned --p 0.5 --replicas 20000 --seed 7");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc["analytic"]["mean"] == 2.0);
    CHECK(doc["analytic"]["tails"].size() == 20);
    CHECK(std::abs(doc["z_scores"]["mean"].get<double>()) < 5.0);
}

TEST_CASE("converge subcommand emits a schema-complete report") {
    const RunResult r = run_cli(
        "converge --alpha .7 --beta .7 --gamma .9 --checkpoints 10,20,40 "
        "--replicas 200 --seed 3");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc["checkpoints"].size() == 3);
    CHECK(doc["cauchy_fractions"].size() == 2);
    CHECK(doc["epsilons"].size() == 4);
    CHECK(doc["quantiles"][0].size() == 5);
}

TEST_CASE("sweep subcommand is deterministic and resumable") {
    const fs::path dir = fs::temp_directory_path() / "pyrofield_cli_sweep";
    fs::create_directories(dir);
    const fs::path csv = dir / "sweep.csv";
    fs::remove(csv);
    const std::string base =
        "sweep --resolution 2 --n-max 10 --replicas 100 --seed 5 --out " + csv.string();
    CHECK(run_cli(base + " --threads 2").exit_code == 0);
    const std::string first = slurp(csv);
    CHECK(run_cli(base + " --threads 8").exit_code == 0);
    CHECK(slurp(csv) == first);
    CHECK(run_cli(base + " --resume").exit_code == 0);
    CHECK(slurp(csv) == first);
}

TEST_CASE("verify subcommand passes") {
    const RunResult r = run_cli("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("PASS") != std::string::npos);
    CHECK(r.stdout_text.find("FAIL") == std::string::npos);
}
