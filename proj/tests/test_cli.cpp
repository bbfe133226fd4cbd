#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "monocone/cone_projection.hpp"
#include "monocone/noise_models.hpp"

#ifndef MONOCONE_CLI_PATH
#error "MONOCONE_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string temp_root() {
    static const std::string root = [] {
        std::string tmpl = "/tmp/monocone-cli-XXXXXX";
        REQUIRE(mkdtemp(tmpl.data()) != nullptr);
        return tmpl;
    }();
    return root;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string base = temp_root() + "/run" + std::to_string(counter++);
    const std::string command = std::string(MONOCONE_CLI_PATH) + " " + args + " >" + base +
                                ".out 2>" + base + ".err";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(base + ".out");
    result.err = slurp(base + ".err");
    return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("project subcommand round-trips sequences") {
    const std::string input = temp_root() + "/seq.txt";
    spit(input, "3 1 2\n1 2 3\n");
    const CliResult r = run_cli("project " + input);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "2 2 2\n1 2 3\n");

    spit(input, "-2,1\n");
    const CliResult nn = run_cli("project --nonneg " + input);
    REQUIRE(nn.exit_code == 0);
    REQUIRE(nn.out == "0 1\n");

    const std::string out_file = temp_root() + "/fit.txt";
    spit(input, "2 1\n");
    const CliResult to_file = run_cli("project " + input + " --out " + out_file);
    REQUIRE(to_file.exit_code == 0);
    REQUIRE(slurp(out_file) == "1.5 1.5\n");
}

TEST_CASE("project subcommand reports input problems") {
    const std::string input = temp_root() + "/bad.txt";
    spit(input, "1 foo 2\n");
    const CliResult bad = run_cli("project " + input);
    REQUIRE(bad.exit_code == 2);
    REQUIRE(bad.err.find("line 1") != std::string::npos);

    spit(input, "1 2\n\n3\n");
    const CliResult blank = run_cli("project " + input);
    REQUIRE(blank.exit_code == 0);
    REQUIRE(blank.out == "1 2\n3\n");
    REQUIRE(blank.err.find("line 2") != std::string::npos);  // warned, not fatal

    const CliResult missing = run_cli("project " + temp_root() + "/does-not-exist.txt");
    REQUIRE(missing.exit_code == 2);
}

TEST_CASE("formula subcommand prints 12 significant digits") {
    REQUIRE(run_cli("formula harmonic n=100").out == "5.18737751764\n");
    REQUIRE(run_cli("formula stat-dim n=2 rho=0.5").out == "1.75\n");
    REQUIRE(run_cli("formula nonneg-stat-dim n=100").out == "2.59368875882\n");
    REQUIRE(run_cli("formula gaussian-lp n=3 p=4").out == "4.08333333333\n");
    REQUIRE(run_cli("formula log-bound k=2 n=10").out == "0.521887582487\n");
    REQUIRE(run_cli("formula block-bound n=5 'blocks=2;3'").out == "0.666666666667\n");

    REQUIRE(run_cli("formula harmonic n=0").exit_code == 2);
    REQUIRE(run_cli("formula harmonic").exit_code == 2);
    REQUIRE(run_cli("formula no-such-formula n=3").exit_code == 2);
    REQUIRE(run_cli("formula stat-dim n=10 rho=2").exit_code == 2);
}

TEST_CASE("verify subcommand writes report files") {
    const std::string prefix = temp_root() + "/reports";
    const CliResult r = run_cli("verify exact-only --seed 7 --out " + prefix);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("suite verdict: pass") != std::string::npos);

    const nlohmann::json reports = nlohmann::json::parse(slurp(prefix + ".json"));
    REQUIRE(reports.is_array());
    REQUIRE(reports.size() == 81);
    for (const auto& report : reports) REQUIRE(report["verdict"] == "pass");

    const auto rows = parse_csv(slurp(prefix + ".csv"));
    REQUIRE(rows.size() == 82);
    REQUIRE(rows[0] == std::vector<std::string>{"experiment_id", "estimate", "std_error",
                                                "theory", "z_score", "ks_statistic",
                                                "verdict"});

    // csv-only mode must not rewrite the json file
    const std::string csv_prefix = temp_root() + "/csvonly";
    REQUIRE(run_cli("verify exact-only --format csv --out " + csv_prefix).exit_code == 0);
    REQUIRE(!slurp(csv_prefix + ".csv").empty());
    REQUIRE(slurp(csv_prefix + ".json").empty());
}

TEST_CASE("verify subcommand accepts config files and rejects unknown suites") {
    REQUIRE(run_cli("verify no-such-suite").exit_code == 2);

    const std::string config = temp_root() + "/suite.json";
    spit(config, R"([{"id": "tiny", "kind": "stat-dim-mc",
                      "noise": "family=iid_gaussian n=8", "p": 2, "reps": 2000}])");
    const std::string prefix = temp_root() + "/custom";
    const CliResult r = run_cli("verify " + config + " --seed 5 --out " + prefix);
    REQUIRE(r.exit_code == 0);
    const nlohmann::json reports = nlohmann::json::parse(slurp(prefix + ".json"));
    REQUIRE(reports.size() == 2);
    REQUIRE(reports[0]["experiment_id"] == "tiny");
    REQUIRE(reports[1]["experiment_id"] == "tiny#avg-identity");

    spit(config, "[{\"kind\": \"stat-dim-mc\"}]");
    REQUIRE(run_cli("verify " + config).exit_code == 2);
}

TEST_CASE("simulate emits streams that match the library") {
    const std::string out_file = temp_root() + "/slopes.csv";
    const CliResult r = run_cli("simulate --family iid_gaussian --n 6 --seed 5 --reps 3 "
                                "--emit slopes --out " + out_file);
    REQUIRE(r.exit_code == 0);

    const auto rows = parse_csv(slurp(out_file));
    REQUIRE(rows.size() == 1 + 3 * 6);
    REQUIRE(rows[0] == std::vector<std::string>{"replicate", "k", "value"});

    const monocone::NoiseSpec spec = monocone::NoiseSpec::iid_gaussian(6, 5);
    std::size_t row = 1;
    for (std::uint64_t rep = 0; rep < 3; ++rep) {
        const auto fitted = monocone::project_monotone(monocone::sample(spec, rep)).fitted;
        for (std::size_t k = 1; k <= 6; ++k, ++row) {
            REQUIRE(rows[row][0] == std::to_string(rep));
            REQUIRE(rows[row][1] == std::to_string(k));
            REQUIRE(std::stod(rows[row][2]) == Catch::Approx(fitted[k - 1]).epsilon(1e-15));
        }
    }
}

TEST_CASE("simulate paths stay above their minorant") {
    const std::string out_file = temp_root() + "/paths.csv";
    const CliResult r = run_cli("simulate --family permutation_of '--values=-1.5;0;0.25;2' "
                                "--seed 9 --reps 4 --emit paths --out " + out_file);
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out_file));
    REQUIRE(rows.size() == 1 + 4 * 5);
    REQUIRE(rows[0] == std::vector<std::string>{"replicate", "t", "S", "C"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double s = std::stod(rows[i][2]);
        const double c = std::stod(rows[i][3]);
        REQUIRE(c <= s + 1e-9);
    }
}

TEST_CASE("simulate validates its arguments") {
    REQUIRE(run_cli("simulate --family iid_gaussian --n 4 --reps 0").exit_code == 2);
    REQUIRE(run_cli("simulate --family iid_gaussian --n 4 --emit bogus").exit_code == 2);
    REQUIRE(run_cli("simulate --family iid_student_t --n 4 --df 2").exit_code == 2);
    REQUIRE(run_cli("simulate --family no-such-family --n 4").exit_code == 2);
}

TEST_CASE("top-level usage errors") {
    REQUIRE(run_cli("").exit_code == 2);
    REQUIRE(run_cli("no-such-subcommand").exit_code == 2);
    REQUIRE(run_cli("--help").exit_code == 0);
}
