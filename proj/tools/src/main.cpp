#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocone/cone_projection.hpp"
#include "monocone/exact_formulas.hpp"
#include "monocone/noise_models.hpp"
#include "monocone/parallel.hpp"
#include "monocone/report_io.hpp"
#include "monocone/suites.hpp"
#include "monocone/walk_geometry.hpp"

#include "CLI11.hpp"

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
  out << content;
}

std::vector<double> parse_number_list(std::string text, char delimiter) {
  for (char& c : text) {
    if (c == delimiter) c = ' ';
  }
  std::istringstream in(text);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed number list '" + text + "'");
  return values;
}

std::string join_sequence(const monocone::RealSequence& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += monocone::format_double_shortest(values[i]);
  }
  return out;
}

int run_project(const std::string& input_path, const std::string& out_path, bool nonneg) {
  std::ifstream in(input_path);
  if (!in) throw std::invalid_argument("cannot open file '" + input_path + "'");

  std::ostream* out = &std::cout;
  std::ofstream out_file;
  if (!out_path.empty()) {
    out_file.open(out_path, std::ios::binary);
    if (!out_file) throw std::invalid_argument("cannot write file '" + out_path + "'");
    out = &out_file;
  }

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<double> y;
    try {
      y = parse_number_list(line, ',');
    } catch (const std::invalid_argument&) {
      std::cerr << "error: line " << line_number << ": cannot parse '" << line << "'\n";
      return kExitUsageError;
    }
    if (y.empty()) {
      std::cerr << "warning: line " << line_number << " is empty, skipped\n";
      continue;
    }
    const monocone::RealSequence fitted =
        nonneg ? monocone::project_nonneg_monotone(y) : monocone::project_monotone(y).fitted;
    *out << join_sequence(fitted) << '\n';
  }
  return 0;
}

class FormulaParams {
 public:
  explicit FormulaParams(const std::vector<std::string>& tokens) {
    for (const std::string& token : tokens) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("expected key=value, got '" + token + "'");
      }
      params_[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }

  double number(const std::string& key) const {
    const std::string& text = raw(key);
    try {
      std::size_t used = 0;
      const double value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return value;
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key + ": cannot parse number '" + text + "'");
    }
  }

  std::size_t count(const std::string& key) const {
    const double value = number(key);
    if (value < 1.0 || value != static_cast<double>(static_cast<std::size_t>(value))) {
      throw std::invalid_argument("parameter " + key + " must be a positive integer");
    }
    return static_cast<std::size_t>(value);
  }

  std::vector<std::size_t> counts(const std::string& key) const {
    std::vector<std::size_t> out;
    const std::string& text = raw(key);
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t stop = std::min(text.find(';', start), text.size());
      FormulaParams one({key + "=" + text.substr(start, stop - start)});
      out.push_back(one.count(key));
      start = stop + 1;
    }
    return out;
  }

  double number_or(const std::string& key, double fallback) const {
    return params_.count(key) ? number(key) : fallback;
  }

 private:
  const std::string& raw(const std::string& key) const {
    const auto it = params_.find(key);
    if (it == params_.end()) {
      throw std::invalid_argument("missing required parameter '" + key + "'");
    }
    return it->second;
  }

  std::map<std::string, std::string> params_;
};

int run_formula(const std::string& name, const std::vector<std::string>& tokens) {
  const FormulaParams params(tokens);
  double value = 0.0;
  if (name == "harmonic") {
    value = monocone::harmonic(params.count("n"));
  } else if (name == "stat-dim") {
    value = monocone::statistical_dimension(params.count("n"), params.number_or("rho", 0.0));
  } else if (name == "nonneg-stat-dim") {
    value =
        monocone::nonneg_statistical_dimension(params.count("n"), params.number_or("rho", 0.0));
  } else if (name == "gaussian-lp") {
    value = monocone::gaussian_lp_projection_norm(params.count("n"), params.number("p"));
  } else if (name == "log-bound") {
    value = monocone::log_form_risk_bound(params.count("k"), params.count("n"),
                                          params.number_or("sigma", 1.0));
  } else if (name == "block-bound") {
    monocone::RiskBoundInput input;
    input.block_lengths = params.counts("blocks");
    input.n = params.count("n");
    input.rho = params.number_or("rho", 0.0);
    input.sigma = params.number_or("sigma", 1.0);
    value = monocone::sharp_mse_block_bound(input);
  } else {
    throw std::invalid_argument(
        "unknown formula '" + name +
        "' (expected harmonic, stat-dim, nonneg-stat-dim, gaussian-lp, log-bound or "
        "block-bound)");
  }
  std::printf("%.12g\n", value);
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::optional<std::int64_t> reps,
               unsigned threads, const std::string& format, const std::string& out_prefix) {
  std::vector<monocone::ExperimentConfig> configs;
  if (monocone::is_named_suite(suite)) {
    configs = monocone::named_suite(suite);
  } else {
    configs = monocone::parse_suite_config(read_file(suite));
  }

  monocone::SuiteOptions options;
  options.seed = seed;
  options.reps_override = reps;
  options.threads = threads;
  const monocone::SuiteResult result = monocone::run_suite(configs, options);

  write_file(out_prefix + ".csv", monocone::reports_to_csv(result.reports));
  if (format == "json") {
    write_file(out_prefix + ".json", monocone::reports_to_json(result.reports));
  }

  for (const monocone::ExperimentReport& report : result.reports) {
    std::printf("%s  %s  (%.2fs)\n", report.pass ? "pass" : "FAIL",
                report.experiment_id.c_str(), report.wall_time_s);
  }
  std::printf("suite verdict: %s (%zu exact checks, %zu failed; %zu statistical checks, %zu "
              "failed)\n",
              result.pass ? "pass" : "fail", result.exact_checks, result.exact_failures,
              result.statistical_checks, result.statistical_failures);
  return result.pass ? 0 : kExitVerificationFailure;
}

struct SimulateArgs {
  std::string family = "iid_gaussian";
  std::size_t n = 0;
  double df = 0.0;
  double rho = 0.0;
  std::string values;
  std::uint64_t seed = 7;
  std::int64_t reps = 1;
  std::string emit = "slopes";
  std::string out_path;
};

monocone::NoiseSpec spec_from_args(const SimulateArgs& args) {
  const monocone::NoiseFamily family = monocone::family_from_name(args.family);
  switch (family) {
    case monocone::NoiseFamily::iid_gaussian:
      return monocone::NoiseSpec::iid_gaussian(args.n, args.seed);
    case monocone::NoiseFamily::iid_rademacher:
      return monocone::NoiseSpec::iid_rademacher(args.n, args.seed);
    case monocone::NoiseFamily::iid_uniform:
      return monocone::NoiseSpec::iid_uniform(args.n, args.seed);
    case monocone::NoiseFamily::iid_centered_exponential:
      return monocone::NoiseSpec::iid_centered_exponential(args.n, args.seed);
    case monocone::NoiseFamily::iid_student_t:
      return monocone::NoiseSpec::iid_student_t(args.n, args.df, args.seed);
    case monocone::NoiseFamily::equicorrelated_gaussian:
      return monocone::NoiseSpec::equicorrelated_gaussian(args.n, args.rho, args.seed);
    case monocone::NoiseFamily::permutation_of:
      return monocone::NoiseSpec::permutation_of(parse_number_list(args.values, ';'), args.seed);
  }
  throw std::invalid_argument("unknown noise family");
}

int run_simulate(const SimulateArgs& args) {
  const monocone::NoiseSpec spec = spec_from_args(args);

  std::ostream* out = &std::cout;
  std::ofstream out_file;
  if (!args.out_path.empty()) {
    out_file.open(args.out_path, std::ios::binary);
    if (!out_file) throw std::invalid_argument("cannot write file '" + args.out_path + "'");
    out = &out_file;
  }

  if (args.emit == "paths") {
    *out << "replicate,t,S,C\n";
  } else {
    *out << "replicate,k,value\n";
  }

  for (std::int64_t rep = 0; rep < args.reps; ++rep) {
    const monocone::RealSequence z = monocone::sample(spec, static_cast<std::uint64_t>(rep));
    if (args.emit == "slopes") {
      const monocone::RealSequence fitted = monocone::project_monotone(z).fitted;
      for (std::size_t k = 0; k < fitted.size(); ++k) {
        *out << rep << ',' << k + 1 << ',' << monocone::format_double_shortest(fitted[k])
             << '\n';
      }
    } else if (args.emit == "averages") {
      const monocone::RealSequence averages = monocone::running_averages(z);
      for (std::size_t k = 0; k < averages.size(); ++k) {
        *out << rep << ',' << k + 1 << ',' << monocone::format_double_shortest(averages[k])
             << '\n';
      }
    } else {
      const monocone::WalkPath path = monocone::cumulative_sums(z);
      const monocone::ConvexMinorant gcm = monocone::greatest_convex_minorant(path);
      double minorant = 0.0;
      for (std::size_t i = 0; i < path.partial_sums.size(); ++i) {
        if (i > 0) minorant += gcm.slopes[i - 1];
        *out << rep << ',' << monocone::format_double_shortest(path.time_at(i)) << ','
             << monocone::format_double_shortest(path.partial_sums[i]) << ','
             << monocone::format_double_shortest(i == 0 ? 0.0 : minorant) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotonic least-squares projection, exact risk formulas for exchangeable noise, "
               "and a Monte Carlo / exact-enumeration verification harness"};
  app.require_subcommand(1);

  std::string project_input;
  std::string project_out;
  bool project_nonneg = false;
  CLI::App* project = app.add_subcommand(
      "project", "Isotonic fit of each line of a numeric input file");
  project->add_option("input", project_input, "file with one sequence per line")->required();
  project->add_flag("--nonneg", project_nonneg, "project onto the non-negative monotone cone");
  project->add_option("--out", project_out, "output file (default: stdout)");

  std::string formula_name;
  std::vector<std::string> formula_params;
  CLI::App* formula =
      app.add_subcommand("formula", "Print a closed-form quantity with 12 significant digits");
  formula->add_option("name", formula_name,
                      "harmonic | stat-dim | nonneg-stat-dim | gaussian-lp | log-bound | "
                      "block-bound")
      ->required();
  formula->add_option("params", formula_params, "key=value parameters, e.g. n=100 rho=0");

  std::string verify_suite;
  std::uint64_t verify_seed = 7;
  std::int64_t verify_reps = 0;
  unsigned verify_threads = monocone::default_thread_count();
  std::string verify_format = "json";
  std::string verify_out = "reports";
  CLI::App* verify =
      app.add_subcommand("verify", "Run a verification suite and write report files");
  verify->add_option("suite", verify_suite,
                     "default | exact-only | gaussian | exchangeable | cts, or a JSON config "
                     "path")
      ->required();
  verify->add_option("--seed", verify_seed, "suite master seed (default 7)");
  CLI::Option* reps_option =
      verify->add_option("--reps", verify_reps, "override replicate counts (statistical checks)")
          ->check(CLI::PositiveNumber);
  verify->add_option("--threads", verify_threads, "worker threads for replicate parallelism")
      ->envname("MONOCONE_THREADS")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", verify_format, "json writes PREFIX.json and PREFIX.csv; csv "
                                                "writes only PREFIX.csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", verify_out, "report file prefix (default: reports)");

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Stream per-replicate quantities as CSV rows");
  simulate->add_option("--family", sim.family, "noise family name");
  simulate->add_option("--n", sim.n, "sequence length");
  simulate->add_option("--df", sim.df, "degrees of freedom (iid_student_t)");
  simulate->add_option("--rho", sim.rho, "pairwise correlation (equicorrelated_gaussian)");
  simulate->add_option("--values", sim.values, "semicolon-separated fixed vector "
                                               "(permutation_of)");
  simulate->add_option("--seed", sim.seed, "noise master seed (default 7)");
  simulate->add_option("--reps", sim.reps, "number of replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--emit", sim.emit, "slopes | averages | paths")
      ->check(CLI::IsMember({"slopes", "averages", "paths"}));
  simulate->add_option("--out", sim.out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (*project) return run_project(project_input, project_out, project_nonneg);
    if (*formula) return run_formula(formula_name, formula_params);
    if (*verify) {
      std::optional<std::int64_t> reps;
      if (reps_option->count() > 0) reps = verify_reps;
      return run_verify(verify_suite, verify_seed, reps, verify_threads, verify_format,
                        verify_out);
    }
    if (*simulate) return run_simulate(sim);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  return kExitUsageError;
}
