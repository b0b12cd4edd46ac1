#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "permlab/errors.hpp"
#include "permlab_cli/experiments.hpp"
#include "permlab_cli/result_table.hpp"
#include "permlab_cli/run_config.hpp"
#include "permlab_cli/verify.hpp"

namespace {

using namespace permlab;
using namespace permlab::cli;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitOracleFailure = 2;
constexpr int kExitGuard = 3;

struct CommandOptions {
  std::string config_path;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_threads = false;
  unsigned threads = 0;
  std::string out_path;
  bool to_stdout = false;
};

int run_experiment(ExperimentKind kind, const CommandOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : RunConfig::from_json_file(opts.config_path);
  if (cfg.experiment_explicit && cfg.experiment != kind) {
    throw config_error(std::string("config names experiment '") +
                       experiment_name(cfg.experiment) + "' but the subcommand is '" +
                       experiment_name(kind) + "'");
  }
  cfg.experiment = kind;
  if (opts.has_seed) cfg.seed = opts.seed;
  if (opts.has_threads) cfg.threads = opts.threads;
  if (!opts.out_path.empty()) cfg.output_path = opts.out_path;
  cfg.to_stdout = opts.to_stdout;

  const auto start = std::chrono::steady_clock::now();

  if (kind == ExperimentKind::verify_oracles) {
    const VerifyReport report = run_verify_oracles(cfg);
    for (const auto& suite : report.suites) {
      if (suite.passed) {
        std::cout << "ok   " << suite.name << '\n';
      } else {
        std::cout << "FAIL " << suite.name << ": " << suite.detail << '\n';
      }
    }
    std::cout << (report.all_passed() ? "all suites passed" : "oracle suite failure") << '\n';
    return report.all_passed() ? kExitOk : kExitOracleFailure;
  }

  std::vector<ResultRow> rows;
  switch (kind) {
    case ExperimentKind::perm2_bias: rows = run_perm2_bias(cfg); break;
    case ExperimentKind::scaling: rows = run_scaling(cfg); break;
    case ExperimentKind::combined: rows = run_combined(cfg); break;
    case ExperimentKind::conjecture_spread: rows = run_conjecture_spread(cfg); break;
    case ExperimentKind::verify_oracles: break;
  }
  require_all_finite(rows);

  const auto stop = std::chrono::steady_clock::now();
  RunMetadata meta;
  meta.experiment = experiment_name(kind);
  meta.config_echo_json = cfg.to_json();
  meta.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  meta.row_count = rows.size();
  meta.threads = cfg.effective_threads();

  if (!cfg.output_path.empty()) {
    write_outputs(rows, meta, cfg.output_path);
    std::cerr << "permlab: wrote " << cfg.output_path << ".csv (" << rows.size() << " rows)\n";
  }
  if (cfg.to_stdout) {
    std::cout << to_csv(rows);
  } else if (cfg.output_path.empty()) {
    std::cerr << "permlab: no --out or --stdout given; results discarded\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "permlab: phase-space Monte Carlo estimators for permanents and photonic "
      "coincidence correlations"};
  app.require_subcommand(1);

  const struct {
    ExperimentKind kind;
    const char* help;
    bool config_required;
  } commands[] = {
      {ExperimentKind::perm2_bias,
       "Exact vs sampled |perm|^2 with error statistics over an (n, L1, d) sweep", true},
      {ExperimentKind::scaling, "Haar-averaged coincidence probability vs N with error scaling",
       true},
      {ExperimentKind::combined, "Combined channel-deleted correlations vs the analytic value",
       true},
      {ExperimentKind::conjecture_spread,
       "Ensemble mean and spread of the analytic channel-deleted rate", true},
      {ExperimentKind::verify_oracles, "Run the oracle property suites and report pass/fail",
       false},
  };

  struct BoundCommand {
    ExperimentKind kind;
    CommandOptions opts;
    CLI::App* sub;
  };
  std::vector<BoundCommand> bound;
  bound.reserve(std::size(commands));
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(permlab::cli::experiment_name(cmd.kind), cmd.help);
    bound.push_back({cmd.kind, {}, sub});
    auto& opts = bound.back().opts;
    auto* config_opt =
        sub->add_option("--config", opts.config_path, "JSON experiment manifest");
    if (cmd.config_required) config_opt->required();
    sub->add_option("--seed", opts.seed, "Master seed (overrides the config)")
        ->each([&opts](const std::string&) { opts.has_seed = true; });
    sub->add_option("--threads", opts.threads,
                    "Worker threads; 0 = hardware parallelism (overrides the config)")
        ->each([&opts](const std::string&) { opts.has_threads = true; });
    sub->add_option("--out", opts.out_path, "Output path stem for .csv/.json/.meta.json");
    sub->add_flag("--stdout", opts.to_stdout, "Write the CSV to standard output");
  }
  app.footer(
      "Sweeps: n, L1 and d accept arrays (or {\"from\",\"to\"} for n/L1) and expand as a\n"
      "Cartesian product, n outermost, d innermost. Identical configs and seeds produce\n"
      "byte-identical CSVs for any --threads value.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& cmd : bound) {
      if (cmd.sub->parsed()) return run_experiment(cmd.kind, cmd.opts);
    }
    std::cerr << "permlab: no subcommand selected\n";
    return kExitConfig;
  } catch (const config_error& e) {
    std::cerr << "permlab: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const invalid_selection_error& e) {
    std::cerr << "permlab: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const size_limit_error& e) {
    std::cerr << "permlab: numerical guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "permlab: error: " << e.what() << '\n';
    return kExitGuard;
  }
}
