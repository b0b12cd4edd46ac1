#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlab/phase.hpp"

namespace permlab::cli {

enum class ExperimentKind {
  perm2_bias,
  scaling,
  combined,
  conjecture_spread,
  verify_oracles,
};

const char* experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

/// One expanded sweep point. Points enumerate the Cartesian product of the
/// configured (n, L1, d) lists, n outermost, d innermost; `index` is the
/// position in that order and seeds the point's estimator streams.
struct SweepPoint {
  std::size_t n;
  std::uint64_t l1;
  PhaseConfig d;
  std::size_t index;
};

/// Experiment manifest. Loaded from a JSON document; command-line flags
/// override the corresponding keys.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::verify_oracles;
  bool experiment_explicit = false;  // true when the JSON named it

  std::vector<std::size_t> n_values{6};
  double k = 2.0;
  std::vector<PhaseConfig> d_values{PhaseConfig::discrete(2)};
  std::vector<std::uint64_t> l1_values{1000};
  std::uint64_t l2 = 100;
  std::size_t n_matrices = 1;
  double t = 1.0;
  std::vector<std::size_t> deleted;  // empty => last channel for combined runs
  std::uint64_t seed = 1;
  std::string output_path;
  unsigned threads = 0;  // 0 = hardware parallelism
  bool to_stdout = false;
  std::string unitary_file;  // optional pinned unitary (n_matrices must be 1)

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  /// Resolved manifest as a JSON document (echoed into run metadata).
  std::string to_json() const;

  /// Cartesian sweep expansion; throws config_error on empty sweeps.
  std::vector<SweepPoint> expand_sweep() const;

  /// Mode count for a photon count, validating integral k*n.
  std::size_t modes_for(std::size_t n) const;

  unsigned effective_threads() const;
};

}  // namespace permlab::cli
