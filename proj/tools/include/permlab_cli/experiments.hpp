#pragma once

#include <string>
#include <vector>

#include "permlab_cli/result_table.hpp"
#include "permlab_cli/run_config.hpp"

namespace permlab::cli {

/// Exact |perm|^2 versus the unbiased pair estimator and the biased
/// squared-mean comparator, per matrix and aggregated, over the (n, L1, d)
/// sweep. Requires exact permanents (n within the Glynn limit).
std::vector<ResultRow> run_perm2_bias(const RunConfig& cfg);

/// Haar-averaged coincidence probability versus N, with the sampling error,
/// the shot-noise benchmark and the N*eps(k) reference line.
std::vector<ResultRow> run_scaling(const RunConfig& cfg);

/// Combined (channel-deleted) correlations versus N, with the analytic
/// large-k value, the effective loss, and a brute-force reference when the
/// combination count is within the oracle guard.
std::vector<ResultRow> run_combined(const RunConfig& cfg);

/// Mean and standard deviation of the analytic rate over a Haar ensemble;
/// the unitary-distinguishability signal.
std::vector<ResultRow> run_conjecture_spread(const RunConfig& cfg);

}  // namespace permlab::cli
