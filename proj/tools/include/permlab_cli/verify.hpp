#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "permlab_cli/run_config.hpp"

namespace permlab::cli {

/// All elementary symmetric polynomials e_0..e_n of the given values by the
/// product-expansion recurrence. Independent of the Fourier-extraction route
/// it is used to check.
std::vector<std::complex<double>> elementary_symmetric_polynomials(
    std::span<const std::complex<double>> values);

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;  // empty on success
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool all_passed() const;
};

/// Runs the oracle property suites: unitarity gates, exact-permanent
/// equivalences, Fourier-extraction exactness, partition identities and the
/// statistical unbiasedness batteries. The optional pinned unitary from the
/// config is pushed through the unitarity gate.
VerifyReport run_verify_oracles(const RunConfig& cfg);

}  // namespace permlab::cli
