#include "permlab_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permlab/correlations.hpp"
#include "permlab/errors.hpp"
#include "permlab/estimators.hpp"
#include "permlab/haar.hpp"
#include "permlab/matrix_io.hpp"
#include "permlab/permanent.hpp"
#include "permlab/rng.hpp"

namespace permlab::cli {

std::vector<Complex> elementary_symmetric_polynomials(std::span<const Complex> values) {
  std::vector<Complex> e(values.size() + 1, Complex{0.0, 0.0});
  e[0] = Complex{1.0, 0.0};
  std::size_t filled = 0;
  for (const Complex& v : values) {
    ++filled;
    for (std::size_t j = std::min(filled, e.size() - 1); j >= 1; --j) e[j] += v * e[j - 1];
  }
  return e;
}

bool VerifyReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

namespace {

ComplexMatrix random_complex_matrix(std::size_t n, RandomStream& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      m.entry(r, c) = Complex{re, im};
    }
  return m;
}

SuiteResult suite_unitarity_gate(const RunConfig& cfg) {
  SuiteResult result{"unitarity-gate", true, ""};
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::generic, 1));
  for (const std::size_t m : {4u, 8u, 16u}) {
    const ComplexMatrix u = haar_random_unitary(m, rng);
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
      result.passed = false;
      result.detail = "haar defect " + std::to_string(defect) + " at m=" + std::to_string(m);
      return result;
    }
    for (std::size_t r = 0; r < m; ++r) {
      double row_sum = 0.0;
      for (std::size_t c = 0; c < m; ++c) row_sum += std::norm(u(r, c));
      if (std::abs(row_sum - 1.0) > 1e-10) {
        result.passed = false;
        result.detail = "row norm deviation at m=" + std::to_string(m);
        return result;
      }
    }
  }
  if (!cfg.unitary_file.empty()) {
    const ComplexMatrix u = load_matrix_json(cfg.unitary_file);
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
      result.passed = false;
      result.detail = "pinned unitary fails the gate: defect " + std::to_string(defect);
    }
  }
  return result;
}

SuiteResult suite_glynn_matches_naive(const RunConfig& cfg) {
  SuiteResult result{"glynn-matches-naive", true, ""};
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::generic, 2));
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 1 + rng.next_index(trial < 100 ? 7 : 9);
    const ComplexMatrix m = random_complex_matrix(n, rng);
    const Complex glynn = permanent_glynn(m);
    const Complex naive = permanent_naive(m);
    const double denom = std::max(1e-300, std::abs(naive));
    if (std::abs(glynn - naive) / denom > 1e-10) {
      result.passed = false;
      result.detail = "divergence at n=" + std::to_string(n);
      return result;
    }
  }
  return result;
}

SuiteResult suite_permanent_scaling(const RunConfig& cfg) {
  SuiteResult result{"permanent-scale-law", true, ""};
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::generic, 3));
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.next_index(5);
    const ComplexMatrix m = random_complex_matrix(n, rng);
    const double c = std::sqrt(0.25);  // sqrt(t) amplitude factor
    const Complex scaled = permanent_glynn(m.scaled(Complex{c, 0.0}));
    const Complex expected = std::pow(c, static_cast<double>(n)) * permanent_glynn(m);
    if (std::abs(scaled - expected) > 1e-10 * std::max(1.0, std::abs(expected))) {
      result.passed = false;
      result.detail = "perm(cM) != c^N perm(M) at n=" + std::to_string(n);
      return result;
    }
  }
  return result;
}

SuiteResult suite_fourier_extraction(const RunConfig& cfg) {
  SuiteResult result{"fourier-extraction", true, ""};
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::generic, 4));
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng.next_index(20);
    std::vector<Complex> m(len);
    for (auto& v : m) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      v = Complex{re, im};
    }
    const FourierExtractor extractor(len + 1);
    const auto exact = elementary_symmetric_polynomials(m);

    // The extraction order a correlation instance would use: 1e-10 relative.
    const std::size_t target = rng.next_index(len + 1);
    const Complex got = extractor.extract(m, target);
    if (std::abs(got - exact[target]) / std::max(1e-300, std::abs(exact[target])) > 1e-10) {
      result.passed = false;
      result.detail = "order " + std::to_string(target) + " of " + std::to_string(len);
      return result;
    }
    // Every coefficient of the expansion, within the DFT's conditioning.
    for (std::size_t order = 0; order <= len; ++order) {
      const Complex all = extractor.extract(m, order);
      const double denom = std::max(1e-300, std::abs(exact[order]));
      if (std::abs(all - exact[order]) / denom > 1e-8) {
        result.passed = false;
        result.detail = "coefficient sweep, order " + std::to_string(order);
        return result;
      }
    }
  }
  return result;
}

SuiteResult suite_partition_identity(const RunConfig& cfg) {
  SuiteResult result{"partition-identity", true, ""};
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::generic, 5));
  const std::size_t m_modes = 10, n = 3, p = m_modes - 1;
  const TransmissionMatrix t(haar_random_unitary(m_modes, rng));
  const ChannelSet sigma = ChannelSet::first_n(n, m_modes);

  const CorrelationSpec full(m_modes, sigma, ChannelSet({}, m_modes));
  const CorrelationSpec without_p(m_modes, sigma, ChannelSet({p}, m_modes));
  const double c_full = combined_correlation_exact(t, full);
  const double c_deleted = combined_correlation_exact(t, without_p);

  // Sum over the output combinations that do contain channel p.
  double c_containing = 0.0;
  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < p; ++c) others.push_back(c);
  for (std::size_t a = 0; a < others.size(); ++a) {
    for (std::size_t b = a + 1; b < others.size(); ++b) {
      const ChannelSet rows({others[a], others[b], p}, m_modes);
      c_containing += perm_squared_exact(t, rows, sigma);
    }
  }

  if (std::abs(c_full - (c_deleted + c_containing)) > 1e-10 * std::max(1.0, c_full)) {
    result.passed = false;
    result.detail = "partition mismatch";
  } else if (c_deleted > c_full + 1e-12) {
    result.passed = false;
    result.detail = "deletion failed to be monotone";
  }
  return result;
}

SuiteResult statistical_battery(const std::string& name, const RunConfig& cfg, PhaseConfig d,
                                bool permanent_estimator) {
  SuiteResult result{name, true, ""};
  const int runs = 200;
  const std::size_t n = 4, m_modes = 8;
  int failures = 0;

  RandomStream matrix_rng(derive_stream_seed(cfg.seed, StreamTag::generic, 6));
  const TransmissionMatrix t(haar_random_unitary(m_modes, matrix_rng));
  const ComplexMatrix sub =
      submatrix(t, ChannelSet::first_n(n, m_modes), ChannelSet::first_n(n, m_modes));
  const Complex exact_perm = permanent_glynn(sub);
  const double exact_sq = std::norm(exact_perm);

  for (int run = 0; run < runs; ++run) {
    const EnsembleConfig est_cfg(500, 50, d, derive_stream_seed(cfg.seed, StreamTag::estimator,
                                                                static_cast<std::uint64_t>(run)));
    double delta;
    if (permanent_estimator) {
      const EstimateResult est = estimate_permanent(sub, est_cfg);
      const double err = std::abs(est.mean - exact_perm);
      delta = est.std_error > 0.0 ? err / est.std_error : 0.0;
    } else {
      const EstimateResult est = estimate_perm_squared_qcp(sub, est_cfg);
      delta = error_ratio_delta(est, exact_sq);
    }
    if (delta > 3.0) ++failures;
  }
  if (failures > runs / 100) {  // requires >= 99% within 3 sigma
    result.passed = false;
    result.detail = std::to_string(failures) + "/" + std::to_string(runs) + " runs above 3 sigma";
  }
  return result;
}

SuiteResult suite_bias_reproduction(const RunConfig& cfg) {
  // The squared-mean comparator overshoots |perm|^2 by exactly the variance
  // of the sub-ensemble mean; check the two across many runs.
  SuiteResult result{"gurvits-bias-reproduction", true, ""};
  const int runs = 200;
  const std::size_t n = 4, m_modes = 8;

  RandomStream matrix_rng(derive_stream_seed(cfg.seed, StreamTag::generic, 7));
  const TransmissionMatrix t(haar_random_unitary(m_modes, matrix_rng));
  const ComplexMatrix sub =
      submatrix(t, ChannelSet::first_n(n, m_modes), ChannelSet::first_n(n, m_modes));
  const double exact_sq = std::norm(permanent_glynn(sub));

  std::vector<double> diffs(runs);
  for (int run = 0; run < runs; ++run) {
    const EnsembleConfig est_cfg(200, 64, PhaseConfig::discrete(2),
                                 derive_stream_seed(cfg.seed, StreamTag::estimator,
                                                    1000 + static_cast<std::uint64_t>(run)));
    const std::vector<Complex> v = subensemble_means(sub, est_cfg);
    const EstimateResult biased = estimate_perm_squared_gurvits_biased(sub, est_cfg);

    Complex mean{0.0, 0.0};
    for (const Complex& x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (const Complex& x : v) var += std::norm(x - mean);
    var /= static_cast<double>(v.size() - 1);

    diffs[run] = (biased.real_mean() - exact_sq) - var;
  }
  double mean_diff = 0.0;
  for (const double x : diffs) mean_diff += x;
  mean_diff /= runs;
  double var_diff = 0.0;
  for (const double x : diffs) var_diff += (x - mean_diff) * (x - mean_diff);
  var_diff /= (runs - 1);
  const double pooled_se = std::sqrt(var_diff / runs);

  if (std::abs(mean_diff) > 3.0 * pooled_se) {
    std::ostringstream oss;
    oss << "bias - variance = " << mean_diff << " vs 3*SE = " << 3.0 * pooled_se;
    result.passed = false;
    result.detail = oss.str();
  }
  return result;
}

}  // namespace

VerifyReport run_verify_oracles(const RunConfig& cfg) {
  VerifyReport report;
  auto run_suite = [&report](SuiteResult (*fn)(const RunConfig&), const RunConfig& c) {
    try {
      report.suites.push_back(fn(c));
    } catch (const std::exception& e) {
      report.suites.push_back(SuiteResult{"(exception)", false, e.what()});
    }
  };

  run_suite(suite_unitarity_gate, cfg);
  run_suite(suite_glynn_matches_naive, cfg);
  run_suite(suite_permanent_scaling, cfg);
  run_suite(suite_fourier_extraction, cfg);
  run_suite(suite_partition_identity, cfg);

  try {
    report.suites.push_back(
        statistical_battery("permanent-unbiasedness", cfg, PhaseConfig::discrete(2), true));
    report.suites.push_back(
        statistical_battery("perm2-unbiasedness-d2", cfg, PhaseConfig::discrete(2), false));
    report.suites.push_back(
        statistical_battery("perm2-unbiasedness-d4", cfg, PhaseConfig::discrete(4), false));
    report.suites.push_back(
        statistical_battery("perm2-unbiasedness-continuous", cfg, PhaseConfig::continuous(), false));
    report.suites.push_back(suite_bias_reproduction(cfg));
  } catch (const std::exception& e) {
    report.suites.push_back(SuiteResult{"(exception)", false, e.what()});
  }
  return report;
}

}  // namespace permlab::cli
