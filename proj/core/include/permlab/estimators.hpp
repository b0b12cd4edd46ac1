#pragma once

#include <cstdint>
#include <vector>

#include "permlab/complex_matrix.hpp"
#include "permlab/phase.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// Sampling plan: L2 sub-ensembles of L1 samples each (L = L1 * L2).
/// L2 must be even: the permanent-squared estimator consumes sub-ensembles
/// in quasi-conjugate pairs.
struct EnsembleConfig {
  std::uint64_t l1;
  std::uint64_t l2;
  PhaseConfig phase;
  std::uint64_t seed;

  EnsembleConfig(std::uint64_t l1_, std::uint64_t l2_, PhaseConfig phase_, std::uint64_t seed_);

  std::uint64_t total_samples() const { return l1 * l2; }
};

/// A sampled quantity: its mean, the estimated standard error of the mean,
/// and the per-sub-ensemble (or per-matrix) values behind them.
///
/// Real-valued estimators store their values with zero imaginary part.
struct EstimateResult {
  Complex mean{0.0, 0.0};
  double std_error = 0.0;
  std::vector<Complex> subensemble_values;
  std::size_t effective_subensembles = 0;

  double real_mean() const { return mean.real(); }
};

/// Per-sub-ensemble means of p(M, z): the building block shared by the
/// permanent and permanent-squared estimators. values[s] uses the stream
/// derived from (cfg.seed, subensemble, s), so the result is independent of
/// the thread count.
std::vector<Complex> subensemble_means(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                       unsigned threads = 1);

/// Unbiased estimate of perm(M): the mean over L2 sub-ensemble averages of
/// p(M, z). With d = 2 this is the Gurvits permanent approximation.
EstimateResult estimate_permanent(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                  unsigned threads = 1);

/// Unbiased estimate of |perm(M)|^2. Sub-ensembles 2i and 2i+1 form a
/// quasi-conjugate pair; the pair value is Re[<p(M,z)> * conj(<p(M,z~)>)],
/// giving L2/2 effective sub-ensembles.
EstimateResult estimate_perm_squared_qcp(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                         unsigned threads = 1);

/// The biased comparator: per-sub-ensemble value |<p(M,z)>|^2, whose
/// systematic error equals the variance of the sub-ensemble mean. Requires
/// d = 2. Effective sub-ensembles: L2.
EstimateResult estimate_perm_squared_gurvits_biased(const ComplexMatrix& m,
                                                    const EnsembleConfig& cfg,
                                                    unsigned threads = 1);

/// |estimate.mean - exact|.
double actual_error(const EstimateResult& estimate, double exact);

/// Ratio of actual error to estimated standard error (0 when the actual
/// error is 0). Throws degenerate_dispersion_error when the dispersion is
/// zero but the deviation is not.
double error_ratio_delta(const EstimateResult& estimate, double exact);

/// Poissonian shot-noise benchmark sqrt(mean_probability / samples).
double experimental_error(double mean_probability, std::uint64_t samples);

/// Leading log-rate of the Haar-averaged coincidence probability:
/// epsilon(k) = k ln k - (1+k) ln(1+k), for k >= 1.
double scaling_law_epsilon(double k);

enum class PermSquaredMethod { exact_glynn, qcp_estimate };

/// Haar-ensemble average of |perm(U_{N|M})|^2 for the leading n x n
/// sub-matrix of kn x kn Haar unitaries (the third level of random
/// averaging). subensemble_values holds the per-matrix values; std_error is
/// the spread of their mean.
EstimateResult haar_average_perm_squared(std::size_t n, double k, std::size_t n_matrices,
                                         const EnsembleConfig& cfg, RandomStream& rng,
                                         PermSquaredMethod method = PermSquaredMethod::qcp_estimate,
                                         unsigned threads = 1);

namespace detail {

/// Mean and (n-1)-denominator standard error of the mean for real samples.
/// Returns {mean, 0} for fewer than two samples or an exactly-constant set.
struct MeanAndError {
  double mean;
  double std_error;
};
MeanAndError mean_and_std_error(const std::vector<double>& values);

/// As above for complex samples; the error combines real and imaginary
/// component variances.
struct ComplexMeanAndError {
  Complex mean;
  double std_error;
};
ComplexMeanAndError mean_and_std_error(const std::vector<Complex>& values);

}  // namespace detail

}  // namespace permlab
