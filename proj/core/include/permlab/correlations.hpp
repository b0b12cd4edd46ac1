#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permlab/complex_matrix.hpp"
#include "permlab/estimators.hpp"
#include "permlab/phase.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// What to sum: all N-fold coincidences of an M-mode network fed through
/// `inputs`, restricted to output combinations avoiding every channel in
/// `deleted`.
struct CorrelationSpec {
  std::size_t n_photons;
  std::size_t total_modes;
  ChannelSet inputs;   // |inputs| == n_photons
  ChannelSet deleted;  // may be empty

  CorrelationSpec(std::size_t total_modes, ChannelSet inputs, ChannelSet deleted);

  std::size_t active_modes() const { return total_modes - deleted.size(); }
};

/// Extracts coefficients of prod_k (1 + x m_k) by a discrete Fourier sum
/// over `period` roots of unity. Exact for every coefficient order when
/// period > degree; with period == degree the top coefficient aliases onto
/// order zero (the transform used with period M in the correlation
/// literature), which extract() reproduces faithfully.
class FourierExtractor {
 public:
  explicit FourierExtractor(std::size_t period);

  std::size_t period() const { return roots_.size(); }

  /// Coefficient of x^target in prod_k (1 + x m_k), target < period.
  Complex extract(std::span<const Complex> m, std::size_t target) const;

 private:
  std::vector<Complex> roots_;  // e^{2 pi i j / period}
};

/// Scaled boson numbers m_k = (sum_{s in inputs} T_ks z_s) *
/// conj(sum_{u in inputs} T_ku z~_u) for every output channel k.
std::vector<Complex> output_amplitude_pair(const TransmissionMatrix& t, const ChannelSet& inputs,
                                           const PhaseVector& z, const PhaseVector& z_tilde);

/// Brute-force oracle: the sum of |perm|^2 over all N-channel output
/// combinations avoiding the deleted set. Guarded at 1e6 combinations.
double combined_correlation_exact(const TransmissionMatrix& t, const CorrelationSpec& spec);

inline constexpr double kCombinationGuard = 1e6;

/// Randomized estimate of the combined (channel-deleted) correlation via
/// phase sampling and Fourier coefficient extraction; unbiased for any
/// discretization. Sub-ensembles are consumed in adjacent pairs, so the
/// effective count is L2/2.
EstimateResult combined_correlation_qcp(const TransmissionMatrix& t, const CorrelationSpec& spec,
                                        const EnsembleConfig& cfg, unsigned threads = 1);

/// Effective loss rate seen by the network when channel p is treated as a
/// loss reservoir: t_p = t * (1 - sum_{i in inputs} |U_{p,i}|^2 / N).
double effective_loss(const ComplexMatrix& u, std::size_t p, double t, const ChannelSet& inputs);

/// Asymptotic (large-k) single-channel-deleted combined correlation:
/// t_p^N (kN-1)! (kN-2)! / [((k-1)N-1)! ((k+1)N-2)!], evaluated in
/// log-space. Requires k > 1 and integral kN.
double conjecture_value(std::size_t n, double k, double t_p);

struct ConjectureSpread {
  double mean;
  double std_dev;
};

/// Mean and standard deviation of conjecture_value across a unitary
/// ensemble, with the last channel deleted and inputs in the first N
/// channels. The unitary-distinguishability signal.
ConjectureSpread conjecture_spread(std::size_t n, double k, double t, std::size_t n_matrices,
                                   RandomStream& rng);

/// As conjecture_spread over a caller-supplied set of unitaries.
ConjectureSpread conjecture_spread_over(std::span<const ComplexMatrix> unitaries, std::size_t n,
                                        double k, double t);

}  // namespace permlab
