#include "permlab/estimators.hpp"

#include <cmath>
#include <numeric>

#include "permlab/errors.hpp"
#include "permlab/haar.hpp"
#include "permlab/parallel.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

EnsembleConfig::EnsembleConfig(std::uint64_t l1_, std::uint64_t l2_, PhaseConfig phase_,
                               std::uint64_t seed_)
    : l1(l1_), l2(l2_), phase(phase_), seed(seed_) {
  if (l1 < 1) throw config_error("L1 must be >= 1");
  if (l2 < 2 || l2 % 2 != 0) throw config_error("L2 must be even and >= 2");
}

namespace detail {

MeanAndError mean_and_std_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {0.0, 0.0};
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const double v : values) {
    const double dv = v - mean;
    ss += dv * dv;
  }
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(std::max(0.0, var) / static_cast<double>(n))};
}

ComplexMeanAndError mean_and_std_error(const std::vector<Complex>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {Complex{0.0, 0.0}, 0.0};
  Complex mean{0.0, 0.0};
  for (const Complex& v : values) mean += v;
  mean /= static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const Complex& v : values) {
    const double dr = v.real() - mean.real();
    const double di = v.imag() - mean.imag();
    ss += dr * dr + di * di;
  }
  const double var = ss / static_cast<double>(n - 1);  // var_re + var_im combined
  return {mean, std::sqrt(std::max(0.0, var) / static_cast<double>(n))};
}

}  // namespace detail

std::vector<Complex> subensemble_means(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                       unsigned threads) {
  if (!m.is_square()) {
    throw invalid_selection_error("estimator requires a square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) {
    throw invalid_selection_error("estimator requires a non-empty matrix");
  }

  std::vector<Complex> values(cfg.l2);
  const PhaseSampler sampler(cfg.phase);
  const Complex* data = m.data().data();
  const std::uint64_t l1 = cfg.l1;

  parallel_for(cfg.l2, threads, [&](std::size_t s) {
    RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::subensemble, s));
    std::vector<Complex> z(n);
    double acc_re = 0.0, acc_im = 0.0;
    for (std::uint64_t j = 0; j < l1; ++j) {
      sampler.fill(z, rng);
      const Complex p = detail::glynn_polynomial_kernel(data, n, z.data());
      acc_re += p.real();
      acc_im += p.imag();
    }
    const double inv = 1.0 / static_cast<double>(l1);
    values[s] = Complex{acc_re * inv, acc_im * inv};
  });
  return values;
}

EstimateResult estimate_permanent(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                  unsigned threads) {
  EstimateResult result;
  result.subensemble_values = subensemble_means(m, cfg, threads);
  result.effective_subensembles = result.subensemble_values.size();
  const auto stats = detail::mean_and_std_error(result.subensemble_values);
  result.mean = stats.mean;
  result.std_error = stats.std_error;
  return result;
}

EstimateResult estimate_perm_squared_qcp(const ComplexMatrix& m, const EnsembleConfig& cfg,
                                         unsigned threads) {
  if (cfg.l2 % 2 != 0) throw config_error("quasi-conjugate pairing requires even L2");
  const std::vector<Complex> v = subensemble_means(m, cfg, threads);

  const std::size_t pairs = v.size() / 2;
  EstimateResult result;
  result.subensemble_values.resize(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const Complex& a = v[2 * i];
    const Complex& b = v[2 * i + 1];
    // Re[a * conj(b)]: the product of two independent estimates of perm and
    // its conjugate, unbiased for |perm|^2.
    result.subensemble_values[i] = Complex{a.real() * b.real() + a.imag() * b.imag(), 0.0};
  }
  result.effective_subensembles = pairs;
  const auto stats = detail::mean_and_std_error(result.subensemble_values);
  result.mean = stats.mean;
  result.std_error = stats.std_error;
  return result;
}

EstimateResult estimate_perm_squared_gurvits_biased(const ComplexMatrix& m,
                                                    const EnsembleConfig& cfg, unsigned threads) {
  if (cfg.phase.is_continuous() || cfg.phase.d() != 2) {
    throw config_error("the biased comparator is defined for d = 2 sampling");
  }
  const std::vector<Complex> v = subensemble_means(m, cfg, threads);

  EstimateResult result;
  result.subensemble_values.resize(v.size());
  for (std::size_t s = 0; s < v.size(); ++s) {
    result.subensemble_values[s] = Complex{std::norm(v[s]), 0.0};
  }
  result.effective_subensembles = v.size();
  const auto stats = detail::mean_and_std_error(result.subensemble_values);
  result.mean = stats.mean;
  result.std_error = stats.std_error;
  return result;
}

double actual_error(const EstimateResult& estimate, double exact) {
  return std::abs(estimate.mean - Complex{exact, 0.0});
}

double error_ratio_delta(const EstimateResult& estimate, double exact) {
  const double e = actual_error(estimate, exact);
  if (e == 0.0) return 0.0;
  if (estimate.std_error == 0.0) {
    throw degenerate_dispersion_error("zero dispersion with nonzero deviation");
  }
  return e / estimate.std_error;
}

double experimental_error(double mean_probability, std::uint64_t samples) {
  if (mean_probability < 0.0) {
    throw invalid_selection_error("mean probability must be >= 0");
  }
  if (samples < 1) {
    throw invalid_selection_error("sample count must be >= 1");
  }
  return std::sqrt(mean_probability / static_cast<double>(samples));
}

double scaling_law_epsilon(double k) {
  if (!(k >= 1.0)) {
    throw invalid_selection_error("scaling_law_epsilon requires k >= 1");
  }
  return k * std::log(k) - (1.0 + k) * std::log(1.0 + k);
}

EstimateResult haar_average_perm_squared(std::size_t n, double k, std::size_t n_matrices,
                                         const EnsembleConfig& cfg, RandomStream& rng,
                                         PermSquaredMethod method, unsigned threads) {
  if (n < 1 || n_matrices < 1) {
    throw invalid_selection_error("haar_average_perm_squared requires n >= 1 and n_matrices >= 1");
  }
  const double m_real = k * static_cast<double>(n);
  const auto m_modes = static_cast<std::size_t>(std::llround(m_real));
  if (std::abs(m_real - static_cast<double>(m_modes)) > 1e-9 || m_modes < n) {
    throw invalid_selection_error("k * n must be an integral mode count >= n");
  }
  if (method == PermSquaredMethod::exact_glynn && n > kGlynnPermanentLimit) {
    throw size_limit_error("exact Haar average limited to N <= 30");
  }

  // Unitaries are drawn serially from the caller's stream; the per-matrix
  // estimates then use positionally derived seeds and may run in parallel.
  std::vector<ComplexMatrix> subs;
  subs.reserve(n_matrices);
  const ChannelSet lead = ChannelSet::first_n(n, m_modes);
  for (std::size_t i = 0; i < n_matrices; ++i) {
    TransmissionMatrix t(haar_random_unitary(m_modes, rng));
    subs.push_back(submatrix(t, lead, lead));
  }

  EstimateResult result;
  result.subensemble_values.assign(n_matrices, Complex{0.0, 0.0});
  if (method == PermSquaredMethod::exact_glynn) {
    parallel_for(n_matrices, threads, [&](std::size_t i) {
      result.subensemble_values[i] = Complex{std::norm(permanent_glynn(subs[i])), 0.0};
    });
  } else {
    for (std::size_t i = 0; i < n_matrices; ++i) {
      EnsembleConfig per_matrix = cfg;
      per_matrix.seed = derive_stream_seed(cfg.seed, StreamTag::estimator, i);
      const EstimateResult est = estimate_perm_squared_qcp(subs[i], per_matrix, threads);
      result.subensemble_values[i] = est.mean;
    }
  }
  result.effective_subensembles = n_matrices;
  const auto stats = detail::mean_and_std_error(result.subensemble_values);
  result.mean = stats.mean;
  result.std_error = stats.std_error;
  return result;
}

}  // namespace permlab
