#include "permlab/correlations.hpp"

#include <cmath>
#include <numbers>

#include "permlab/errors.hpp"
#include "permlab/haar.hpp"
#include "permlab/parallel.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

namespace {

double binomial_approx(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return c;
}

double log_factorial(std::uint64_t m) {
  double acc = 0.0;
  for (std::uint64_t i = 2; i <= m; ++i) acc += std::log(static_cast<double>(i));
  return acc;
}

// Advances `comb` to the next N-combination (by positions into a pool of
// `pool_size` items); returns false after the last one.
bool next_combination(std::vector<std::size_t>& comb, std::size_t pool_size) {
  const std::size_t n = comb.size();
  std::size_t i = n;
  while (i > 0) {
    --i;
    if (comb[i] != i + pool_size - n) {
      ++comb[i];
      for (std::size_t j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

CorrelationSpec::CorrelationSpec(std::size_t total_modes_, ChannelSet inputs_, ChannelSet deleted_)
    : n_photons(inputs_.size()),
      total_modes(total_modes_),
      inputs(std::move(inputs_)),
      deleted(std::move(deleted_)) {
  if (inputs.universe() != total_modes || deleted.universe() != total_modes) {
    throw invalid_selection_error("channel sets must index into the network's modes");
  }
  if (n_photons < 1) {
    throw invalid_selection_error("correlation order must be >= 1");
  }
  if (deleted.size() >= total_modes) {
    throw invalid_selection_error("deletion set empties the universe");
  }
  if (n_photons > total_modes - deleted.size()) {
    throw invalid_selection_error("correlation order exceeds remaining channels");
  }
}

FourierExtractor::FourierExtractor(std::size_t period) {
  if (period < 1) {
    throw invalid_selection_error("extractor period must be >= 1");
  }
  roots_.resize(period);
  for (std::size_t j = 0; j < period; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(period);
    roots_[j] = Complex{std::cos(angle), std::sin(angle)};
  }
}

Complex FourierExtractor::extract(std::span<const Complex> m, std::size_t target) const {
  const std::size_t d = roots_.size();
  if (target >= d) {
    throw invalid_selection_error("extraction order must be below the period");
  }
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double wr = roots_[j].real(), wi = roots_[j].imag();
    double prod_re = 1.0, prod_im = 0.0;
    for (const Complex& mk : m) {
      const double fr = 1.0 + wr * mk.real() - wi * mk.imag();
      const double fi = wr * mk.imag() + wi * mk.real();
      const double re = prod_re * fr - prod_im * fi;
      prod_im = prod_re * fi + prod_im * fr;
      prod_re = re;
    }
    // times e^{-i j target 2pi/d} = conj(roots[j*target mod d])
    const Complex& ph = roots_[(j * target) % d];
    acc_re += prod_re * ph.real() + prod_im * ph.imag();
    acc_im += prod_im * ph.real() - prod_re * ph.imag();
  }
  const double inv = 1.0 / static_cast<double>(d);
  return Complex{acc_re * inv, acc_im * inv};
}

std::vector<Complex> output_amplitude_pair(const TransmissionMatrix& t, const ChannelSet& inputs,
                                           const PhaseVector& z, const PhaseVector& z_tilde) {
  const std::size_t n = inputs.size();
  if (z.size() != n || z_tilde.size() != n) {
    throw invalid_selection_error("phase vectors must match the input set size");
  }
  const std::size_t m_modes = t.modes();
  std::vector<Complex> m_k(m_modes);
  for (std::size_t k = 0; k < m_modes; ++k) {
    Complex a{0.0, 0.0}, b{0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) {
      const Complex t_ks = t.entry(k, inputs[s]);
      a += t_ks * z.values[s];
      b += t_ks * z_tilde.values[s];
    }
    m_k[k] = a * std::conj(b);
  }
  return m_k;
}

double combined_correlation_exact(const TransmissionMatrix& t, const CorrelationSpec& spec) {
  const std::size_t n = spec.n_photons;
  if (n > kGlynnPermanentLimit) {
    throw size_limit_error("exact combined correlation limited to N <= 30");
  }
  const ChannelSet active = spec.deleted.complement();
  if (binomial_approx(active.size(), n) > kCombinationGuard) {
    throw size_limit_error("combination count exceeds the 1e6 brute-force guard");
  }

  std::vector<std::size_t> positions(n);
  for (std::size_t i = 0; i < n; ++i) positions[i] = i;

  double total = 0.0;
  do {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = active[positions[i]];
    total += perm_squared_exact(t, ChannelSet(std::move(rows), spec.total_modes), spec.inputs);
  } while (next_combination(positions, active.size()));
  return total;
}

EstimateResult combined_correlation_qcp(const TransmissionMatrix& t, const CorrelationSpec& spec,
                                        const EnsembleConfig& cfg, unsigned threads) {
  const std::size_t n = spec.n_photons;
  const ChannelSet active = spec.deleted.complement();
  const std::size_t n_active = active.size();

  // Active rows of sqrt(t) U restricted to the input columns, row-major.
  std::vector<Complex> a_mat(n_active * n);
  for (std::size_t r = 0; r < n_active; ++r)
    for (std::size_t c = 0; c < n; ++c) a_mat[r * n + c] = t.entry(active[r], spec.inputs[c]);

  // One extraction point more than the polynomial degree, so every order
  // 0..n_active is alias-free (relevant when N equals the active count).
  const FourierExtractor extractor(n_active + 1);
  const PhaseSampler sampler(cfg.phase);

  std::vector<Complex> v(cfg.l2);
  parallel_for(cfg.l2, threads, [&](std::size_t s) {
    RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::subensemble, s));
    std::vector<Complex> z(n), zt(n), m_k(n_active);
    double acc_re = 0.0, acc_im = 0.0;
    for (std::uint64_t j = 0; j < cfg.l1; ++j) {
      sampler.fill(z, rng);
      sampler.fill(zt, rng);
      double y_re = 1.0, y_im = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        // y_m = z~_m * conj(z_m), the single-photon quasi-probability weight
        const double yr = zt[i].real() * z[i].real() + zt[i].imag() * z[i].imag();
        const double yi = zt[i].imag() * z[i].real() - zt[i].real() * z[i].imag();
        const double re = y_re * yr - y_im * yi;
        y_im = y_re * yi + y_im * yr;
        y_re = re;
      }
      for (std::size_t r = 0; r < n_active; ++r) {
        const Complex* row = a_mat.data() + r * n;
        double ar = 0.0, ai = 0.0, br = 0.0, bi = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
          const double tr = row[c].real(), ti = row[c].imag();
          ar += tr * z[c].real() - ti * z[c].imag();
          ai += tr * z[c].imag() + ti * z[c].real();
          br += tr * zt[c].real() - ti * zt[c].imag();
          bi += tr * zt[c].imag() + ti * zt[c].real();
        }
        m_k[r] = Complex{ar * br + ai * bi, ai * br - ar * bi};  // a * conj(b)
      }
      const Complex coeff = extractor.extract(m_k, n);
      acc_re += y_re * coeff.real() - y_im * coeff.imag();
      acc_im += y_re * coeff.imag() + y_im * coeff.real();
    }
    const double inv = 1.0 / static_cast<double>(cfg.l1);
    v[s] = Complex{acc_re * inv, acc_im * inv};
  });

  const std::size_t pairs = v.size() / 2;
  EstimateResult result;
  result.subensemble_values.resize(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    result.subensemble_values[i] =
        Complex{0.5 * (v[2 * i].real() + v[2 * i + 1].real()), 0.0};
  }
  result.effective_subensembles = pairs;
  const auto stats = detail::mean_and_std_error(result.subensemble_values);
  result.mean = stats.mean;
  result.std_error = stats.std_error;
  return result;
}

double effective_loss(const ComplexMatrix& u, std::size_t p, double t, const ChannelSet& inputs) {
  if (!u.is_square() || p >= u.rows()) {
    throw invalid_selection_error("channel p must index a row of a square unitary");
  }
  if (inputs.universe() != u.rows() || inputs.size() < 1) {
    throw invalid_selection_error("input set must be a non-empty selection of the modes");
  }
  double overlap = 0.0;
  for (const std::size_t i : inputs.indices()) overlap += std::norm(u(p, i));
  return t * (1.0 - overlap / static_cast<double>(inputs.size()));
}

double conjecture_value(std::size_t n, double k, double t_p) {
  if (n < 1) {
    throw invalid_selection_error("conjecture_value requires N >= 1");
  }
  if (!(k > 1.0)) {
    throw invalid_selection_error("conjecture_value requires k > 1");
  }
  const double kn_real = k * static_cast<double>(n);
  const auto kn = static_cast<std::uint64_t>(std::llround(kn_real));
  if (std::abs(kn_real - static_cast<double>(kn)) > 1e-9) {
    throw invalid_selection_error("k * N must be integral");
  }
  if (kn < n + 1) {
    throw invalid_selection_error("conjecture_value requires (k-1) N >= 1");
  }
  if (t_p < 0.0 || t_p > 1.0) {
    throw invalid_selection_error("t_p must lie in [0, 1]");
  }
  if (t_p == 0.0) return 0.0;

  // Exponentially small values: assemble in log-space and exponentiate once.
  const double log_value = static_cast<double>(n) * std::log(t_p) + log_factorial(kn - 1) +
                           log_factorial(kn - 2) - log_factorial(kn - n - 1) -
                           log_factorial(kn + n - 2);
  return std::exp(log_value);
}

ConjectureSpread conjecture_spread_over(std::span<const ComplexMatrix> unitaries, std::size_t n,
                                        double k, double t) {
  if (unitaries.size() < 2) {
    throw invalid_selection_error("spread requires at least two matrices");
  }
  std::vector<double> values;
  values.reserve(unitaries.size());
  for (const ComplexMatrix& u : unitaries) {
    const std::size_t m_modes = u.rows();
    const ChannelSet inputs = ChannelSet::first_n(n, m_modes);
    const double t_p = effective_loss(u, m_modes - 1, t, inputs);
    values.push_back(conjecture_value(n, k, t_p));
  }
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return {mean, std_dev};
}

ConjectureSpread conjecture_spread(std::size_t n, double k, double t, std::size_t n_matrices,
                                   RandomStream& rng) {
  const double m_real = k * static_cast<double>(n);
  const auto m_modes = static_cast<std::size_t>(std::llround(m_real));
  if (std::abs(m_real - static_cast<double>(m_modes)) > 1e-9 || m_modes <= n) {
    throw invalid_selection_error("k * n must be an integral mode count > n");
  }
  std::vector<ComplexMatrix> us;
  us.reserve(n_matrices);
  for (std::size_t i = 0; i < n_matrices; ++i) us.push_back(haar_random_unitary(m_modes, rng));
  return conjecture_spread_over(us, n, k, t);
}

}  // namespace permlab
