#include "permlab/phase.hpp"

#include <cmath>
#include <numbers>

#include "permlab/errors.hpp"

namespace permlab {

PhaseConfig PhaseConfig::discrete(int d) {
  if (d < 2) {
    throw config_error("phase discretization requires d >= 2");
  }
  return PhaseConfig(d);
}

PhaseSampler::PhaseSampler(PhaseConfig config) : config_(config) {
  if (!config_.is_continuous()) {
    const int d = config_.d();
    roots_.resize(static_cast<std::size_t>(d));
    for (int q = 0; q < d; ++q) {
      // Axis-aligned roots (multiples of pi/2) are stored exactly so that
      // products like z * conj(z) telescope to exactly 1 for d = 2 and 4.
      if (4 * q % d == 0) {
        static const Complex kAxis[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        roots_[static_cast<std::size_t>(q)] = kAxis[(4 * q / d) % 4];
      } else {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(q) / d;
        roots_[static_cast<std::size_t>(q)] = Complex{std::cos(angle), std::sin(angle)};
      }
    }
  }
}

void PhaseSampler::fill(std::span<Complex> out, RandomStream& rng) const {
  if (config_.is_continuous()) {
    for (auto& z : out) {
      const double angle = 2.0 * std::numbers::pi * rng.next_unit_double();
      z = Complex{std::cos(angle), std::sin(angle)};
    }
  } else {
    const std::uint64_t d = static_cast<std::uint64_t>(config_.d());
    for (auto& z : out) z = roots_[rng.next_index(d)];
  }
}

void PhaseSampler::fill_with_indices(std::span<Complex> out, std::span<std::uint32_t> qs,
                                     RandomStream& rng) const {
  if (config_.is_continuous()) {
    fill(out, rng);
    return;
  }
  const std::uint64_t d = static_cast<std::uint64_t>(config_.d());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t q = rng.next_index(d);
    qs[i] = static_cast<std::uint32_t>(q);
    out[i] = roots_[q];
  }
}

PhaseVector sample_phase_vector(std::size_t n, PhaseConfig config, RandomStream& rng) {
  if (n < 1) {
    throw invalid_selection_error("sample_phase_vector requires n >= 1");
  }
  PhaseSampler sampler(config);
  PhaseVector out;
  out.values.resize(n);
  if (config.is_continuous()) {
    sampler.fill(out.values, rng);
  } else {
    out.indices.resize(n);
    sampler.fill_with_indices(out.values, out.indices, rng);
  }
  return out;
}

namespace detail {

Complex glynn_polynomial_kernel(const Complex* m, std::size_t n, const Complex* z) {
  // The inverse-phase prefactor prod_l z_l^{-1} = prod_l conj(z_l) is folded
  // into the row loop, one conjugate factor per row, so that e.g. the
  // identity matrix telescopes into products of |z_k|^2.
  double prod_re = 1.0, prod_im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex* row = m + k * n;
    double row_re = 0.0, row_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ar = row[j].real(), ai = row[j].imag();
      const double zr = z[j].real(), zi = z[j].imag();
      row_re += ar * zr - ai * zi;
      row_im += ar * zi + ai * zr;
    }
    const double cr = z[k].real(), ci = -z[k].imag();
    const double term_re = row_re * cr - row_im * ci;
    const double term_im = row_re * ci + row_im * cr;
    const double re = prod_re * term_re - prod_im * term_im;
    prod_im = prod_re * term_im + prod_im * term_re;
    prod_re = re;
  }
  return Complex{prod_re, prod_im};
}

}  // namespace detail

Complex glynn_polynomial(const ComplexMatrix& m, const PhaseVector& z) {
  if (!m.is_square()) {
    throw invalid_selection_error("glynn_polynomial requires a square matrix");
  }
  if (z.size() != m.rows()) {
    throw invalid_selection_error("phase vector length must match matrix dimension");
  }
  return detail::glynn_polynomial_kernel(m.data().data(), m.rows(), z.values.data());
}

}  // namespace permlab
