#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permlab/complex_matrix.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// Phase discretization: d equally spaced phases on the unit circle
/// (d >= 2), or the d -> infinity limit of uniformly distributed angles.
class PhaseConfig {
 public:
  static PhaseConfig discrete(int d);
  static PhaseConfig continuous() { return PhaseConfig(0); }

  bool is_continuous() const { return d_ == 0; }
  int d() const { return d_; }

  bool operator==(const PhaseConfig&) const = default;

 private:
  explicit PhaseConfig(int d) : d_(d) {}
  int d_;  // 0 encodes the continuous limit
};

/// A sampled vector of unit-modulus phases z. For finite d the exact root
/// indices q_i in [0, d) are kept alongside the cached complex values.
struct PhaseVector {
  std::vector<Complex> values;
  std::vector<std::uint32_t> indices;  // empty in the continuous case

  std::size_t size() const { return values.size(); }
};

/// Draws phases for one sample: index q uniform on {0,...,d-1} for finite d,
/// angle uniform on [0, 2pi) in the continuous limit. One RNG draw per
/// element, in element order.
class PhaseSampler {
 public:
  explicit PhaseSampler(PhaseConfig config);

  PhaseConfig config() const { return config_; }

  /// Fills `out` with fresh phases.
  void fill(std::span<Complex> out, RandomStream& rng) const;

  /// As fill(), also recording root indices (finite d only; `qs` is left
  /// untouched in the continuous case).
  void fill_with_indices(std::span<Complex> out, std::span<std::uint32_t> qs, RandomStream& rng) const;

 private:
  PhaseConfig config_;
  std::vector<Complex> roots_;  // d-th roots of unity, empty when continuous
};

PhaseVector sample_phase_vector(std::size_t n, PhaseConfig config, RandomStream& rng);

namespace detail {

/// p(M, z) on raw storage: prod_l conj(z_l) * prod_k (sum_j M_kj z_j).
/// For unit-modulus z the conjugate is the inverse phase. Split-component
/// arithmetic; n is the matrix dimension, row stride n.
Complex glynn_polynomial_kernel(const Complex* m, std::size_t n, const Complex* z);

}  // namespace detail

/// Randomized product-of-row-sums polynomial p(M, z) whose phase average is
/// perm(M). O(N^2) per evaluation.
Complex glynn_polynomial(const ComplexMatrix& m, const PhaseVector& z);

}  // namespace permlab
