#include "permlab/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "permlab/errors.hpp"

namespace permlab {

Complex permanent_naive(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw invalid_selection_error("permanent requires a square matrix");
  }
  const std::size_t n = m.rows();
  if (n > kNaivePermanentLimit) {
    throw size_limit_error("permanent_naive limited to N <= 10; use permanent_glynn");
  }
  if (n == 0) return Complex{1.0, 0.0};

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum{0.0, 0.0};
  do {
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Complex permanent_glynn(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw invalid_selection_error("permanent requires a square matrix");
  }
  const std::size_t n = m.rows();
  if (n > kGlynnPermanentLimit) {
    throw size_limit_error("permanent_glynn limited to N <= 30");
  }
  if (n == 0) return Complex{1.0, 0.0};

  // perm(A) = 2^{1-N} sum_{delta, delta_0=+1} (prod_i delta_i) prod_j (sum_i delta_i A_ij).
  // w holds the delta-weighted column sums; flipping delta_r adds or removes
  // row r twice, one O(N) update per Gray-code step. Split complex storage
  // keeps the inner product free of library complex-multiplication calls.
  std::vector<double> w_re(n), w_im(n);
  for (std::size_t j = 0; j < n; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      re += m(i, j).real();
      im += m(i, j).imag();
    }
    w_re[j] = re;
    w_im[j] = im;
  }

  std::vector<double> sign(n, 1.0);  // current delta values, delta_0 pinned to +1
  double sum_re = 0.0, sum_im = 0.0, term_sign = 1.0;

  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t g = 0;; ++g) {
    double prod_re = 1.0, prod_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double re = prod_re * w_re[j] - prod_im * w_im[j];
      prod_im = prod_re * w_im[j] + prod_im * w_re[j];
      prod_re = re;
    }
    sum_re += term_sign * prod_re;
    sum_im += term_sign * prod_im;

    if (g + 1 == steps) break;

    // Gray code of g+1 differs from that of g in bit ctz(g+1); bit b toggles
    // delta of row b+1 (row 0 stays +1).
    const std::size_t r = static_cast<std::size_t>(std::countr_zero(g + 1)) + 1;
    sign[r] = -sign[r];
    const double two_delta = 2.0 * sign[r];
    for (std::size_t j = 0; j < n; ++j) {
      w_re[j] += two_delta * m(r, j).real();
      w_im[j] += two_delta * m(r, j).imag();
    }
    term_sign = -term_sign;
  }

  // One division by 2^{N-1} at the end.
  const double scale = std::ldexp(1.0, -static_cast<int>(n - 1));
  return Complex{sum_re * scale, sum_im * scale};
}

double perm_squared_exact(const TransmissionMatrix& t, const ChannelSet& rows, const ChannelSet& cols) {
  return std::norm(permanent_glynn(submatrix(t, rows, cols)));
}

}  // namespace permlab
