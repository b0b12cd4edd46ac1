#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "permlab/complex_matrix.hpp"
#include "permlab/errors.hpp"
#include "permlab/haar.hpp"
#include "permlab/permanent.hpp"
#include "permlab/rng.hpp"

using namespace permlab;

namespace {

ComplexMatrix all_ones(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.entry(i, j) = Complex{1.0, 0.0};
  return m;
}

ComplexMatrix random_complex(std::size_t n, RandomStream& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      m.entry(i, j) = Complex{re, im};
    }
  return m;
}

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

TEST_CASE("naive permanent on the definition cases") {
  CHECK(permanent_naive(ComplexMatrix::identity(4)) == Complex{1.0, 0.0});

  ComplexMatrix m(2, 2, {Complex{2, 1}, Complex{0, 3}, Complex{-1, 0}, Complex{4, -2}});
  // ad + bc
  const Complex expected = Complex{2, 1} * Complex{4, -2} + Complex{0, 3} * Complex{-1, 0};
  CHECK(permanent_naive(m) == expected);

  CHECK(permanent_naive(all_ones(5)).real() == 120.0);
  CHECK_THROWS_AS(permanent_naive(all_ones(11)), size_limit_error);
  CHECK_THROWS_AS(permanent_naive(ComplexMatrix(2, 3)), invalid_selection_error);
}

TEST_CASE("glynn permanent exact integer cases") {
  CHECK(permanent_glynn(all_ones(10)).real() == 3628800.0);  // 10!
  CHECK(permanent_glynn(all_ones(12)).real() == factorial(12));
  CHECK(permanent_glynn(ComplexMatrix::identity(12)) == Complex{1.0, 0.0});
  CHECK_THROWS_AS(permanent_glynn(ComplexMatrix::identity(31)), size_limit_error);
}

TEST_CASE("glynn matches naive on a Haar sub-matrix") {
  RandomStream rng(31);
  TransmissionMatrix t(haar_random_unitary(16, rng));
  const ChannelSet lead = ChannelSet::first_n(8, 16);
  const ComplexMatrix sub = submatrix(t, lead, lead);
  const Complex glynn = permanent_glynn(sub);
  const Complex naive = permanent_naive(sub);
  CHECK(std::abs(glynn - naive) <= 1e-10 * std::abs(naive));
}

TEST_CASE("glynn equals naive across random sizes") {
  RandomStream rng(32);
  for (int trial = 0; trial < 110; ++trial) {
    const std::size_t n = 1 + rng.next_index(trial < 100 ? 7 : 9);
    const ComplexMatrix m = random_complex(n, rng);
    const Complex a = permanent_glynn(m);
    const Complex b = permanent_naive(m);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1e-300, std::abs(b)));
  }
}

TEST_CASE("permanent is invariant under row and column permutations") {
  RandomStream rng(33);
  const std::size_t n = 6;
  const ComplexMatrix m = random_complex(n, rng);
  const Complex base = permanent_glynn(m);

  std::vector<std::size_t> rows(n), cols(n);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  for (int trial = 0; trial < 10; ++trial) {
    for (std::size_t i = n; i > 1; --i) std::swap(rows[i - 1], rows[rng.next_index(i)]);
    for (std::size_t i = n; i > 1; --i) std::swap(cols[i - 1], cols[rng.next_index(i)]);
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p.entry(i, j) = m(rows[i], cols[j]);
    CHECK(std::abs(permanent_glynn(p) - base) <= 1e-12 * std::abs(base));
  }
}

TEST_CASE("perm(cM) = c^N perm(M), so |perm|^2 scales as |c|^{2N}") {
  RandomStream rng(34);
  const std::size_t n = 5;
  const ComplexMatrix m = random_complex(n, rng);
  const double c = std::sqrt(0.3);
  const Complex scaled = permanent_glynn(m.scaled(Complex{c, 0.0}));
  const Complex expected = std::pow(c, 5.0) * permanent_glynn(m);
  CHECK(std::abs(scaled - expected) <= 1e-12 * std::abs(expected));
  CHECK(std::norm(scaled) ==
        doctest::Approx(std::pow(0.3, 5.0) * std::norm(permanent_glynn(m))).epsilon(1e-10));
}

TEST_CASE("perm_squared_exact on selection cases") {
  TransmissionMatrix t(ComplexMatrix::identity(5));
  const ChannelSet in({0, 1, 2}, 5);
  CHECK(perm_squared_exact(t, in, in) == 1.0);
  CHECK(perm_squared_exact(t, ChannelSet({3, 4}, 5), ChannelSet({0, 1}, 5)) == 0.0);
}

TEST_CASE("balanced beam splitter suppresses the two-photon coincidence") {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix bs(2, 2, {Complex{s, 0}, Complex{s, 0}, Complex{s, 0}, Complex{-s, 0}});
  TransmissionMatrix t(bs);
  const ChannelSet both({0, 1}, 2);
  // perm = 1/2 - 1/2 = 0: Hong-Ou-Mandel suppression.
  CHECK(perm_squared_exact(t, both, both) == 0.0);
}
