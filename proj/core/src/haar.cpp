#include "permlab/haar.hpp"

#include <cmath>
#include <vector>

#include "permlab/errors.hpp"

namespace permlab {

ComplexMatrix haar_random_unitary(std::size_t m, RandomStream& rng) {
  if (m < 1) {
    throw invalid_selection_error("haar_random_unitary requires m >= 1");
  }

  // Columns of the Ginibre matrix, drawn in column-major order so each
  // column is a contiguous vector for the orthogonalization below.
  std::vector<std::vector<Complex>> col(m, std::vector<Complex>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      col[j][i] = Complex{re, im};
    }
  }

  // Modified Gram-Schmidt, two passes ("twice is enough" reorthogonalization).
  for (std::size_t j = 0; j < m; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(col[k][i]) * col[j][i];
        for (std::size_t i = 0; i < m; ++i) col[j][i] -= proj * col[k][i];
      }
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm_sq += std::norm(col[j][i]);
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < m; ++i) col[j][i] *= inv_norm;
  }

  ComplexMatrix u(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) u.entry(i, j) = col[j][i];
  return u;
}

}  // namespace permlab
