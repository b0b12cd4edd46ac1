#pragma once

#include "permlab/complex_matrix.hpp"
#include "permlab/rng.hpp"

namespace permlab {

/// Draws an m x m unitary from the Haar measure.
///
/// Construction: complex Ginibre matrix, Gram-Schmidt orthonormalization with
/// a second reorthogonalization pass. The triangular factor's diagonal is the
/// (real, positive) column norm, which is exactly the phase convention that
/// makes the orthonormal factor Haar-distributed.
ComplexMatrix haar_random_unitary(std::size_t m, RandomStream& rng);

}  // namespace permlab
