#pragma once

#include "permlab/complex_matrix.hpp"

namespace permlab {

/// Exact permanent as the literal sum over all N! permutations. N <= 10.
Complex permanent_naive(const ComplexMatrix& m);

/// Exact permanent via the +-1 Glynn formula with Gray-code delta updates,
/// O(N * 2^N) arithmetic. N <= 30. Agrees with permanent_naive to 1e-10
/// relative wherever both run.
Complex permanent_glynn(const ComplexMatrix& m);

/// |perm(T(rows, cols))|^2: the coincidence probability for single photons
/// entering `cols` and detected on `rows`.
double perm_squared_exact(const TransmissionMatrix& t, const ChannelSet& rows, const ChannelSet& cols);

inline constexpr std::size_t kNaivePermanentLimit = 10;
inline constexpr std::size_t kGlynnPermanentLimit = 30;

}  // namespace permlab
