#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace permlab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Entries must stay finite; constructors
/// taking data enforce this, callers mutating through entry() are expected
/// to preserve it.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& entry(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  ComplexMatrix scaled(Complex factor) const;
  ComplexMatrix conjugate_transpose() const;

  /// True if every entry is finite (no NaN/Inf in either component).
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |(U U^dag - I)_{ab}|; the validation gate for unitarity.
/// Throws invalid_selection_error for non-square input.
double unitarity_defect(const ComplexMatrix& u);

/// Ordered set of distinct channel indices inside a universe of size M.
/// Indices are strictly increasing and all < M.
class ChannelSet {
 public:
  ChannelSet(std::vector<std::size_t> indices, std::size_t universe);

  /// {0, 1, ..., n-1} inside [0, universe).
  static ChannelSet first_n(std::size_t n, std::size_t universe);

  std::size_t size() const { return indices_.size(); }
  std::size_t universe() const { return universe_; }
  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  bool contains(std::size_t channel) const;

  /// Channels of the universe not in this set, in increasing order.
  ChannelSet complement() const;

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_;
};

/// A lossy linear network: sqrt(t) * U elementwise, with U unitary
/// (defect <= 1e-10, checked at construction) and t in (0, 1].
class TransmissionMatrix {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  explicit TransmissionMatrix(ComplexMatrix unitary, double transmission = 1.0);

  const ComplexMatrix& unitary() const { return unitary_; }
  double transmission() const { return transmission_; }
  std::size_t modes() const { return unitary_.rows(); }

  /// sqrt(t) * U(r, c).
  Complex entry(std::size_t r, std::size_t c) const {
    return amplitude_scale_ * unitary_(r, c);
  }
  double amplitude_scale() const { return amplitude_scale_; }

 private:
  ComplexMatrix unitary_;
  double transmission_;
  double amplitude_scale_;
};

/// N x N selection (a, b) -> sqrt(t) * U[rows[a], cols[b]].
/// Row and column sets must have equal size.
ComplexMatrix submatrix(const TransmissionMatrix& t, const ChannelSet& rows, const ChannelSet& cols);

}  // namespace permlab
