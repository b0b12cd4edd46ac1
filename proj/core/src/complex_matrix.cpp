#include "permlab/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "permlab/errors.hpp"

namespace permlab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw invalid_selection_error("matrix entry count does not match rows*cols");
  }
  if (!all_finite()) {
    throw invalid_selection_error("matrix entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entry(i, i) = Complex{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = factor * data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.entry(c, r) = std::conj((*this)(r, c));
  return out;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw invalid_selection_error("matrix product dimension mismatch");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out.entry(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) {
    throw invalid_selection_error("unitarity_defect requires a square matrix");
  }
  const std::size_t n = u.rows();
  double defect = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex dot{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) dot += u(r, k) * std::conj(u(c, k));
      if (r == c) dot -= 1.0;
      defect = std::max(defect, std::abs(dot));
    }
  }
  return defect;
}

ChannelSet::ChannelSet(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= universe_) {
      throw invalid_selection_error("channel index out of range");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw invalid_selection_error("channel indices must be strictly increasing");
    }
  }
}

ChannelSet ChannelSet::first_n(std::size_t n, std::size_t universe) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return ChannelSet(std::move(idx), universe);
}

bool ChannelSet::contains(std::size_t channel) const {
  return std::binary_search(indices_.begin(), indices_.end(), channel);
}

ChannelSet ChannelSet::complement() const {
  std::vector<std::size_t> rest;
  rest.reserve(universe_ - indices_.size());
  for (std::size_t c = 0; c < universe_; ++c) {
    if (!contains(c)) rest.push_back(c);
  }
  return ChannelSet(std::move(rest), universe_);
}

TransmissionMatrix::TransmissionMatrix(ComplexMatrix unitary, double transmission)
    : unitary_(std::move(unitary)),
      transmission_(transmission),
      amplitude_scale_(std::sqrt(transmission)) {
  if (!unitary_.is_square()) {
    throw invalid_selection_error("transmission matrix requires a square unitary");
  }
  if (!(transmission_ > 0.0) || transmission_ > 1.0) {
    throw invalid_selection_error("transmission must lie in (0, 1]");
  }
  if (unitarity_defect(unitary_) > kUnitarityTolerance) {
    throw invalid_selection_error("matrix fails the unitarity gate (defect > 1e-10)");
  }
}

ComplexMatrix submatrix(const TransmissionMatrix& t, const ChannelSet& rows, const ChannelSet& cols) {
  if (rows.size() != cols.size()) {
    throw invalid_selection_error("submatrix selection must be square (|rows| == |cols|)");
  }
  if (rows.universe() != t.modes() || cols.universe() != t.modes()) {
    throw invalid_selection_error("channel set universe does not match matrix size");
  }
  const std::size_t n = rows.size();
  ComplexMatrix out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.entry(a, b) = t.entry(rows[a], cols[b]);
  return out;
}

}  // namespace permlab
