#pragma once

#include <stdexcept>
#include <string>

namespace permlab {

/// Invalid run or ensemble configuration (bad L1/L2, odd pairing count, empty sweep, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad selection or argument: mismatched dimensions, out-of-range channel
/// indices, values outside an operation's domain.
class invalid_selection_error : public std::invalid_argument {
 public:
  explicit invalid_selection_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A guard against exponential blow-up tripped (permanent size, combination count).
class size_limit_error : public std::runtime_error {
 public:
  explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Dispersion estimate is zero while the deviation is not; no error ratio exists.
class degenerate_dispersion_error : public std::runtime_error {
 public:
  explicit degenerate_dispersion_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permlab
