#pragma once

#include <string>

#include "permlab/complex_matrix.hpp"

namespace permlab {

/// JSON form: {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
/// Used by the CLI to pin a unitary across runs.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

void save_matrix_json(const ComplexMatrix& m, const std::string& path);
ComplexMatrix load_matrix_json(const std::string& path);

}  // namespace permlab
