#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permlab::cli {

/// One emitted table row: either a single (sweep point x matrix) result or a
/// per-point aggregate (aggregated = true, no matrix index). Unused fields
/// stay empty in the CSV and null in the JSON emission.
struct ResultRow {
  std::string experiment;
  std::string method;  // "qcp", "gurvits", "exact", "conjecture"
  std::size_t n = 0;
  std::size_t m = 0;
  double k = 0.0;
  std::string d;  // "2", "4", ..., "continuous", or empty when not sampled
  std::uint64_t l1 = 0;
  std::uint64_t l2 = 0;
  std::size_t n_matrices = 0;
  double t = 1.0;
  std::string deleted;  // semicolon-joined channel indices
  std::uint64_t seed = 0;
  std::optional<std::size_t> matrix_index;
  bool aggregated = false;

  std::optional<double> mean;
  std::optional<double> std_error;
  std::optional<double> exact;
  std::optional<double> actual_error;
  std::optional<double> delta;
  std::optional<double> experimental_error;
  std::optional<double> reference;  // analytic value (N*eps(k), conjecture)
  std::optional<double> t_p;
  std::optional<double> rel_diff;   // |mean - reference| / reference
};

/// The fixed CSV column order.
extern const char* const kCsvHeader;

/// Floats are rendered with 17 significant digits so a reload is bit-faithful.
std::string to_csv(const std::vector<ResultRow>& rows);

/// Same values as the CSV, as a JSON array of row objects.
std::string to_json(const std::vector<ResultRow>& rows);

/// Throws when any numeric field is NaN or infinite.
void require_all_finite(const std::vector<ResultRow>& rows);

struct RunMetadata {
  std::string experiment;
  std::string config_echo_json;
  double wall_time_ms = 0.0;
  std::size_t row_count = 0;
  unsigned threads = 0;
};

std::string metadata_to_json(const RunMetadata& meta);

/// Writes <output_path>.csv, <output_path>.json and <output_path>.meta.json.
void write_outputs(const std::vector<ResultRow>& rows, const RunMetadata& meta,
                   const std::string& output_path);

}  // namespace permlab::cli
