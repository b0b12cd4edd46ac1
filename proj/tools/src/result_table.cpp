#include "permlab_cli/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "permlab/errors.hpp"
#include "permlab/version.hpp"

namespace permlab::cli {

const char* const kCsvHeader =
    "experiment,method,n,m,k,d,l1,l2,n_matrices,t,deleted,seed,matrix_index,aggregated,"
    "mean,std_error,exact,actual_error,delta,experimental_error,reference,t_p,rel_diff";

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void append_row_csv(std::string& out, const ResultRow& r) {
  out += r.experiment;
  out += ',';
  out += r.method;
  out += ',';
  out += std::to_string(r.n);
  out += ',';
  out += std::to_string(r.m);
  out += ',';
  out += format_double(r.k);
  out += ',';
  out += r.d;
  out += ',';
  out += std::to_string(r.l1);
  out += ',';
  out += std::to_string(r.l2);
  out += ',';
  out += std::to_string(r.n_matrices);
  out += ',';
  out += format_double(r.t);
  out += ',';
  out += r.deleted;
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  if (r.matrix_index) out += std::to_string(*r.matrix_index);
  out += ',';
  out += r.aggregated ? '1' : '0';
  out += ',';
  out += format_optional(r.mean);
  out += ',';
  out += format_optional(r.std_error);
  out += ',';
  out += format_optional(r.exact);
  out += ',';
  out += format_optional(r.actual_error);
  out += ',';
  out += format_optional(r.delta);
  out += ',';
  out += format_optional(r.experimental_error);
  out += ',';
  out += format_optional(r.reference);
  out += ',';
  out += format_optional(r.t_p);
  out += ',';
  out += format_optional(r.rel_diff);
  out += '\n';
}

nlohmann::json optional_to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) append_row_csv(out, r);
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["method"] = r.method;
    j["n"] = r.n;
    j["m"] = r.m;
    j["k"] = r.k;
    j["d"] = r.d;
    j["l1"] = r.l1;
    j["l2"] = r.l2;
    j["n_matrices"] = r.n_matrices;
    j["t"] = r.t;
    j["deleted"] = r.deleted;
    j["seed"] = r.seed;
    j["matrix_index"] = r.matrix_index ? nlohmann::json(*r.matrix_index) : nlohmann::json(nullptr);
    j["aggregated"] = r.aggregated;
    j["mean"] = optional_to_json(r.mean);
    j["std_error"] = optional_to_json(r.std_error);
    j["exact"] = optional_to_json(r.exact);
    j["actual_error"] = optional_to_json(r.actual_error);
    j["delta"] = optional_to_json(r.delta);
    j["experimental_error"] = optional_to_json(r.experimental_error);
    j["reference"] = optional_to_json(r.reference);
    j["t_p"] = optional_to_json(r.t_p);
    j["rel_diff"] = optional_to_json(r.rel_diff);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

void require_all_finite(const std::vector<ResultRow>& rows) {
  auto check = [](const std::optional<double>& v) {
    return !v || std::isfinite(*v);
  };
  for (const auto& r : rows) {
    if (!(check(r.mean) && check(r.std_error) && check(r.exact) && check(r.actual_error) &&
          check(r.delta) && check(r.experimental_error) && check(r.reference) && check(r.t_p) &&
          check(r.rel_diff) && std::isfinite(r.k) && std::isfinite(r.t))) {
      throw size_limit_error("non-finite value in result table");
    }
  }
}

std::string metadata_to_json(const RunMetadata& meta) {
  nlohmann::json j;
  j["experiment"] = meta.experiment;
  j["library_version"] = permlab::kVersion;
  j["wall_time_ms"] = meta.wall_time_ms;
  j["rows"] = meta.row_count;
  j["threads"] = meta.threads;
  j["config"] = nlohmann::json::parse(meta.config_echo_json);
  return j.dump(2);
}

void write_outputs(const std::vector<ResultRow>& rows, const RunMetadata& meta,
                   const std::string& output_path) {
  auto write_file = [](const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << body;
  };
  write_file(output_path + ".csv", to_csv(rows));
  write_file(output_path + ".json", to_json(rows));
  write_file(output_path + ".meta.json", metadata_to_json(meta));
}

}  // namespace permlab::cli
