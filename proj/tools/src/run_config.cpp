#include "permlab_cli/run_config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "permlab/errors.hpp"
#include "permlab/parallel.hpp"

namespace permlab::cli {

using nlohmann::json;

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::perm2_bias: return "perm2-bias";
    case ExperimentKind::scaling: return "scaling";
    case ExperimentKind::combined: return "combined";
    case ExperimentKind::conjecture_spread: return "conjecture-spread";
    case ExperimentKind::verify_oracles: return "verify-oracles";
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "perm2-bias") return ExperimentKind::perm2_bias;
  if (name == "scaling") return ExperimentKind::scaling;
  if (name == "combined") return ExperimentKind::combined;
  if (name == "conjecture-spread") return ExperimentKind::conjecture_spread;
  if (name == "verify-oracles") return ExperimentKind::verify_oracles;
  throw config_error("unknown experiment: " + name);
}

namespace {

// Accepts a number, an array of numbers, or {"from": a, "to": b} (inclusive).
template <typename T>
std::vector<T> parse_count_list(const json& j, const std::string& key) {
  std::vector<T> out;
  if (j.is_number()) {
    out.push_back(j.get<T>());
  } else if (j.is_array()) {
    for (const auto& item : j) out.push_back(item.get<T>());
  } else if (j.is_object() && j.contains("from") && j.contains("to")) {
    const auto from = j["from"].get<T>();
    const auto to = j["to"].get<T>();
    for (T v = from; v <= to; ++v) out.push_back(v);
  } else {
    throw config_error(key + " must be a number, an array, or {from, to}");
  }
  if (out.empty()) throw config_error(key + " sweep is empty");
  return out;
}

PhaseConfig parse_phase(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "continuous" || s == "inf") return PhaseConfig::continuous();
    throw config_error("d must be an integer >= 2 or \"continuous\"");
  }
  if (j.is_number_integer()) return PhaseConfig::discrete(j.get<int>());
  throw config_error("d must be an integer >= 2 or \"continuous\"");
}

std::vector<PhaseConfig> parse_phase_list(const json& j) {
  std::vector<PhaseConfig> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(parse_phase(item));
  } else {
    out.push_back(parse_phase(j));
  }
  if (out.empty()) throw config_error("d sweep is empty");
  return out;
}

json phase_to_json(PhaseConfig d) {
  if (d.is_continuous()) return json("continuous");
  return json(d.d());
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");

  RunConfig cfg;
  if (j.contains("experiment")) {
    cfg.experiment = parse_experiment(j["experiment"].get<std::string>());
    cfg.experiment_explicit = true;
  }
  if (j.contains("n")) cfg.n_values = parse_count_list<std::size_t>(j["n"], "n");
  if (j.contains("k")) cfg.k = j["k"].get<double>();
  if (j.contains("d")) cfg.d_values = parse_phase_list(j["d"]);
  if (j.contains("L1")) cfg.l1_values = parse_count_list<std::uint64_t>(j["L1"], "L1");
  if (j.contains("L2")) cfg.l2 = j["L2"].get<std::uint64_t>();
  if (j.contains("n_matrices")) cfg.n_matrices = j["n_matrices"].get<std::size_t>();
  if (j.contains("t")) cfg.t = j["t"].get<double>();
  if (j.contains("deleted")) cfg.deleted = j["deleted"].get<std::vector<std::size_t>>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
  if (j.contains("unitary_file")) cfg.unitary_file = j["unitary_file"].get<std::string>();

  if (!(cfg.k >= 1.0)) throw config_error("k must be >= 1");
  if (!(cfg.t > 0.0) || cfg.t > 1.0) throw config_error("t must lie in (0, 1]");
  if (cfg.l2 < 2 || cfg.l2 % 2 != 0) throw config_error("L2 must be even and >= 2");
  if (cfg.n_matrices < 1) throw config_error("n_matrices must be >= 1");
  if (!cfg.unitary_file.empty() && cfg.n_matrices != 1) {
    throw config_error("a pinned unitary_file requires n_matrices = 1");
  }
  for (const auto l1 : cfg.l1_values) {
    if (l1 < 1) throw config_error("L1 must be >= 1");
  }
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string RunConfig::to_json() const {
  json j;
  j["experiment"] = experiment_name(experiment);
  j["n"] = n_values;
  j["k"] = k;
  json ds = json::array();
  for (const auto& d : d_values) ds.push_back(phase_to_json(d));
  j["d"] = ds;
  j["L1"] = l1_values;
  j["L2"] = l2;
  j["n_matrices"] = n_matrices;
  j["t"] = t;
  j["deleted"] = deleted;
  j["seed"] = seed;
  j["output_path"] = output_path;
  j["threads"] = threads;
  if (!unitary_file.empty()) j["unitary_file"] = unitary_file;
  return j.dump(2);
}

std::vector<SweepPoint> RunConfig::expand_sweep() const {
  if (n_values.empty() || l1_values.empty() || d_values.empty()) {
    throw config_error("empty sweep");
  }
  std::vector<SweepPoint> points;
  points.reserve(n_values.size() * l1_values.size() * d_values.size());
  std::size_t index = 0;
  for (const auto n : n_values)
    for (const auto l1 : l1_values)
      for (const auto& d : d_values) points.push_back(SweepPoint{n, l1, d, index++});
  return points;
}

std::size_t RunConfig::modes_for(std::size_t n) const {
  const double m_real = k * static_cast<double>(n);
  const auto m = static_cast<std::size_t>(std::llround(m_real));
  if (std::abs(m_real - static_cast<double>(m)) > 1e-9 || m < n || n < 1) {
    throw config_error("k * n must be an integral mode count >= n");
  }
  return m;
}

unsigned RunConfig::effective_threads() const {
  return threads == 0 ? hardware_threads() : threads;
}

}  // namespace permlab::cli
