#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permlab/errors.hpp"
#include "permlab_cli/result_table.hpp"

using namespace permlab;
using namespace permlab::cli;

namespace {

ResultRow sample_row() {
  ResultRow r;
  r.experiment = "perm2-bias";
  r.method = "qcp";
  r.n = 6;
  r.m = 24;
  r.k = 4.0;
  r.d = "continuous";
  r.l1 = 10000;
  r.l2 = 100;
  r.n_matrices = 50;
  r.t = 1.0;
  r.seed = 42;
  r.matrix_index = 7;
  r.mean = 0.1234567890123456789;
  r.std_error = 1e-300;
  r.exact = 3.0000000000000004;
  r.actual_error = 0.25;
  r.delta = 1.75;
  r.experimental_error = 0.001;
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("csv header and row shape") {
  const std::string csv = to_csv({sample_row()});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == kCsvHeader);
  CHECK(split(header, ',').size() == 23);
  CHECK(split(row, ',').size() == 23);
}

TEST_CASE("doubles survive a csv round trip bit-exactly") {
  ResultRow r = sample_row();
  r.mean = 0.1 + 0.2;          // 0.30000000000000004
  r.exact = 1.0 / 3.0;
  const std::string csv = to_csv({r});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  const auto cells = split(row, ',');
  CHECK(std::strtod(cells[14].c_str(), nullptr) == *r.mean);
  CHECK(std::strtod(cells[16].c_str(), nullptr) == *r.exact);
}

TEST_CASE("csv and json emissions contain identical values") {
  ResultRow a = sample_row();
  ResultRow b = sample_row();
  b.matrix_index.reset();
  b.aggregated = true;
  b.delta.reset();
  const std::vector<ResultRow> rows{a, b};

  const std::string csv = to_csv(rows);
  const auto parsed = nlohmann::json::parse(to_json(rows));
  REQUIRE(parsed.size() == 2);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  const auto header = split(line, ',');
  for (const auto& jrow : parsed) {
    std::getline(in, line);
    const auto cells = split(line, ',');
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& jval = jrow.at(header[c]);
      if (jval.is_null()) {
        CHECK(cells[c].empty());
      } else if (jval.is_number_float()) {
        CHECK(std::strtod(cells[c].c_str(), nullptr) == jval.get<double>());
      } else if (jval.is_boolean()) {
        CHECK(cells[c] == (jval.get<bool>() ? "1" : "0"));
      } else if (jval.is_number()) {
        CHECK(cells[c] == jval.dump());
      } else {
        CHECK(cells[c] == jval.get<std::string>());
      }
    }
  }
}

TEST_CASE("nan and infinity trip the guard") {
  ResultRow r = sample_row();
  r.mean = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_all_finite({r}), size_limit_error);
  r.mean = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(require_all_finite({r}), size_limit_error);
  r.mean = 1.0;
  CHECK_NOTHROW(require_all_finite({r}));
}

TEST_CASE("metadata serializes the config echo") {
  RunMetadata meta;
  meta.experiment = "scaling";
  meta.config_echo_json = R"({"seed": 7})";
  meta.wall_time_ms = 12.5;
  meta.row_count = 3;
  meta.threads = 2;
  const auto j = nlohmann::json::parse(metadata_to_json(meta));
  CHECK(j["experiment"] == "scaling");
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["rows"] == 3);
  CHECK(j.contains("library_version"));
  CHECK(j.contains("wall_time_ms"));
}
