#include <doctest.h>

#include "permlab/errors.hpp"
#include "permlab_cli/run_config.hpp"

using namespace permlab;
using namespace permlab::cli;

TEST_CASE("config parses a full manifest") {
  const RunConfig cfg = RunConfig::from_json_text(R"({
    "experiment": "perm2-bias",
    "n": 6,
    "k": 4,
    "d": [2, "continuous"],
    "L1": [1000, 10000],
    "L2": 100,
    "n_matrices": 50,
    "t": 1.0,
    "deleted": [23],
    "seed": 42,
    "output_path": "runs/fig2",
    "threads": 2
  })");
  CHECK(cfg.experiment == ExperimentKind::perm2_bias);
  CHECK(cfg.experiment_explicit);
  CHECK(cfg.n_values == std::vector<std::size_t>{6});
  CHECK(cfg.k == 4.0);
  REQUIRE(cfg.d_values.size() == 2);
  CHECK(cfg.d_values[0].d() == 2);
  CHECK(cfg.d_values[1].is_continuous());
  CHECK(cfg.l1_values == std::vector<std::uint64_t>{1000, 10000});
  CHECK(cfg.l2 == 100);
  CHECK(cfg.n_matrices == 50);
  CHECK(cfg.deleted == std::vector<std::size_t>{23});
  CHECK(cfg.seed == 42);
  CHECK(cfg.output_path == "runs/fig2");
  CHECK(cfg.threads == 2);
}

TEST_CASE("n accepts from/to ranges") {
  const RunConfig cfg = RunConfig::from_json_text(R"({"n": {"from": 3, "to": 6}})");
  CHECK(cfg.n_values == std::vector<std::size_t>{3, 4, 5, 6});
}

TEST_CASE("config rejections") {
  CHECK_THROWS_AS(RunConfig::from_json_text("{"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"experiment": "nope"})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"n": []})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"L1": []})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"L1": 0})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"L2": 7})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"k": 0.5})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"t": 0.0})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"d": 1})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"d": "sometimes"})"), config_error);
  CHECK_THROWS_AS(
      RunConfig::from_json_text(R"({"unitary_file": "u.json", "n_matrices": 2})"), config_error);
  CHECK_THROWS_AS(RunConfig::from_json_file("/nonexistent/permlab.json"), config_error);
}

TEST_CASE("sweep expansion is a cartesian product, n outermost") {
  RunConfig cfg;
  cfg.n_values = {3, 4};
  cfg.l1_values = {10, 20};
  cfg.d_values = {PhaseConfig::discrete(2), PhaseConfig::continuous()};
  const auto points = cfg.expand_sweep();
  REQUIRE(points.size() == 8);
  CHECK(points[0].n == 3);
  CHECK(points[0].l1 == 10);
  CHECK(points[0].d.d() == 2);
  CHECK(points[1].d.is_continuous());
  CHECK(points[2].l1 == 20);
  CHECK(points[4].n == 4);
  for (std::size_t i = 0; i < points.size(); ++i) CHECK(points[i].index == i);
}

TEST_CASE("mode counts must be integral multiples") {
  RunConfig cfg;
  cfg.k = 2.0;
  CHECK(cfg.modes_for(5) == 10);
  cfg.k = 1.5;
  CHECK(cfg.modes_for(4) == 6);
  CHECK_THROWS_AS(cfg.modes_for(3), config_error);
}

TEST_CASE("config echo is parseable JSON") {
  RunConfig cfg;
  cfg.n_values = {4};
  cfg.k = 2.0;
  const RunConfig back = RunConfig::from_json_text(cfg.to_json());
  CHECK(back.n_values == cfg.n_values);
  CHECK(back.k == cfg.k);
  CHECK(back.l2 == cfg.l2);
}
