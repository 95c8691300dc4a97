#include <doctest.h>

#include <string>

#include "errors.hpp"
#include "report.hpp"
#include "scenario.hpp"

using namespace voxplore;

namespace {

const char* kMinimal = R"({
  "world": {"kind": "empty_box", "dims": [8, 8, 4]},
  "robots": [[3, 3, 1]]
})";

}  // namespace

TEST_CASE("a minimal document fills every documented default") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.world.inline_generation);
  CHECK(s.world.kind == WorldKind::EmptyBox);
  CHECK(s.world.seed == 1);
  CHECK(s.world.fire_count == 0);
  CHECK(s.world.resolution == 1.0);
  CHECK(s.sensor.max_range == 4.0);
  CHECK(s.sensor.horizontal_rays == 16);
  CHECK(s.sensor.vertical_rays == 5);
  CHECK(s.sensor.fire_detect_range == 4.0);  // defaults to max_range
  CHECK(s.sensor.range_noise_sigma == 0.0);
  CHECK(s.strategy.kind == StrategyKind::NearestFrontier);
  CHECK(s.strategy.coordination == Coordination::Independent);
  CHECK(s.strategy.lambda == 1.0);
  CHECK(s.strategy.discount_radius == 8.0);  // 2 x max_range
  CHECK(s.strategy.replan_interval == 25);
  CHECK(s.strategy.min_cluster_size == 3);
  CHECK(s.pf.d0 == 2.0);
  CHECK(s.pf.step == 0.25);
  CHECK(s.pf.clearance == 1.0);
  CHECK(!s.ellipse.has_value());
  CHECK(s.max_ticks == 5000);
  CHECK(s.seed == 1);
}

TEST_CASE("a robot starting inside a wall names its index") {
  const std::string doc = R"({
    "world": {"kind": "empty_box", "dims": [8, 8, 4]},
    "robots": [[3, 3, 1], [0, 0, 0]]
  })";
  try {
    parse_scenario(doc);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ValidationError);
    CHECK(std::string(e.what()).find("robot 1") != std::string::npos);
  }
}

TEST_CASE("duplicate robot starts are rejected") {
  const std::string doc = R"({
    "world": {"kind": "empty_box", "dims": [8, 8, 4]},
    "robots": [[3, 3, 1], [3, 3, 1]]
  })";
  CHECK_THROWS_AS(parse_scenario(doc), Error);
}

TEST_CASE("canonical serialization round-trips to an identical scenario") {
  const std::string doc = R"({
    "world": {"kind": "rooms_and_corridors", "dims": [20, 16, 6], "seed": 9, "fire_count": 2},
    "robots": [[1, 1, 1], [2, 1, 1]],
    "sensor": {"max_range": 5.0, "horizontal_rays": 12},
    "strategy": {"kind": "cost_utility", "coordination": "hungarian", "lambda": 0.5},
    "ellipse": {"semi_major": 6.0, "semi_minor": 4.0, "count": 12},
    "max_ticks": 400,
    "seed": 77
  })";
  const Scenario s = parse_scenario(doc);
  const std::string canon = canonical_json(s);
  const Scenario t = parse_scenario(canon);
  CHECK(canonical_json(t) == canon);
  CHECK(scenario_digest(t) == scenario_digest(s));
  CHECK(t.strategy.kind == StrategyKind::CostUtility);
  CHECK(t.strategy.coordination == Coordination::Hungarian);
  CHECK(t.ellipse.has_value());
  CHECK(t.ellipse->count == 12);
  CHECK(t.ellipse->center_x == 10.0);  // defaulted to the building center
}

TEST_CASE("digests differ when any field differs") {
  Scenario a = parse_scenario(kMinimal);
  Scenario b = a;
  b.seed = 2;
  CHECK(scenario_digest(a) != scenario_digest(b));
}

TEST_CASE("unknown keys and malformed documents are parse errors") {
  try {
    parse_scenario(R"({"world": {"kind": "empty_box", "dims": [8,8,4]}, "robots": [[3,3,1]], "typo_key": 1})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ParseError);
    CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario("not json at all"), Error);
  CHECK_THROWS_AS(parse_scenario(R"({"robots": [[1,1,1]]})"), Error);
}

TEST_CASE("invalid sub-config values become validation errors") {
  const std::string doc = R"({
    "world": {"kind": "empty_box", "dims": [8, 8, 4]},
    "robots": [[3, 3, 1]],
    "sensor": {"max_range": 4.0, "fire_detect_range": 9.0}
  })";
  try {
    parse_scenario(doc);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ValidationError);
  }
}

TEST_CASE("strategy tokens override kind and coordination") {
  Scenario s = parse_scenario(kMinimal);
  apply_strategy_token(s, "cost_utility/hungarian");
  CHECK(s.strategy.kind == StrategyKind::CostUtility);
  CHECK(s.strategy.coordination == Coordination::Hungarian);
  apply_strategy_token(s, "nearest_frontier");
  CHECK(s.strategy.kind == StrategyKind::NearestFrontier);
  CHECK(s.strategy.coordination == Coordination::Hungarian);  // unchanged
  CHECK_THROWS_AS(apply_strategy_token(s, "bogus/hungarian"), Error);
  CHECK_THROWS_AS(apply_strategy_token(s, "cost_utility/bogus"), Error);
}

TEST_CASE("run_scenario produces a complete run with exports") {
  const std::string doc = R"({
    "world": {"kind": "empty_box", "dims": [8, 8, 4]},
    "robots": [[3, 3, 1]],
    "strategy": {"min_cluster_size": 1, "replan_interval": 10},
    "sensor": {"horizontal_rays": 8, "vertical_rays": 3},
    "max_ticks": 2000
  })";
  const Scenario s = parse_scenario(doc);
  const RunBundle bundle = run_scenario(s);
  CHECK(bundle.metrics.completed);
  CHECK(bundle.metrics.coverage == 1.0);
  CHECK(bundle.metrics.map_nodes > 0);
  CHECK(bundle.world.traversable_count() == 72);

  const std::string csv = metrics_csv(bundle.metrics);
  CHECK(csv.rfind("tick,coverage,frontier_cells,robot_id,distance\n", 0) == 0);
  const std::string summary = summary_json(bundle.metrics, scenario_digest(s));
  CHECK(summary.find("\"scenario_digest\"") != std::string::npos);
  CHECK(summary.find("\"coverage\"") != std::string::npos);
}

TEST_CASE("compare emits one data row per run plus one summary row per strategy") {
  const std::string doc = R"({
    "world": {"kind": "empty_box", "dims": [8, 8, 4]},
    "robots": [[3, 3, 1]],
    "strategy": {"min_cluster_size": 1, "replan_interval": 10},
    "sensor": {"horizontal_rays": 8, "vertical_rays": 3},
    "max_ticks": 2000
  })";
  const Scenario s = parse_scenario(doc);
  bool unfinished = true;
  const std::string csv = run_compare(s, {"nearest_frontier", "cost_utility"}, {1, 2, 3},
                                      &unfinished);
  CHECK(!unfinished);

  std::int64_t data_rows = 0, summary_rows = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t end = csv.find('\n', pos);
    const std::string line = csv.substr(pos, end - pos);
    pos = end == std::string::npos ? csv.size() : end + 1;
    if (line.rfind("# summary:", 0) == 0) {
      header_seen = true;
    } else if (line.rfind("# ", 0) == 0) {
      ++summary_rows;
    } else if (line.rfind("strategy,", 0) != 0 && !line.empty()) {
      ++data_rows;
    }
  }
  CHECK(header_seen);
  CHECK(data_rows == 6);
  CHECK(summary_rows == 2);

  // Determinism: the same invocation yields identical bytes.
  const std::string again = run_compare(s, {"nearest_frontier", "cost_utility"}, {1, 2, 3});
  CHECK(again == csv);

  CHECK_THROWS_AS(run_compare(s, {}, {1}), Error);
  CHECK_THROWS_AS(run_compare(s, {"nearest_frontier"}, {}), Error);
}
