#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "voxplore/voxplore.h"

extern "C" int capi_smoke_from_c(void);

namespace {

const char* kScenario = R"({
  "world": {"kind": "empty_box", "dims": [8, 8, 4]},
  "robots": [[3, 3, 1]],
  "sensor": {"horizontal_rays": 8, "vertical_rays": 3},
  "strategy": {"min_cluster_size": 1, "replan_interval": 10},
  "max_ticks": 2000
})";

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "voxplore_capi_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("the header is consumable from plain C") {
  CHECK(capi_smoke_from_c() == 1);
  CHECK(std::strlen(vxp_version()) > 0);
}

TEST_CASE("world handles generate, save, load and count") {
  vxp_world* world = nullptr;
  REQUIRE(vxp_world_generate("empty_box", 8, 8, 4, 1, 0, &world) == VXP_OK);
  CHECK(vxp_world_traversable_count(world) == 72);

  const auto path = (temp_dir() / "world.txt").string();
  REQUIRE(vxp_world_save(world, path.c_str()) == VXP_OK);
  vxp_world_destroy(world);

  vxp_world* back = nullptr;
  REQUIRE(vxp_world_load(path.c_str(), &back) == VXP_OK);
  CHECK(vxp_world_traversable_count(back) == 72);
  vxp_world_destroy(back);
}

TEST_CASE("failures set a status and a readable message") {
  vxp_world* world = nullptr;
  CHECK(vxp_world_generate("no_such_kind", 8, 8, 4, 1, 0, &world) ==
        VXP_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(vxp_last_error()) > 0);
  CHECK(vxp_world_generate("empty_box", 2, 2, 2, 1, 0, &world) == VXP_ERR_INVALID_ARGUMENT);
  CHECK(vxp_world_generate(nullptr, 8, 8, 4, 1, 0, &world) == VXP_ERR_INVALID_ARGUMENT);

  vxp_scenario* scenario = nullptr;
  CHECK(vxp_scenario_parse("{ not json", &scenario) == VXP_ERR_PARSE);
  CHECK(vxp_scenario_parse(R"({"world": {"kind": "empty_box", "dims": [8,8,4]},
                              "robots": [[0,0,0]]})",
                           &scenario) == VXP_ERR_VALIDATION);
  CHECK(vxp_scenario_parse_file("/does/not/exist.json", &scenario) == VXP_ERR_IO);
}

TEST_CASE("scenario handles expose canonical form, digest and overrides") {
  vxp_scenario* scenario = nullptr;
  REQUIRE(vxp_scenario_parse(kScenario, &scenario) == VXP_OK);

  char* canon = nullptr;
  REQUIRE(vxp_scenario_canonical_json(scenario, &canon) == VXP_OK);
  CHECK(std::string(canon).find("\"max_range\": 4.0") != std::string::npos);

  // Canonical form re-parses to the same digest.
  vxp_scenario* reparsed = nullptr;
  REQUIRE(vxp_scenario_parse(canon, &reparsed) == VXP_OK);
  char *d1 = nullptr, *d2 = nullptr;
  REQUIRE(vxp_scenario_digest(scenario, &d1) == VXP_OK);
  REQUIRE(vxp_scenario_digest(reparsed, &d2) == VXP_OK);
  CHECK(std::string(d1) == std::string(d2));
  CHECK(std::strlen(d1) == 16);
  vxp_string_free(canon);
  vxp_string_free(d2);
  vxp_scenario_destroy(reparsed);

  // Overrides change the digest.
  vxp_scenario* clone = nullptr;
  REQUIRE(vxp_scenario_clone(scenario, &clone) == VXP_OK);
  REQUIRE(vxp_scenario_set_strategy(clone, "cost_utility/hungarian") == VXP_OK);
  REQUIRE(vxp_scenario_set_seed(clone, 99) == VXP_OK);
  char* d3 = nullptr;
  REQUIRE(vxp_scenario_digest(clone, &d3) == VXP_OK);
  CHECK(std::string(d1) != std::string(d3));
  CHECK(vxp_scenario_set_strategy(clone, "bogus") == VXP_ERR_INVALID_ARGUMENT);
  vxp_string_free(d1);
  vxp_string_free(d3);
  vxp_scenario_destroy(clone);
  vxp_scenario_destroy(scenario);
}

TEST_CASE("a run reports metrics and writes exports") {
  vxp_scenario* scenario = nullptr;
  REQUIRE(vxp_scenario_parse(kScenario, &scenario) == VXP_OK);
  vxp_result* result = nullptr;
  REQUIRE(vxp_run(scenario, &result) == VXP_OK);

  CHECK(vxp_result_completed(result) == 1);
  CHECK(vxp_result_ticks(result) > 0);
  CHECK(vxp_result_coverage(result) == 1.0);
  CHECK(vxp_result_total_distance(result) > 0.0);
  CHECK(vxp_result_map_nodes(result) > 0);
  CHECK(vxp_result_detection_count(result) == 0);

  char* csv = nullptr;
  REQUIRE(vxp_result_metrics_csv(result, &csv) == VXP_OK);
  CHECK(std::string(csv).rfind("tick,coverage,frontier_cells,robot_id,distance\n", 0) == 0);
  vxp_string_free(csv);

  char* summary = nullptr;
  REQUIRE(vxp_result_summary_json(result, &summary) == VXP_OK);
  CHECK(std::string(summary).find("\"ticks\"") != std::string::npos);
  vxp_string_free(summary);

  const auto dir = temp_dir();
  REQUIRE(vxp_result_save_map(result, (dir / "map.txt").string().c_str()) == VXP_OK);
  REQUIRE(vxp_result_save_world(result, (dir / "world2.txt").string().c_str()) == VXP_OK);
  vxp_world* world = nullptr;
  REQUIRE(vxp_world_load((dir / "world2.txt").string().c_str(), &world) == VXP_OK);
  vxp_world_destroy(world);

  vxp_result_destroy(result);
  vxp_scenario_destroy(scenario);
}

TEST_CASE("fire detections cross the C boundary") {
  const char* doc = R"({
    "world": {"kind": "rooms_and_corridors", "dims": [16, 16, 5], "seed": 9, "fire_count": 1},
    "robots": [[1, 1, 1]],
    "sensor": {"horizontal_rays": 8, "vertical_rays": 3},
    "strategy": {"min_cluster_size": 1, "replan_interval": 10},
    "max_ticks": 3000
  })";
  vxp_scenario* scenario = nullptr;
  REQUIRE(vxp_scenario_parse(doc, &scenario) == VXP_OK);
  vxp_result* result = nullptr;
  REQUIRE(vxp_run(scenario, &result) == VXP_OK);
  REQUIRE(vxp_result_completed(result) == 1);
  REQUIRE(vxp_result_detection_count(result) == 1);

  int32_t x = -1, y = -1, z = -1, robot = -1;
  int64_t tick = -1;
  REQUIRE(vxp_result_detection(result, 0, &x, &y, &z, &tick, &robot) == VXP_OK);
  CHECK(x >= 0);
  CHECK(tick >= 0);
  CHECK(robot == 0);
  CHECK(vxp_result_detection(result, 1, &x, &y, &z, &tick, &robot) ==
        VXP_ERR_INVALID_ARGUMENT);

  vxp_result_destroy(result);
  vxp_scenario_destroy(scenario);
}

TEST_CASE("compare renders the cross-product table") {
  vxp_scenario* scenario = nullptr;
  REQUIRE(vxp_scenario_parse(kScenario, &scenario) == VXP_OK);
  const char* strategies[] = {"nearest_frontier", "cost_utility/greedy"};
  const uint64_t seeds[] = {1, 2};
  char* csv = nullptr;
  int unfinished = -1;
  REQUIRE(vxp_compare(scenario, strategies, 2, seeds, 2, &csv, &unfinished) == VXP_OK);
  CHECK(unfinished == 0);
  const std::string table(csv);
  CHECK(table.find("nearest_frontier,1,") != std::string::npos);
  CHECK(table.find("cost_utility/greedy,2,") != std::string::npos);
  CHECK(table.find("# summary:") != std::string::npos);
  vxp_string_free(csv);

  CHECK(vxp_compare(scenario, strategies, 0, seeds, 2, &csv, nullptr) ==
        VXP_ERR_INVALID_ARGUMENT);
  vxp_scenario_destroy(scenario);
}
