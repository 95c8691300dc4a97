#include "voxplore/voxplore.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "sim.hpp"
#include "world.hpp"

using namespace voxplore;

struct vxp_world {
  WorldGrid grid;
};

struct vxp_scenario {
  Scenario scenario;
};

struct vxp_result {
  RunBundle bundle;
  std::string digest;
};

namespace {

thread_local std::string g_last_error;

vxp_status status_for(const Error& e) {
  switch (e.code()) {
    case Err::ParseError:
      return VXP_ERR_PARSE;
    case Err::ValidationError:
    case Err::ScenarioInvalid:
      return VXP_ERR_VALIDATION;
    case Err::Io:
      return VXP_ERR_IO;
    case Err::InvalidDims:
    case Err::InvalidParams:
    case Err::InvalidArgument:
    case Err::KeyOutOfRange:
      return VXP_ERR_INVALID_ARGUMENT;
    default:
      return VXP_ERR_INTERNAL;
  }
}

template <typename Fn>
vxp_status guarded(Fn&& fn) {
  try {
    fn();
    return VXP_OK;
  } catch (const Error& e) {
    g_last_error = std::string(err_name(e.code())) + ": " + e.what();
    return status_for(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VXP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return VXP_ERR_INTERNAL;
  }
}

vxp_status require(bool ok, const char* message) {
  if (ok) return VXP_OK;
  g_last_error = message;
  return VXP_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* vxp_version(void) { return "voxplore 1.0.0"; }

const char* vxp_last_error(void) { return g_last_error.c_str(); }

vxp_status vxp_world_generate(const char* kind, int32_t nx, int32_t ny, int32_t nz,
                              uint64_t seed, int32_t fire_count, vxp_world** out) {
  if (auto s = require(kind && out, "kind and out must be non-null")) return s;
  return guarded([&] {
    auto world = new vxp_world{
        generate_world(world_kind_from_string(kind), nx, ny, nz, seed, fire_count)};
    *out = world;
  });
}

vxp_status vxp_world_load(const char* path, vxp_world** out) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] { *out = new vxp_world{load_world_file(path)}; });
}

vxp_status vxp_world_save(const vxp_world* world, const char* path) {
  if (auto s = require(world && path, "world and path must be non-null")) return s;
  return guarded([&] { save_world_file(world->grid, path); });
}

int64_t vxp_world_traversable_count(const vxp_world* world) {
  return world ? world->grid.traversable_count() : -1;
}

void vxp_world_destroy(vxp_world* world) { delete world; }

vxp_status vxp_scenario_parse(const char* json_text, vxp_scenario** out) {
  if (auto s = require(json_text && out, "json_text and out must be non-null")) return s;
  return guarded([&] { *out = new vxp_scenario{parse_scenario(json_text)}; });
}

vxp_status vxp_scenario_parse_file(const char* path, vxp_scenario** out) {
  if (auto s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] { *out = new vxp_scenario{parse_scenario_file(path)}; });
}

vxp_status vxp_scenario_clone(const vxp_scenario* scenario, vxp_scenario** out) {
  if (auto s = require(scenario && out, "scenario and out must be non-null")) return s;
  return guarded([&] { *out = new vxp_scenario{scenario->scenario}; });
}

vxp_status vxp_scenario_canonical_json(const vxp_scenario* scenario, char** out) {
  if (auto s = require(scenario && out, "scenario and out must be non-null")) return s;
  return guarded([&] { *out = dup_string(canonical_json(scenario->scenario)); });
}

vxp_status vxp_scenario_digest(const vxp_scenario* scenario, char** out) {
  if (auto s = require(scenario && out, "scenario and out must be non-null")) return s;
  return guarded([&] { *out = dup_string(scenario_digest(scenario->scenario)); });
}

vxp_status vxp_scenario_set_strategy(vxp_scenario* scenario, const char* token) {
  if (auto s = require(scenario && token, "scenario and token must be non-null")) return s;
  return guarded([&] { apply_strategy_token(scenario->scenario, token); });
}

vxp_status vxp_scenario_set_seed(vxp_scenario* scenario, uint64_t seed) {
  if (auto s = require(scenario != nullptr, "scenario must be non-null")) return s;
  scenario->scenario.seed = seed;
  return VXP_OK;
}

void vxp_scenario_destroy(vxp_scenario* scenario) { delete scenario; }

vxp_status vxp_run(const vxp_scenario* scenario, vxp_result** out) {
  if (auto s = require(scenario && out, "scenario and out must be non-null")) return s;
  return guarded([&] {
    auto result = new vxp_result{run_scenario(scenario->scenario),
                                 scenario_digest(scenario->scenario)};
    *out = result;
  });
}

vxp_status vxp_compare(const vxp_scenario* scenario, const char* const* strategies,
                       int64_t strategy_count, const uint64_t* seeds, int64_t seed_count,
                       char** out_csv, int* any_unfinished) {
  if (auto s = require(scenario && strategies && seeds && out_csv,
                       "scenario, strategies, seeds and out_csv must be non-null")) {
    return s;
  }
  if (auto s = require(strategy_count > 0 && seed_count > 0,
                       "compare needs at least one strategy and one seed")) {
    return s;
  }
  return guarded([&] {
    std::vector<std::string> tokens(strategies, strategies + strategy_count);
    std::vector<std::uint64_t> seed_list(seeds, seeds + seed_count);
    bool unfinished = false;
    *out_csv = dup_string(run_compare(scenario->scenario, tokens, seed_list, &unfinished));
    if (any_unfinished) *any_unfinished = unfinished ? 1 : 0;
  });
}

int vxp_result_completed(const vxp_result* result) {
  return result && result->bundle.metrics.completed ? 1 : 0;
}

int64_t vxp_result_ticks(const vxp_result* result) {
  return result ? result->bundle.metrics.total_ticks : -1;
}

double vxp_result_coverage(const vxp_result* result) {
  return result ? result->bundle.metrics.coverage : -1.0;
}

double vxp_result_total_distance(const vxp_result* result) {
  return result ? result->bundle.metrics.total_distance : -1.0;
}

int64_t vxp_result_map_nodes(const vxp_result* result) {
  return result ? result->bundle.metrics.map_nodes : -1;
}

int64_t vxp_result_detection_count(const vxp_result* result) {
  return result ? static_cast<int64_t>(result->bundle.metrics.detections.size()) : -1;
}

vxp_status vxp_result_detection(const vxp_result* result, int64_t index, int32_t* x,
                                int32_t* y, int32_t* z, int64_t* tick, int32_t* robot_id) {
  if (auto s = require(result != nullptr, "result must be non-null")) return s;
  const auto& dets = result->bundle.metrics.detections;
  if (auto s = require(index >= 0 && index < static_cast<int64_t>(dets.size()),
                       "detection index out of range")) {
    return s;
  }
  const FireDetection& d = dets[static_cast<std::size_t>(index)];
  if (x) *x = d.voxel.x;
  if (y) *y = d.voxel.y;
  if (z) *z = d.voxel.z;
  if (tick) *tick = d.tick;
  if (robot_id) *robot_id = d.robot_id;
  return VXP_OK;
}

vxp_status vxp_result_metrics_csv(const vxp_result* result, char** out) {
  if (auto s = require(result && out, "result and out must be non-null")) return s;
  return guarded([&] { *out = dup_string(metrics_csv(result->bundle.metrics)); });
}

vxp_status vxp_result_summary_json(const vxp_result* result, char** out) {
  if (auto s = require(result && out, "result and out must be non-null")) return s;
  return guarded(
      [&] { *out = dup_string(summary_json(result->bundle.metrics, result->digest)); });
}

vxp_status vxp_result_save_map(const vxp_result* result, const char* path) {
  if (auto s = require(result && path, "result and path must be non-null")) return s;
  return guarded([&] { result->bundle.map.save_file(path); });
}

vxp_status vxp_result_save_world(const vxp_result* result, const char* path) {
  if (auto s = require(result && path, "result and path must be non-null")) return s;
  return guarded([&] { save_world_file(result->bundle.world, path); });
}

void vxp_result_destroy(vxp_result* result) { delete result; }

void vxp_string_free(char* s) { delete[] s; }

}  // extern "C"
