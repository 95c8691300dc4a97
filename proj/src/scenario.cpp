#include "scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace voxplore {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) {
      if (key == k) ok = true;
    }
    if (!ok) {
      raise(Err::ParseError, std::string("scenario: unknown key '") + key + "' in " + where);
    }
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    raise(Err::ParseError, std::string("scenario: '") + key + "' must be a number");
  }
  return obj[key].get<double>();
}

std::int64_t get_integer(const json& obj, const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    raise(Err::ParseError, std::string("scenario: '") + key + "' must be an integer");
  }
  return obj[key].get<std::int64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    raise(Err::ParseError, std::string("scenario: '") + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

[[noreturn]] void as_validation_error(const Error& e) {
  raise(Err::ValidationError, e.what());
}

}  // namespace

WorldGrid build_world(const WorldSource& source) {
  if (source.inline_generation) {
    return generate_world(source.kind, source.dims[0], source.dims[1], source.dims[2],
                          source.seed, source.fire_count, source.resolution);
  }
  return load_world_file(source.file);
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(Err::ParseError, std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) raise(Err::ParseError, "scenario: top level must be an object");
  reject_unknown_keys(doc, "scenario",
                      {"world", "robots", "sensor", "strategy", "potential_field", "ellipse",
                       "map_depth", "max_ticks", "seed"});

  Scenario s;

  if (!doc.contains("world") || !doc["world"].is_object()) {
    raise(Err::ParseError, "scenario: 'world' object is required");
  }
  const json& jw = doc["world"];
  if (jw.contains("file")) {
    reject_unknown_keys(jw, "world", {"file"});
    s.world.inline_generation = false;
    s.world.file = get_string(jw, "file", "");
    if (s.world.file.empty()) raise(Err::ParseError, "scenario: world file path is empty");
  } else {
    reject_unknown_keys(jw, "world", {"kind", "dims", "seed", "fire_count", "resolution"});
    s.world.inline_generation = true;
    s.world.kind = world_kind_from_string(get_string(jw, "kind", "empty_box"));
    if (jw.contains("dims")) {
      const json& jd = jw["dims"];
      if (!jd.is_array() || jd.size() != 3) {
        raise(Err::ParseError, "scenario: world dims must be [nx, ny, nz]");
      }
      for (int i = 0; i < 3; ++i) s.world.dims[i] = jd[i].get<std::int32_t>();
    }
    s.world.seed = static_cast<std::uint64_t>(get_integer(jw, "seed", 1));
    s.world.fire_count = static_cast<std::int32_t>(get_integer(jw, "fire_count", 0));
    s.world.resolution = get_number(jw, "resolution", 1.0);
  }

  WorldGrid world;
  try {
    world = build_world(s.world);
  } catch (const Error& e) {
    if (e.code() == Err::Io || e.code() == Err::ParseError) throw;
    as_validation_error(e);
  }
  const double res = world.resolution;

  if (!doc.contains("robots") || !doc["robots"].is_array() || doc["robots"].empty()) {
    raise(Err::ParseError, "scenario: 'robots' must be a non-empty array");
  }
  for (const json& jr : doc["robots"]) {
    if (!jr.is_array() || jr.size() != 3) {
      raise(Err::ParseError, "scenario: each robot start must be [x, y, z]");
    }
    s.robots.push_back({jr[0].get<std::int32_t>(), jr[1].get<std::int32_t>(),
                        jr[2].get<std::int32_t>()});
  }
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    if (!world.traversable(s.robots[i])) {
      raise(Err::ValidationError,
            "scenario: robot " + std::to_string(i) + " starts in a non-traversable voxel");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (s.robots[i] == s.robots[j]) {
        raise(Err::ValidationError,
              "scenario: robot " + std::to_string(i) + " duplicates robot " +
                  std::to_string(j));
      }
    }
  }

  const json jsensor = doc.value("sensor", json::object());
  reject_unknown_keys(jsensor, "sensor",
                      {"max_range", "horizontal_rays", "vertical_rays", "vertical_fov",
                       "fire_detect_range", "range_noise_sigma"});
  s.sensor.max_range = get_number(jsensor, "max_range", 4.0);
  s.sensor.horizontal_rays =
      static_cast<std::int32_t>(get_integer(jsensor, "horizontal_rays", 16));
  s.sensor.vertical_rays =
      static_cast<std::int32_t>(get_integer(jsensor, "vertical_rays", 5));
  s.sensor.vertical_fov = get_number(jsensor, "vertical_fov", 2.6179938779914944);
  s.sensor.fire_detect_range = get_number(jsensor, "fire_detect_range", s.sensor.max_range);
  s.sensor.range_noise_sigma = get_number(jsensor, "range_noise_sigma", 0.0);

  const json jstrategy = doc.value("strategy", json::object());
  reject_unknown_keys(jstrategy, "strategy",
                      {"kind", "lambda", "coordination", "discount_radius", "replan_interval",
                       "min_cluster_size"});
  s.strategy.kind =
      strategy_kind_from_string(get_string(jstrategy, "kind", "nearest_frontier"));
  s.strategy.lambda = get_number(jstrategy, "lambda", 1.0);
  s.strategy.coordination =
      coordination_from_string(get_string(jstrategy, "coordination", "independent"));
  s.strategy.discount_radius =
      get_number(jstrategy, "discount_radius", 2.0 * s.sensor.max_range);
  s.strategy.replan_interval = get_integer(jstrategy, "replan_interval", 25);
  s.strategy.min_cluster_size = get_integer(jstrategy, "min_cluster_size", 3);

  const json jpf = doc.value("potential_field", json::object());
  reject_unknown_keys(jpf, "potential_field",
                      {"eta", "d0", "attract_gain", "step", "max_iters", "clearance"});
  s.pf.eta = get_number(jpf, "eta", 1.0);
  s.pf.d0 = get_number(jpf, "d0", 2.0 * res);
  s.pf.attract_gain = get_number(jpf, "attract_gain", 1.0);
  s.pf.step = get_number(jpf, "step", 0.25 * res);
  s.pf.max_iters = static_cast<std::int32_t>(get_integer(jpf, "max_iters", 50));
  s.pf.clearance = get_number(jpf, "clearance", 1.0 * res);

  if (doc.contains("ellipse") && !doc["ellipse"].is_null()) {
    const json& je = doc["ellipse"];
    reject_unknown_keys(je, "ellipse",
                        {"center", "semi_major", "semi_minor", "altitude", "count"});
    EllipseSpec e;
    if (je.contains("center")) {
      const json& jc = je["center"];
      if (!jc.is_array() || jc.size() != 2) {
        raise(Err::ParseError, "scenario: ellipse center must be [x, y]");
      }
      e.center_x = jc[0].get<double>();
      e.center_y = jc[1].get<double>();
    } else {
      e.center_x = world.building_center_x;
      e.center_y = world.building_center_y;
    }
    e.semi_major = get_number(je, "semi_major", 0.25 * world.nx * res);
    e.semi_minor = get_number(je, "semi_minor", 0.25 * world.ny * res);
    e.altitude = get_number(je, "altitude", 0.5 * world.nz * res);
    e.count = static_cast<std::int32_t>(get_integer(je, "count", 8));
    s.ellipse = e;
  }

  s.map_depth = static_cast<std::int32_t>(get_integer(doc, "map_depth", 0));
  s.max_ticks = get_integer(doc, "max_ticks", 5000);
  s.seed = static_cast<std::uint64_t>(get_integer(doc, "seed", 1));

  if (s.max_ticks < 0) raise(Err::ValidationError, "scenario: max_ticks must be >= 0");
  if (s.map_depth < 0 || s.map_depth > 16) {
    raise(Err::ValidationError, "scenario: map_depth must be in [0, 16]");
  }
  try {
    s.sensor.validate();
    s.strategy.validate();
    s.pf.validate();
    if (s.ellipse) s.ellipse->validate();
  } catch (const Error& e) {
    as_validation_error(e);
  }
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Err::Io, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_json(const Scenario& s) {
  json doc;
  json jw;
  if (s.world.inline_generation) {
    jw["kind"] = world_kind_to_string(s.world.kind);
    jw["dims"] = {s.world.dims[0], s.world.dims[1], s.world.dims[2]};
    jw["seed"] = s.world.seed;
    jw["fire_count"] = s.world.fire_count;
    jw["resolution"] = s.world.resolution;
  } else {
    jw["file"] = s.world.file;
  }
  doc["world"] = jw;

  json jrobots = json::array();
  for (const VoxelKey& r : s.robots) jrobots.push_back({r.x, r.y, r.z});
  doc["robots"] = jrobots;

  doc["sensor"] = {{"max_range", s.sensor.max_range},
                   {"horizontal_rays", s.sensor.horizontal_rays},
                   {"vertical_rays", s.sensor.vertical_rays},
                   {"vertical_fov", s.sensor.vertical_fov},
                   {"fire_detect_range", s.sensor.fire_detect_range},
                   {"range_noise_sigma", s.sensor.range_noise_sigma}};
  doc["strategy"] = {{"kind", strategy_kind_to_string(s.strategy.kind)},
                     {"lambda", s.strategy.lambda},
                     {"coordination", coordination_to_string(s.strategy.coordination)},
                     {"discount_radius", s.strategy.discount_radius},
                     {"replan_interval", s.strategy.replan_interval},
                     {"min_cluster_size", s.strategy.min_cluster_size}};
  doc["potential_field"] = {{"eta", s.pf.eta},
                            {"d0", s.pf.d0},
                            {"attract_gain", s.pf.attract_gain},
                            {"step", s.pf.step},
                            {"max_iters", s.pf.max_iters},
                            {"clearance", s.pf.clearance}};
  if (s.ellipse) {
    doc["ellipse"] = {{"center", {s.ellipse->center_x, s.ellipse->center_y}},
                      {"semi_major", s.ellipse->semi_major},
                      {"semi_minor", s.ellipse->semi_minor},
                      {"altitude", s.ellipse->altitude},
                      {"count", s.ellipse->count}};
  } else {
    doc["ellipse"] = nullptr;
  }
  doc["map_depth"] = s.map_depth;
  doc["max_ticks"] = s.max_ticks;
  doc["seed"] = s.seed;
  return doc.dump(2) + "\n";
}

std::string scenario_digest(const Scenario& s) {
  const std::string canon = canonical_json(s);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : canon) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_strategy_token(Scenario& s, const std::string& token) {
  const std::size_t slash = token.find('/');
  const std::string kind = token.substr(0, slash);
  s.strategy.kind = strategy_kind_from_string(kind);
  if (slash != std::string::npos) {
    s.strategy.coordination = coordination_from_string(token.substr(slash + 1));
  }
}

RunBundle run_scenario(const Scenario& s) {
  WorldGrid world = build_world(s.world);
  SimConfig cfg;
  cfg.sensor = s.sensor;
  cfg.strategy = s.strategy;
  cfg.pf = s.pf;
  cfg.ellipse = s.ellipse;
  cfg.max_ticks = s.max_ticks;
  cfg.seed = s.seed;
  cfg.map_depth = s.map_depth;

  Simulation sim(world, cfg, s.robots);
  Metrics metrics = sim.run();
  return RunBundle{std::move(metrics), std::move(world), std::move(sim).release_map()};
}

}  // namespace voxplore
