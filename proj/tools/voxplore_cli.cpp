// voxplore command line front end. Talks to the simulator exclusively through
// the C API in voxplore/voxplore.h.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voxplore/voxplore.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMaxTicks = 2;

struct ScenarioDeleter {
  void operator()(vxp_scenario* s) const { vxp_scenario_destroy(s); }
};
struct ResultDeleter {
  void operator()(vxp_result* r) const { vxp_result_destroy(r); }
};
struct WorldDeleter {
  void operator()(vxp_world* w) const { vxp_world_destroy(w); }
};

using ScenarioPtr = std::unique_ptr<vxp_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<vxp_result, ResultDeleter>;
using WorldPtr = std::unique_ptr<vxp_world, WorldDeleter>;

int fail(const std::string& context) {
  std::cerr << "voxplore: " << context << ": " << vxp_last_error() << "\n";
  return kExitError;
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Seeds accept "1,2,5" and ranges "1..20" (inclusive), or a mix.
bool parse_seeds(const std::string& text, std::vector<std::uint64_t>& out) {
  for (const std::string& part : split_csv(text)) {
    const std::size_t dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const std::uint64_t lo = std::stoull(part.substr(0, dots));
        const std::uint64_t hi = std::stoull(part.substr(dots + 2));
        if (hi < lo) return false;
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir) {
  vxp_scenario* raw_scenario = nullptr;
  if (vxp_scenario_parse_file(scenario_path.c_str(), &raw_scenario) != VXP_OK) {
    return fail("parsing " + scenario_path);
  }
  ScenarioPtr scenario(raw_scenario);

  vxp_result* raw_result = nullptr;
  if (vxp_run(scenario.get(), &raw_result) != VXP_OK) return fail("running scenario");
  ResultPtr result(raw_result);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "voxplore: cannot create output directory " << out_dir << "\n";
    return kExitError;
  }

  char* metrics = nullptr;
  if (vxp_result_metrics_csv(result.get(), &metrics) != VXP_OK) return fail("metrics");
  const bool metrics_ok = write_file(out_dir + "/metrics.csv", metrics);
  vxp_string_free(metrics);

  char* summary = nullptr;
  if (vxp_result_summary_json(result.get(), &summary) != VXP_OK) return fail("summary");
  const bool summary_ok = write_file(out_dir + "/summary.json", summary);
  vxp_string_free(summary);

  if (!metrics_ok || !summary_ok) {
    std::cerr << "voxplore: failed writing outputs to " << out_dir << "\n";
    return kExitError;
  }
  if (vxp_result_save_map(result.get(), (out_dir + "/map.txt").c_str()) != VXP_OK) {
    return fail("saving map");
  }
  if (vxp_result_save_world(result.get(), (out_dir + "/world.txt").c_str()) != VXP_OK) {
    return fail("saving world");
  }

  std::printf("ticks=%lld coverage=%.6f distance=%.3f detections=%lld map_nodes=%lld\n",
              static_cast<long long>(vxp_result_ticks(result.get())),
              vxp_result_coverage(result.get()), vxp_result_total_distance(result.get()),
              static_cast<long long>(vxp_result_detection_count(result.get())),
              static_cast<long long>(vxp_result_map_nodes(result.get())));
  return vxp_result_completed(result.get()) ? kExitOk : kExitMaxTicks;
}

int cmd_compare(const std::string& scenario_path, const std::string& strategies,
                const std::string& seeds_text, const std::string& out_path) {
  std::vector<std::string> tokens = split_csv(strategies);
  if (tokens.empty()) {
    std::cerr << "voxplore: --strategies must name at least one strategy\n";
    return kExitError;
  }
  std::vector<std::uint64_t> seeds;
  if (!parse_seeds(seeds_text, seeds)) {
    std::cerr << "voxplore: --seeds must be a list like 1,2,5 or a range like 1..20\n";
    return kExitError;
  }

  vxp_scenario* raw_scenario = nullptr;
  if (vxp_scenario_parse_file(scenario_path.c_str(), &raw_scenario) != VXP_OK) {
    return fail("parsing " + scenario_path);
  }
  ScenarioPtr scenario(raw_scenario);

  std::vector<const char*> token_ptrs;
  token_ptrs.reserve(tokens.size());
  for (const std::string& t : tokens) token_ptrs.push_back(t.c_str());

  char* csv = nullptr;
  int any_unfinished = 0;
  if (vxp_compare(scenario.get(), token_ptrs.data(),
                  static_cast<int64_t>(token_ptrs.size()), seeds.data(),
                  static_cast<int64_t>(seeds.size()), &csv, &any_unfinished) != VXP_OK) {
    return fail("compare");
  }
  const bool ok = write_file(out_path, csv);
  vxp_string_free(csv);

  if (!ok) {
    std::cerr << "voxplore: failed writing " << out_path << "\n";
    return kExitError;
  }
  return any_unfinished ? kExitMaxTicks : kExitOk;
}

int cmd_gen_world(const std::string& kind, const std::string& dims_text, std::uint64_t seed,
                  std::int32_t fires, const std::string& out_path) {
  std::vector<std::string> parts = split_csv(dims_text);
  if (parts.size() != 3) {
    std::cerr << "voxplore: --dims must be X,Y,Z\n";
    return kExitError;
  }
  std::int32_t dims[3];
  try {
    for (int i = 0; i < 3; ++i) dims[i] = std::stoi(parts[i]);
  } catch (const std::exception&) {
    std::cerr << "voxplore: --dims must be integers\n";
    return kExitError;
  }

  vxp_world* raw_world = nullptr;
  if (vxp_world_generate(kind.c_str(), dims[0], dims[1], dims[2], seed, fires, &raw_world) !=
      VXP_OK) {
    return fail("generating world");
  }
  WorldPtr world(raw_world);
  if (vxp_world_save(world.get(), out_path.c_str()) != VXP_OK) return fail("saving world");
  std::printf("%lld\n", static_cast<long long>(vxp_world_traversable_count(world.get())));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voxplore: deterministic multi-robot 3D exploration simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", out_path = "compare.csv";
  std::string strategies, seeds_text;
  std::string kind = "empty_box", dims_text = "16,16,8";
  std::uint64_t seed = 1;
  std::int32_t fires = 0;

  CLI::App* run = app.add_subcommand("run", "run one scenario and export its outputs");
  run->add_option("scenario", scenario_path, "scenario JSON path")->required();
  run->add_option("-o,--out", out_dir, "output directory")->capture_default_str();

  CLI::App* compare =
      app.add_subcommand("compare", "sweep strategies x seeds and tabulate the results");
  compare->add_option("scenario", scenario_path, "scenario JSON path")->required();
  compare->add_option("--strategies", strategies,
                      "comma list of strategy tokens, e.g. "
                      "nearest_frontier,cost_utility/hungarian")
      ->required();
  compare->add_option("--seeds", seeds_text, "seed list 1,2,5 or range 1..20")->required();
  compare->add_option("-o,--out", out_path, "output CSV path")->capture_default_str();

  CLI::App* gen = app.add_subcommand("gen-world", "generate and export a ground-truth world");
  gen->add_option("--kind", kind, "empty_box | rooms_and_corridors | building_shell")
      ->capture_default_str();
  gen->add_option("--dims", dims_text, "voxel counts X,Y,Z")->capture_default_str();
  gen->add_option("--seed", seed, "generation seed")->capture_default_str();
  gen->add_option("--fires", fires, "number of fire voxels")->capture_default_str();
  gen->add_option("-o,--out", out_path, "output world file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  if (run->parsed()) return cmd_run(scenario_path, out_dir);
  if (compare->parsed()) return cmd_compare(scenario_path, strategies, seeds_text, out_path);
  if (gen->parsed()) return cmd_gen_world(kind, dims_text, seed, fires, out_path);
  return kExitError;
}
