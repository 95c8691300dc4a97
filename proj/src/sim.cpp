#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "errors.hpp"

namespace voxplore {

const char* robot_status_name(RobotStatus s) {
  switch (s) {
    case RobotStatus::Idle: return "idle";
    case RobotStatus::Moving: return "moving";
    case RobotStatus::Replanning: return "replanning";
    case RobotStatus::Done: return "done";
  }
  return "?";
}

namespace {

std::int32_t depth_for_side(std::int32_t max_dim) {
  std::int32_t d = 1;
  while ((1 << d) < max_dim) ++d;
  return d;
}

std::vector<VoxelKey> reachable_traversable(const WorldGrid& world,
                                            const std::vector<VoxelKey>& starts) {
  std::vector<std::uint8_t> seen(world.voxel_count(), 0);
  std::deque<VoxelKey> queue;
  std::vector<VoxelKey> out;
  for (const VoxelKey& s : starts) {
    if (!world.traversable(s) || seen[world.index_of(s)]) continue;
    seen[world.index_of(s)] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const VoxelKey k = queue.front();
    queue.pop_front();
    out.push_back(k);
    for (const VoxelKey& d : kFaceNeighbors) {
      const VoxelKey n = k + d;
      if (!world.traversable(n)) continue;
      auto& mark = seen[world.index_of(n)];
      if (mark) continue;
      mark = 1;
      queue.push_back(n);
    }
  }
  return out;
}

std::int32_t manhattan(const VoxelKey& a, const VoxelKey& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

}  // namespace

double coverage(const OccupancyOctree& map, const WorldGrid& world,
                const std::vector<VoxelKey>& starts) {
  if (map.resolution() != world.resolution || world.origin != Vec3{}) {
    raise(Err::FrameMismatch, "map and world must share resolution and a zero origin");
  }
  const std::vector<VoxelKey> reachable = reachable_traversable(world, starts);
  if (reachable.empty()) return 0.0;
  std::int64_t mapped = 0;
  for (const VoxelKey& k : reachable) {
    if (map.in_cube(k) && map.state_of(k) == VoxelState::Free) ++mapped;
  }
  return static_cast<double>(mapped) / static_cast<double>(reachable.size());
}

Simulation::Simulation(WorldGrid world, SimConfig cfg, const std::vector<VoxelKey>& starts)
    : world_(std::move(world)),
      cfg_(cfg),
      map_(world_.resolution,
           cfg.map_depth > 0 ? cfg.map_depth
                             : depth_for_side(std::max({world_.nx, world_.ny, world_.nz}))),
      starts_(starts),
      noise_rng_(Rng(cfg.seed).stream("sensor-noise")) {
  cfg_.sensor.validate();
  cfg_.strategy.validate();
  cfg_.pf.validate();
  if (world_.origin != Vec3{}) {
    raise(Err::FrameMismatch, "simulation requires a world anchored at the origin");
  }
  if (map_.side() < std::max({world_.nx, world_.ny, world_.nz})) {
    raise(Err::InvalidParams, "map_depth too small for the world");
  }
  if (starts.empty()) raise(Err::ScenarioInvalid, "at least one robot is required");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (!world_.traversable(starts[i])) {
      raise(Err::ScenarioInvalid,
            "robot " + std::to_string(i) + " starts inside an obstacle or out of bounds");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (starts[i] == starts[j]) {
        raise(Err::ScenarioInvalid, "robot " + std::to_string(i) + " duplicates a start");
      }
    }
    RobotState r;
    r.id = static_cast<std::int32_t>(i);
    r.pose.position = world_.frame().center_of(starts[i]);
    r.pose.yaw = 0.0;
    robots_.push_back(r);
  }
  reachable_ = reachable_traversable(world_, starts_);
  world_bounds_ = KeyBox{{0, 0, 0}, {world_.nx - 1, world_.ny - 1, world_.nz - 1}};
  if (cfg_.ellipse) {
    cfg_.ellipse->validate();
    perimeter_ = ellipse_targets(*cfg_.ellipse);
  }
}

double Simulation::coverage_now() const {
  if (reachable_.empty()) return 0.0;
  std::int64_t mapped = 0;
  for (const VoxelKey& k : reachable_) {
    if (map_.in_cube(k) && map_.state_of(k) == VoxelState::Free) ++mapped;
  }
  return static_cast<double>(mapped) / static_cast<double>(reachable_.size());
}

std::int64_t Simulation::frontier_cell_count() const {
  return static_cast<std::int64_t>(detect_frontiers(map_, world_bounds_).size());
}

bool Simulation::needs_replan(const RobotState& r) const {
  if (!r.target || !r.path) return true;
  const VoxelKey at = world_.frame().key_of(r.pose.position);
  if (manhattan(at, *r.target) <= 1) return true;  // arrival: at or face-adjacent
  if (r.progress + 1 >= r.path->waypoints.size()) return true;  // path exhausted
  const VoxelKey next = map_.frame().key_of(r.path->waypoints[r.progress + 1]);
  if (!map_.in_cube(next) || map_.state_of(next) != VoxelState::Free) return true;
  if (tick_ - r.last_plan_tick >= cfg_.strategy.replan_interval) return true;
  return false;
}

bool Simulation::adopt_plan(RobotState& r, const VoxelKey& goal, std::vector<Event>& events) {
  const VoxelKey start = world_.frame().key_of(r.pose.position);
  try {
    Path planned = plan_path(map_, start, goal);
    Path corrected = validate_and_correct(planned, map_, cfg_.pf);
    // Corrected waypoints may drift off the lattice; refuse any that left
    // mapped Free space so motion stays inside validated voxels.
    for (std::size_t i = 1; i + 1 < corrected.waypoints.size(); ++i) {
      const VoxelKey k = map_.frame().key_of(corrected.waypoints[i]);
      if (!map_.in_cube(k) || map_.state_of(k) != VoxelState::Free) {
        raise(Err::CorrectionFailed, "corrected waypoint left mapped free space");
      }
    }
    r.target = goal;
    r.path = std::move(corrected);
    r.progress = 0;
    r.status = RobotStatus::Moving;
    r.last_plan_tick = tick_;
    events.push_back({tick_, r.id, EventKind::TargetAssigned, goal});
    return true;
  } catch (const Error& e) {
    if (e.code() != Err::NoPath && e.code() != Err::CorrectionFailed &&
        e.code() != Err::StartNotFree && e.code() != Err::GoalNotFree) {
      throw;
    }
    r.target.reset();
    r.path.reset();
    r.status = RobotStatus::Idle;
    events.push_back({tick_, r.id, EventKind::RobotIdle, goal});
    return false;
  }
}

void Simulation::coordination_pass(std::vector<Event>& events) {
  const std::vector<FrontierCell> cells = detect_frontiers(map_, world_bounds_);
  const std::vector<FrontierCluster> clusters =
      cluster_frontiers(cells, cfg_.strategy.min_cluster_size, map_.frame());

  std::vector<std::int32_t> replanning;
  for (const RobotState& r : robots_) {
    if (r.status == RobotStatus::Replanning) replanning.push_back(r.id);
  }
  if (replanning.empty()) return;

  if (clusters.empty()) {
    // Exploration complete: a full replan pass found no clusters.
    for (const std::int32_t id : replanning) {
      RobotState& r = robots_[id];
      r.target.reset();
      r.path.reset();
      r.status = RobotStatus::Done;
      events.push_back({tick_, id, EventKind::RobotDone, VoxelKey{}});
    }
    complete_ = true;
    return;
  }

  if (cfg_.strategy.coordination == Coordination::Independent) {
    for (const std::int32_t id : replanning) {
      RobotState& r = robots_[id];
      std::optional<VoxelKey> goal;
      if (cfg_.strategy.kind == StrategyKind::NearestFrontier) {
        goal = select_nearest_frontier(clusters, r.pose, map_);
      } else {
        const std::vector<Candidate> scored =
            score_candidates(clusters, r.pose, map_, cfg_.sensor, cfg_.strategy);
        const Candidate* best = nullptr;
        for (const Candidate& c : scored) {
          if (!best || c.benefit > best->benefit ||
              (c.benefit == best->benefit && c.target < best->target)) {
            best = &c;
          }
        }
        if (best) goal = best->target;
      }
      if (goal) {
        adopt_plan(r, *goal, events);
      } else {
        r.target.reset();
        r.path.reset();
        r.status = RobotStatus::Idle;
        events.push_back({tick_, id, EventKind::RobotIdle, VoxelKey{}});
      }
    }
    return;
  }

  // Joint assignment over the replanning robots only.
  std::vector<Pose> poses;
  poses.reserve(replanning.size());
  for (const std::int32_t id : replanning) poses.push_back(robots_[id].pose);

  const Assignment assignment =
      cfg_.strategy.coordination == Coordination::Hungarian
          ? assign_hungarian(poses, clusters, map_, cfg_.sensor, cfg_.strategy)
          : assign_greedy(poses, clusters, map_, cfg_.sensor, cfg_.strategy);

  for (const auto& [local_id, goal] : assignment.pairs) {
    adopt_plan(robots_[replanning[local_id]], goal, events);
  }
  for (const std::int32_t local_id : assignment.idle) {
    RobotState& r = robots_[replanning[local_id]];
    r.target.reset();
    r.path.reset();
    r.status = RobotStatus::Idle;
    events.push_back({tick_, r.id, EventKind::RobotIdle, VoxelKey{}});
  }
}

void Simulation::perimeter_pass(std::vector<Event>& events) {
  const Frame f = world_.frame();
  for (RobotState& r : robots_) {
    if (r.status != RobotStatus::Replanning) continue;
    const VoxelKey at = f.key_of(r.pose.position);

    bool planned = false;
    while (!planned) {
      // Waypoints are dealt round-robin: robot i owns perimeter points
      // i, i + R, i + 2R, ...
      const std::size_t slot =
          r.id + r.waypoint_index * robots_.size();
      if (slot >= perimeter_.size()) {
        r.target.reset();
        r.path.reset();
        r.status = RobotStatus::Done;
        events.push_back({tick_, r.id, EventKind::RobotDone, VoxelKey{}});
        break;
      }
      const Vec3 wp = perimeter_[slot];
      const VoxelKey snapped = f.key_of(wp);
      if (manhattan(at, snapped) <= 1) {
        ++r.waypoint_index;
        events.push_back({tick_, r.id, EventKind::WaypointReached, snapped});
        continue;
      }

      // Plan to the waypoint voxel when it is known Free, otherwise to the
      // reachable Free voxel nearest the waypoint.
      VoxelKey goal = snapped;
      if (!map_.in_cube(goal) || map_.state_of(goal) != VoxelState::Free) {
        const auto dist = distance_field(map_, at);
        double best_d = std::numeric_limits<double>::infinity();
        bool found = false;
        for (const auto& [key, moves] : dist) {
          (void)moves;
          const double d = (f.center_of(key) - wp).norm();
          if (d < best_d || (d == best_d && found && key < goal)) {
            best_d = d;
            goal = key;
            found = true;
          }
        }
        if (!found) {
          r.status = RobotStatus::Idle;
          events.push_back({tick_, r.id, EventKind::RobotIdle, snapped});
          break;
        }
        if (goal == at) {
          // Already as close as mapped space allows; consume the waypoint so
          // an unreachable perimeter point cannot stall the mission.
          ++r.waypoint_index;
          events.push_back({tick_, r.id, EventKind::WaypointReached, snapped});
          continue;
        }
      }
      planned = adopt_plan(r, goal, events);
      break;
    }
  }

  bool all_done = true;
  for (const RobotState& r : robots_) {
    if (r.status != RobotStatus::Done) all_done = false;
  }
  if (all_done) complete_ = true;
}

std::vector<Event> Simulation::step() {
  if (complete_) raise(Err::InvalidArgument, "stepping a completed simulation");
  std::vector<Event> events;

  // Sense and integrate, in robot id order.
  for (RobotState& r : robots_) {
    Rng* noise = cfg_.sensor.range_noise_sigma > 0.0 ? &noise_rng_ : nullptr;
    const Scan scan = sense(world_, r.pose, cfg_.sensor, noise);
    map_.integrate_scan(scan);
    for (const VoxelKey& v : scan.fire_observations) {
      if (fire_seen_.insert(v).second) {
        detections_.push_back({v, tick_, r.id});
        events.push_back({tick_, r.id, EventKind::FireDetected, v});
      }
    }
  }

  // Replan triggers.
  for (RobotState& r : robots_) {
    if (r.status == RobotStatus::Done) continue;
    if (needs_replan(r)) r.status = RobotStatus::Replanning;
  }

  bool any_replanning = false;
  for (const RobotState& r : robots_) {
    any_replanning |= r.status == RobotStatus::Replanning;
  }
  if (any_replanning) {
    if (cfg_.ellipse) {
      perimeter_pass(events);
    } else {
      coordination_pass(events);
    }
  }

  // Movement: one waypoint per tick.
  for (RobotState& r : robots_) {
    if (r.status != RobotStatus::Moving || !r.path) continue;
    if (r.progress + 1 >= r.path->waypoints.size()) continue;
    ++r.progress;
    const Vec3 next = r.path->waypoints[r.progress];
    r.distance_traveled += (next - r.pose.position).norm();
    r.pose.position = next;
  }

  ++tick_;
  return events;
}

void Simulation::record_rows(Metrics& m) const {
  const double cov = coverage_now();
  const std::int64_t cells = frontier_cell_count();
  for (const RobotState& r : robots_) {
    m.series.push_back({tick_, cov, cells, r.id, r.distance_traveled});
  }
}

Metrics Simulation::run(const std::function<void(const Simulation&)>& observer) {
  Metrics m;
  record_rows(m);
  if (observer) observer(*this);
  while (tick_ < cfg_.max_ticks && !complete_) {
    step();
    record_rows(m);
    if (observer) observer(*this);
  }
  m.total_ticks = tick_;
  m.coverage = coverage_now();
  m.total_distance = 0.0;
  for (const RobotState& r : robots_) m.total_distance += r.distance_traveled;
  m.completed = complete_;
  m.detections = detections_;
  m.map_nodes = map_.memory_stats().node_count;
  return m;
}

}  // namespace voxplore
