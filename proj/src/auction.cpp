// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rangetap/auction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rangetap {

const char* to_string(RangeCheckMode mode) {
  switch (mode) {
    case RangeCheckMode::kPaperLiteral:
      return "paper-literal";
    case RangeCheckMode::kNoReturn:
      return "no-return";
    case RangeCheckMode::kWithReturn:
      return "with-return";
  }
  return "unknown";
}

std::optional<RangeCheckMode> parse_range_check_mode(std::string_view text) {
  if (text == "paper-literal") return RangeCheckMode::kPaperLiteral;
  if (text == "no-return") return RangeCheckMode::kNoReturn;
  if (text == "with-return") return RangeCheckMode::kWithReturn;
  return std::nullopt;
}

void validate(const RobotSpec& robot) {
  const std::string who = "robot " + std::to_string(robot.id) + ": ";
  if (!is_finite(robot.start)) throw InvalidSpec(who + "non-finite start");
  if (!(robot.radius > 0.0)) throw InvalidSpec(who + "radius must be > 0");
  if (robot.capacity < 0) throw InvalidSpec(who + "capacity must be >= 0");
  if (!(robot.range_budget > 0.0)) {
    throw InvalidSpec(who + "range budget must be > 0");
  }
}

void validate(const AllocConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) {
    throw InvalidSpec("lambda must lie in (0, 1)");
  }
  if (!(cfg.sentinel > 0.0 && cfg.sentinel < 1.0)) {
    throw InvalidSpec("sentinel must lie in (0, 1)");
  }
}

double reward_of(std::span<const double> arrival_distances, double lambda) {
  double total = 0.0;
  for (double d : arrival_distances) total += std::pow(lambda, d);
  return total;
}

bool range_feasible(RangeCheckMode mode, double committed, double leg_length,
                    double return_length, double budget) {
  const double after = committed + leg_length;
  switch (mode) {
    case RangeCheckMode::kPaperLiteral:
      return !(after + leg_length > budget);
    case RangeCheckMode::kNoReturn:
      return !(after > budget);
    case RangeCheckMode::kWithReturn:
      return !(after + return_length > budget);
  }
  return false;
}

Point RobotLedger::tail(const RobotSpec& robot) const {
  if (tasks.empty() || committed_path.waypoints.empty()) return robot.start;
  return committed_path.waypoints.back();
}

GosLegPlanner::GosLegPlanner(std::vector<Polygon> raw,
                             std::span<const RobotSpec> robots) {
  for (const RobotSpec& r : robots) {
    if (!by_radius_.contains(r.radius)) {
      by_radius_.emplace(r.radius, ObstacleSet::build(raw, r.radius));
    }
  }
}

GosLegPlanner::GosLegPlanner(ObstacleSet obstacles)
    : shared_(std::move(obstacles)) {}

const ObstacleSet& GosLegPlanner::obstacles_for(double radius) const {
  if (shared_) return *shared_;
  const auto it = by_radius_.find(radius);
  if (it == by_radius_.end()) {
    throw InvalidSpec("no obstacle set prepared for radius " +
                      std::to_string(radius));
  }
  return it->second;
}

PlanResult GosLegPlanner::plan(const Point& from, const Point& to,
                               const RobotSpec& robot) const {
  ++calls_;
  return plan_global_path(from, to, obstacles_for(robot.radius));
}

PlanResult StraightLegPlanner::plan(const Point& from, const Point& to,
                                    const RobotSpec&) const {
  ++calls_;
  PlanResult result;
  std::vector<Point> pts{from};
  if (!(from == to)) pts.push_back(to);
  result.path = PlannedPath::from_waypoints(std::move(pts));
  return result;
}

namespace {

void make_sentinel(Bid& bid, const AllocConfig& cfg) {
  bid.value = cfg.sentinel;
  bid.log_value = std::log(cfg.sentinel);
  bid.eligible = false;
}

}  // namespace

Bid compute_bid(const RobotSpec& robot, const RobotLedger& ledger,
                const TaskSpec& task, const LegPlanner& planner,
                const AllocConfig& cfg,
                const std::optional<double>& return_length) {
  Bid bid;
  const PlanResult leg = planner.plan(ledger.tail(robot), task.position, robot);
  if (!leg.ok()) {
    bid.diagnostic = "robot " + std::to_string(robot.id) + " -> task " +
                     std::to_string(task.id) + ": planning failed (" +
                     to_string(leg.status) + ")";
    make_sentinel(bid, cfg);
    return bid;
  }
  bid.leg = *leg.path;
  const double d = bid.leg.length;
  bid.distance_after = ledger.distance + d;
  // (reward + lambda^dist) - reward reduces to lambda^dist. Ranking
  // uses the log so that kilometre-scale maps do not underflow to zero.
  bid.value = std::pow(cfg.lambda, bid.distance_after);
  bid.log_value = bid.distance_after * std::log(cfg.lambda);
  bid.eligible = true;

  bool feasible;
  if (cfg.range_check_mode == RangeCheckMode::kWithReturn) {
    feasible = return_length.has_value() &&
               range_feasible(cfg.range_check_mode, ledger.distance, d,
                              *return_length, robot.range_budget);
  } else {
    feasible = range_feasible(cfg.range_check_mode, ledger.distance, d, 0.0,
                              robot.range_budget);
  }
  if (!feasible) make_sentinel(bid, cfg);
  return bid;
}

Bid compute_bid(const RobotSpec& robot, const RobotLedger& ledger,
                const TaskSpec& task, const ObstacleSet& obstacles,
                const AllocConfig& cfg) {
  const GosLegPlanner planner(obstacles);
  std::optional<double> ret;
  if (cfg.range_check_mode == RangeCheckMode::kWithReturn) {
    const PlanResult back = planner.plan(task.position, robot.start, robot);
    if (back.ok()) ret = back.path->length;
  }
  return compute_bid(robot, ledger, task, planner, cfg, ret);
}

Auctioneer::Auctioneer(std::vector<RobotSpec> robots,
                       std::vector<TaskSpec> tasks, const LegPlanner& planner,
                       AllocConfig cfg)
    : robots_(std::move(robots)),
      tasks_(std::move(tasks)),
      planner_(planner),
      cfg_(cfg) {
  validate(cfg_);
  std::set<int> seen;
  for (const RobotSpec& r : robots_) {
    validate(r);
    if (!seen.insert(r.id).second) {
      throw InvalidSpec("duplicate robot id " + std::to_string(r.id));
    }
  }
  seen.clear();
  for (const TaskSpec& t : tasks_) {
    if (!is_finite(t.position)) {
      throw InvalidSpec("task " + std::to_string(t.id) + ": non-finite position");
    }
    if (!seen.insert(t.id).second) {
      throw InvalidSpec("duplicate task id " + std::to_string(t.id));
    }
  }
  std::sort(robots_.begin(), robots_.end(),
            [](const RobotSpec& a, const RobotSpec& b) { return a.id < b.id; });
  std::sort(tasks_.begin(), tasks_.end(),
            [](const TaskSpec& a, const TaskSpec& b) { return a.id < b.id; });
  ledgers_.resize(robots_.size());
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    ledgers_[i].committed_path = PlannedPath::from_waypoints({robots_[i].start});
  }
  assigned_.assign(tasks_.size(), false);
  bids_.assign(robots_.size(),
               std::vector<std::optional<Bid>>(tasks_.size()));
  returns_.assign(robots_.size(), std::vector<ReturnLeg>(tasks_.size()));
  planner_calls_at_start_ = planner_.calls();
}

std::size_t Auctioneer::robot_index(int robot_id) const {
  const auto it = std::lower_bound(
      robots_.begin(), robots_.end(), robot_id,
      [](const RobotSpec& r, int id) { return r.id < id; });
  if (it == robots_.end() || it->id != robot_id) {
    throw UnknownRobot("unknown robot id " + std::to_string(robot_id));
  }
  return static_cast<std::size_t>(it - robots_.begin());
}

void Auctioneer::mark_dirty(int robot_id) {
  ledgers_[robot_index(robot_id)].dirty = true;
}

bool Auctioneer::is_dirty(int robot_id) const {
  return ledgers_[robot_index(robot_id)].dirty;
}

const std::optional<double>& Auctioneer::return_length(std::size_t i,
                                                       std::size_t j) {
  ReturnLeg& cached = returns_[i][j];
  if (!cached.planned) {
    const PlanResult back =
        planner_.plan(tasks_[j].position, robots_[i].start, robots_[i]);
    if (back.ok()) cached.length = back.path->length;
    cached.planned = true;
  }
  return cached.length;
}

void Auctioneer::refresh_bids(std::size_t i) {
  const bool with_return =
      cfg_.range_check_mode == RangeCheckMode::kWithReturn;
  for (std::size_t j = 0; j < tasks_.size(); ++j) {
    if (assigned_[j]) continue;
    std::optional<double> ret;
    if (with_return) ret = return_length(i, j);
    bids_[i][j] =
        compute_bid(robots_[i], ledgers_[i], tasks_[j], planner_, cfg_, ret);
    ++bid_calls_;
    if (!bids_[i][j]->diagnostic.empty()) {
      diagnostics_.push_back(bids_[i][j]->diagnostic);
    }
  }
  ledgers_[i].dirty = false;
}

bool Auctioneer::run_round() {
  last_winner_.reset();
  if (finished_) return false;
  if (std::all_of(assigned_.begin(), assigned_.end(),
                  [](bool a) { return a; })) {
    finished_ = true;
    return false;
  }
  ++rounds_;

  auto has_capacity = [&](std::size_t i) {
    return static_cast<int>(ledgers_[i].tasks.size()) < robots_[i].capacity;
  };
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    if (!has_capacity(i)) continue;
    if (ledgers_[i].dirty || !cfg_.lazy) refresh_bids(i);
  }

  // Robots and tasks are sorted by id, so a strict comparison keeps the
  // lower robot id, then the lower task id, on ties.
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_log = 0.0;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    if (!has_capacity(i)) continue;
    for (std::size_t j = 0; j < tasks_.size(); ++j) {
      if (assigned_[j] || !bids_[i][j] || !bids_[i][j]->eligible) continue;
      if (!best || bids_[i][j]->log_value > best_log) {
        best = {i, j};
        best_log = bids_[i][j]->log_value;
      }
    }
  }
  if (!best) {
    finished_ = true;
    return false;
  }

  const auto [wi, wj] = *best;
  const Bid& bid = *bids_[wi][wj];
  RobotLedger& ledger = ledgers_[wi];
  if (ledger.tasks.empty()) {
    ledger.committed_path.waypoints = bid.leg.waypoints;
  } else {
    auto& pts = ledger.committed_path.waypoints;
    pts.insert(pts.end(), bid.leg.waypoints.begin() + 1, bid.leg.waypoints.end());
  }
  ledger.distance = ledger.distance + bid.leg.length;
  ledger.committed_path.length = ledger.distance;
  ledger.arrival.push_back(ledger.distance);
  ledger.reward += std::pow(cfg_.lambda, ledger.distance);
  ledger.tasks.push_back(tasks_[wj].id);
  assigned_[wj] = true;
  mark_dirty(robots_[wi].id);
  last_winner_ = robots_[wi].id;
  return true;
}

void Auctioneer::run() {
  while (run_round()) {
  }
}

Allocation Auctioneer::result() const {
  Allocation out;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    out.ledgers.emplace(robots_[i].id, ledgers_[i]);
  }
  for (std::size_t j = 0; j < tasks_.size(); ++j) {
    if (!assigned_[j]) out.unassigned.push_back(tasks_[j].id);
  }
  out.rounds = rounds_;
  out.stats.compute_bid_calls = bid_calls_;
  out.stats.planner_calls = planner_.calls() - planner_calls_at_start_;
  out.diagnostics = diagnostics_;
  return out;
}

void check_tasks_free(std::span<const TaskSpec> tasks,
                      const GosLegPlanner& planner,
                      std::span<const RobotSpec> robots) {
  for (const RobotSpec& r : robots) {
    const ObstacleSet& set = planner.obstacles_for(r.radius);
    for (const TaskSpec& t : tasks) {
      if (const Polygon* host = containing_obstacle(t.position, set.obstacles)) {
        throw InfeasibleEnvironment(
            "task " + std::to_string(t.id) + " at " + to_string(t.position) +
            " lies inside merged obstacle " + std::to_string(host->id) +
            " (inflation radius " + std::to_string(r.radius) + ")");
      }
    }
  }
}

Allocation allocate(const std::vector<RobotSpec>& robots,
                    const std::vector<TaskSpec>& tasks,
                    const std::vector<Polygon>& raw_obstacles,
                    const AllocConfig& cfg) {
  const GosLegPlanner planner(raw_obstacles, robots);
  check_tasks_free(tasks, planner, robots);
  Auctioneer auction(robots, tasks, planner, cfg);
  auction.run();
  return auction.result();
}

double total_reward(const Allocation& allocation) {
  double total = 0.0;
  for (const auto& [id, ledger] : allocation.ledgers) total += ledger.reward;
  return total;
}

double total_distance(const Allocation& allocation) {
  double total = 0.0;
  for (const auto& [id, ledger] : allocation.ledgers) total += ledger.distance;
  return total;
}

}  // namespace rangetap
