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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rangetap/bench.hpp"
#include "rangetap/scenario_io.hpp"
#include "support/independent.hpp"

#ifndef RANGETAP_DATA_DIR
#define RANGETAP_DATA_DIR "data"
#endif

namespace {

using namespace rangetap;
namespace ind = rangetap::testing;
using Clock = std::chrono::steady_clock;

// Pinned thresholds.
constexpr int kPlannerMaps = 200;
constexpr double kMaxMeanRatioToOptimal = 1.10;
constexpr double kMaxRatioToOptimal = 1.50;
constexpr double kSquareLength = 10.2462;        // 2 * sqrt(17) + 2, rounded
constexpr double kSquareTolerance = 1e-4;        // the rounded constant above
constexpr double kSquareOracleTolerance = 1e-6;  // GOS vs visibility graph
constexpr double kMinShareNotLongerThanGrid = 0.80;
constexpr int kSpeedQueries = 15;
constexpr double kMinSpeedup = 10.0;
constexpr int kAllocInstances = 100;
constexpr int kSmallInstances = 50;
constexpr int kFleetRepeats = 10;
constexpr double kGreedyBound = 0.5;
constexpr double kIdentityTolerance = 1e-9;
constexpr double kMaxTimeExponent = 2.0;
constexpr std::uint64_t kSuiteSeed = 20260417;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share one suite of generated maps.

struct PlannerSample {
  MapKind kind = MapKind::kSmall;
  std::uint64_t seed = 0;
  bool gos_ok = false;
  bool collision_free = false;
  bool vertices_only = false;
  bool endpoints_match = false;
  double gos = 0.0;
  double optimal = 0.0;
  double grid = 0.0;
  bool grid_ok = false;
  std::string note;
};

// Grid resolution for the quality comparison. Coarser than the bench
// defaults on the large class to stay within the runtime budget.
double quality_resolution(MapKind kind) {
  switch (kind) {
    case MapKind::kSmall: return 0.1;
    case MapKind::kMedium: return 0.5;
    default: return 2.0;
  }
}

bool is_obstacle_vertex(const Point& p, const ObstacleSet& set) {
  for (const Polygon& poly : set.obstacles) {
    for (const Point& v : poly.vertices) {
      if (v.x == p.x && v.y == p.y) return true;
    }
  }
  return false;
}

bool path_collision_free(const std::vector<Point>& pts, const ObstacleSet& set) {
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const Segment seg{pts[k - 1], pts[k]};
    if (!check_intersect(seg, set).empty()) return false;
    const double scale = std::max({1.0, std::abs(seg.a.x), std::abs(seg.a.y),
                                   std::abs(seg.b.x), std::abs(seg.b.y)});
    for (const Polygon& poly : set.obstacles) {
      if (ind::sampled_segment_enters(seg.a, seg.b, poly.vertices, 1e-7 * scale)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<PlannerSample> planner_suite() {
  std::vector<PlannerSample> out;
  const int small = kPlannerMaps / 2;
  const int medium = kPlannerMaps * 3 / 10;
  const int large = kPlannerMaps - small - medium;
  std::uint64_t counter = 0;
  for (auto [kind, n] : {std::pair{MapKind::kSmall, small},
                         std::pair{MapKind::kMedium, medium},
                         std::pair{MapKind::kLarge, large}}) {
    for (int k = 0; k < n; ++k) {
      PlannerSample sample;
      sample.kind = kind;
      sample.seed = derive_seed(kSuiteSeed, counter++);
      out.push_back(sample);
    }
  }
  parallel_for(out.size(), bench_threads(), [&](std::size_t i) {
    PlannerSample& s = out[i];
    const PlannerQuery q = make_query(s.kind, s.seed);
    const PlanResult r = plan_global_path(q.start, q.goal, q.obstacles);
    if (!r.ok()) {
      s.note = std::string(to_string(r.status)) + " " + r.diagnostic;
      return;
    }
    const auto& pts = r.path->waypoints;
    s.gos_ok = true;
    s.gos = ind::polyline_length(pts);
    s.endpoints_match = pts.front() == q.start && pts.back() == q.goal;
    s.collision_free = path_collision_free(pts, q.obstacles);
    s.vertices_only = true;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      s.vertices_only = s.vertices_only && is_obstacle_vertex(pts[k], q.obstacles);
    }
    s.optimal = ind::polyline_length(
        visibility_dijkstra(q.start, q.goal, q.obstacles).waypoints);
    const PlannerRun grid =
        run_planner(PlannerKind::kAstar, q, quality_resolution(s.kind));
    s.grid_ok = grid.ok;
    s.grid = grid.length;
  });
  return out;
}

Outcome criterion1(const std::vector<PlannerSample>& suite, double secs) {
  int failures = 0;
  int collisions = 0;
  int non_vertex = 0;
  for (const auto& s : suite) {
    if (!s.gos_ok || !s.endpoints_match) ++failures;
    if (s.gos_ok && !s.collision_free) ++collisions;
    if (s.gos_ok && !s.vertices_only) ++non_vertex;
  }
  Outcome o;
  o.pass = failures == 0 && collisions == 0 && non_vertex == 0 && secs < 120.0;
  o.detail = std::to_string(suite.size()) + " maps, " + std::to_string(failures) +
             " planning failures, " + std::to_string(collisions) +
             " colliding paths, " + std::to_string(non_vertex) +
             " non-vertex waypoints, " + fmt("%.1f s", secs);
  return o;
}

Outcome criterion2(const std::vector<PlannerSample>& suite) {
  double ratio_sum = 0.0;
  double worst_ratio = 0.0;
  int ratios = 0;
  int grid_compared = 0;
  int not_longer = 0;
  for (const auto& s : suite) {
    if (!s.gos_ok) continue;
    ratio_sum += s.gos / s.optimal;
    worst_ratio = std::max(worst_ratio, s.gos / s.optimal);
    ++ratios;
    if (s.grid_ok) {
      ++grid_compared;
      if (s.gos <= s.grid) ++not_longer;
    }
  }
  const double mean_ratio = ratios ? ratio_sum / ratios : kInf;
  const double share = grid_compared ? static_cast<double>(not_longer) / grid_compared : 0.0;

  const ObstacleSet square = ObstacleSet::build(
      {Polygon{0, {{4, -1}, {6, -1}, {6, 2}, {4, 2}}}}, 0.0);
  const PlanResult r = plan_global_path({0, 0}, {10, 0}, square);
  const double gos = r.ok() ? ind::polyline_length(r.path->waypoints) : kInf;
  const double vis =
      ind::polyline_length(visibility_dijkstra({0, 0}, {10, 0}, square).waypoints);
  const double exact = 2.0 * std::sqrt(17.0) + 2.0;

  Outcome o;
  o.pass = mean_ratio <= kMaxMeanRatioToOptimal && worst_ratio <= kMaxRatioToOptimal &&
           share >= kMinShareNotLongerThanGrid &&
           std::abs(gos - kSquareLength) <= kSquareTolerance &&
           std::abs(gos - exact) <= kSquareOracleTolerance &&
           std::abs(gos - vis) <= kSquareOracleTolerance;
  o.detail = "mean length ratio to optimum " + fmt("%.4f", mean_ratio) +
             ", max " + fmt("%.4f", worst_ratio) +
             ", not longer than grid on " + fmt("%.1f%%", 100.0 * share) +
             " of " + std::to_string(grid_compared) + ", square fixture " +
             fmt("%.6f", gos) + " (oracle " + fmt("%.6f", vis) + ")";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  const auto t0 = Clock::now();
  std::vector<double> gos_times;
  std::vector<double> grid_times;
  int polygons_min = 1 << 30;
  int failures = 0;
  for (int k = 0; k < kSpeedQueries; ++k) {
    const PlannerQuery q = make_query(MapKind::kLarge, derive_seed(kSuiteSeed + 3, k));
    polygons_min = std::min(polygons_min,
                            static_cast<int>(q.map.scenario.obstacles_raw.size()));
    const PlannerRun gos = run_planner(PlannerKind::kGos, q, 0.0);
    const PlannerRun grid = run_planner(PlannerKind::kAstar, q, 1.0);
    if (!gos.ok || !grid.ok) {
      ++failures;
      continue;
    }
    gos_times.push_back(gos.time_s);
    grid_times.push_back(grid.time_s);
  }
  auto median = [](std::vector<double> v) {
    if (v.empty()) return kInf;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  const double mg = median(gos_times);
  const double ma = median(grid_times);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && polygons_min >= 40 && mg * kMinSpeedup <= ma &&
           secs < 600.0;
  o.detail = "median GOS " + fmt("%.6f s", mg) + ", grid A* (1 m) " +
             fmt("%.4f s", ma) + ", speedup " + fmt("%.0fx", ma / mg) + ", " +
             std::to_string(failures) + " failures, min polygons " +
             std::to_string(polygons_min) + ", " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------------------
// Criteria 4, 5, 6 and 9 share allocation instances.

struct AllocInstance {
  Scenario scenario;
};

struct LedgerAudit {
  int violations = 0;
  double worst_identity = 0.0;
  std::vector<std::string> notes;
};

void audit_allocation(const Scenario& s, const Allocation& a, bool check_range,
                      LedgerAudit& audit) {
  const AllocConfig& cfg = s.alloc_config;
  std::set<int> seen;
  std::set<int> task_ids;
  std::map<int, Point> task_pos;
  for (const TaskSpec& t : s.tasks) {
    task_ids.insert(t.id);
    task_pos[t.id] = t.position;
  }
  auto violation = [&](const std::string& what) {
    ++audit.violations;
    if (audit.notes.size() < 5) audit.notes.push_back(s.name + ": " + what);
  };
  for (const RobotSpec& r : s.robots) {
    const auto it = a.ledgers.find(r.id);
    if (it == a.ledgers.end()) {
      violation("missing ledger for robot " + std::to_string(r.id));
      continue;
    }
    const RobotLedger& l = it->second;
    if (static_cast<int>(l.tasks.size()) > r.capacity) violation("capacity");
    for (int t : l.tasks) {
      if (!task_ids.count(t) || !seen.insert(t).second) violation("task assigned twice");
    }
    // Independent distance and reward from the committed polyline.
    const auto& pts = l.committed_path.waypoints;
    const double length = ind::polyline_length(pts);
    std::vector<Point> targets;
    for (int t : l.tasks) targets.push_back(task_pos[t]);
    const std::vector<double> arrivals = ind::arrivals_along(pts, targets);
    if (!l.tasks.empty() && arrivals.size() != l.tasks.size()) {
      violation("committed path misses a task");
      continue;
    }
    const double scale = std::max(1.0, length);
    audit.worst_identity = std::max(audit.worst_identity,
                                    std::abs(length - l.distance) / scale);
    for (std::size_t k = 0; k < arrivals.size(); ++k) {
      audit.worst_identity = std::max(audit.worst_identity,
                                      std::abs(arrivals[k] - l.arrival[k]) / scale);
    }
    audit.worst_identity =
        std::max(audit.worst_identity,
                 std::abs(ind::reward_from_arrivals(arrivals, cfg.lambda) - l.reward));
    if (!check_range || l.tasks.empty()) continue;
    double needed = length;
    if (cfg.range_check_mode == RangeCheckMode::kWithReturn) {
      const PlanResult back =
          plan_global_path(pts.back(), r.start, r.radius, s.obstacles_raw);
      if (!back.ok()) {
        violation("return leg unplannable");
        continue;
      }
      needed += ind::polyline_length(back.path->waypoints);
    }
    if (needed > r.range_budget + 1e-9 * std::max(1.0, r.range_budget)) {
      violation("robot " + std::to_string(r.id) + " needs " + fmt("%.4f", needed) +
                " > budget " + fmt("%.4f", r.range_budget));
    }
  }
  std::set<int> unassigned(a.unassigned.begin(), a.unassigned.end());
  for (int t : task_ids) {
    if (seen.count(t) == unassigned.count(t)) violation("task neither or both assigned");
  }
}

Scenario random_instance(std::uint64_t seed, int robots_lo, int robots_hi,
                         int tasks_lo, int tasks_hi, int cap_lo, int cap_hi,
                         double budget_lo, double budget_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nr(robots_lo, robots_hi);
  std::uniform_int_distribution<int> nt(tasks_lo, tasks_hi);
  std::uniform_int_distribution<int> cap(cap_lo, cap_hi);
  std::uniform_real_distribution<double> budget(budget_lo, budget_hi);
  const GeneratedMap map = generate_map(MapKind::kSmall, derive_seed(seed, 1));
  FleetParams fleet;
  fleet.robots = nr(rng);
  fleet.tasks = nt(rng);
  fleet.capacity = 1;
  for (int i = 0; i < fleet.robots; ++i) fleet.budgets.push_back(budget(rng));
  Scenario s = populate(map, fleet, derive_seed(seed, 2));
  for (RobotSpec& r : s.robots) r.capacity = cap(rng);
  s.name = "instance-" + std::to_string(seed);
  return s;
}

struct LazyEagerTally {
  int instances = 0;
  int mismatched = 0;
  int not_fewer = 0;
  int multi_round = 0;
};

Allocation run_with(const Scenario& s, RangeCheckMode mode, bool lazy) {
  AllocConfig cfg = s.alloc_config;
  cfg.range_check_mode = mode;
  cfg.lazy = lazy;
  return allocate(s.robots, s.tasks, s.obstacles_raw, cfg);
}

void compare_lazy_eager(const Allocation& lazy, const Allocation& eager,
                        LazyEagerTally& tally) {
  ++tally.instances;
  if (allocation_to_json(lazy).dump() != allocation_to_json(eager).dump()) {
    ++tally.mismatched;
  }
  if (lazy.rounds >= 2) {
    ++tally.multi_round;
    if (lazy.stats.compute_bid_calls >= eager.stats.compute_bid_calls) ++tally.not_fewer;
  }
}

struct AllocationResults {
  Outcome c4;
  Outcome c5;
  LazyEagerTally tally;
  double worst_identity = 0.0;
};

AllocationResults allocation_criteria() {
  AllocationResults out;
  LedgerAudit audit4;
  const auto t4 = Clock::now();
  int assigned = 0;
  int unassigned = 0;
  for (int k = 0; k < kAllocInstances; ++k) {
    Scenario s = random_instance(derive_seed(kSuiteSeed + 4, k), 5, 20, 10, 60,
                                 1, 6, 20.0, 120.0);
    for (RangeCheckMode mode : {RangeCheckMode::kNoReturn, RangeCheckMode::kWithReturn}) {
      s.alloc_config.range_check_mode = mode;
      const Allocation lazy = run_with(s, mode, true);
      const Allocation eager = run_with(s, mode, false);
      audit_allocation(s, lazy, true, audit4);
      audit_allocation(s, eager, true, audit4);
      compare_lazy_eager(lazy, eager, out.tally);
      unassigned += static_cast<int>(lazy.unassigned.size());
      assigned += static_cast<int>(s.tasks.size() - lazy.unassigned.size());
    }
  }
  const double secs4 = seconds_since(t4);
  out.c4.pass = audit4.violations == 0;
  out.c4.detail = std::to_string(kAllocInstances) + " instances x 2 modes, " +
                  std::to_string(audit4.violations) + " violations, " +
                  std::to_string(assigned) + " assignments, " +
                  std::to_string(unassigned) + " unassigned, " +
                  fmt("%.1f s", secs4);
  for (const auto& n : audit4.notes) out.c4.detail += "; " + n;

  LedgerAudit audit5;
  const auto t5 = Clock::now();
  double worst_share = kInf;
  int below = 0;
  constexpr RangeCheckMode kModes[] = {RangeCheckMode::kPaperLiteral,
                                       RangeCheckMode::kNoReturn,
                                       RangeCheckMode::kWithReturn};
  for (int k = 0; k < kSmallInstances; ++k) {
    Scenario s = random_instance(derive_seed(kSuiteSeed + 5, k), 2, 3, 3, 5, 1, 3,
                                 15.0, 60.0);
    const RangeCheckMode mode = kModes[k % 3];
    s.alloc_config.range_check_mode = mode;
    const Allocation lazy = run_with(s, mode, true);
    const Allocation eager = run_with(s, mode, false);
    audit_allocation(s, lazy, mode != RangeCheckMode::kPaperLiteral, audit5);
    compare_lazy_eager(lazy, eager, out.tally);
    const Allocation best =
        brute_force_allocation(s.robots, s.tasks, s.obstacles_raw, s.alloc_config);
    audit_allocation(s, best, mode != RangeCheckMode::kPaperLiteral, audit5);
    const double greedy = total_reward(lazy);
    const double optimum = total_reward(best);
    if (optimum > 0.0) worst_share = std::min(worst_share, greedy / optimum);
    if (greedy < kGreedyBound * optimum) ++below;
  }
  const double secs5 = seconds_since(t5);
  out.c5.pass = below == 0 && audit5.violations == 0 && secs5 < 300.0;
  out.c5.detail = std::to_string(kSmallInstances) + " instances, " +
                  std::to_string(below) + " below half the optimum, worst ratio " +
                  fmt("%.4f", worst_share) + ", " +
                  std::to_string(audit5.violations) + " ledger violations, " +
                  fmt("%.1f s", secs5);
  out.worst_identity = std::max(audit4.worst_identity, audit5.worst_identity);
  return out;
}

Outcome criterion6(const LazyEagerTally& t) {
  Outcome o;
  o.pass = t.mismatched == 0 && t.not_fewer == 0 && t.instances > 0;
  o.detail = std::to_string(t.instances) + " lazy/eager pairs, " +
             std::to_string(t.mismatched) + " differing allocations, " +
             std::to_string(t.not_fewer) + " of " + std::to_string(t.multi_round) +
             " multi-round runs without fewer bid computations";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
  const std::filesystem::path path =
      std::filesystem::path(RANGETAP_DATA_DIR) / "scenarios" / "crowded.json";
  const Scenario s = load_scenario(path);
  Scenario checked = s;
  checked.alloc_config.range_check_mode = RangeCheckMode::kWithReturn;
  const MissionReport r = run_mission(checked, AllocatorKind::kRangeTap);
  bool all_good = r.unassigned_tasks.empty() && s.return_to_start;
  double min_remaining = kInf;
  for (const RobotReport& rr : r.robots) {
    all_good = all_good && rr.completed_return && rr.remaining_range >= 0.0;
    min_remaining = std::min(min_remaining, rr.remaining_range);
  }
  const bool shape = s.robots.size() == 7 && s.tasks.size() == 18;

  Scenario tight = checked;
  for (RobotSpec& rb : tight.robots) rb.range_budget -= s.baseline_budget_margin;
  const MissionReport b = run_mission(tight, AllocatorKind::kStraightline);
  int over_budget = 0;
  for (const RobotReport& rr : b.robots) {
    if (rr.remaining_range < 0.0) ++over_budget;
  }
  const bool baseline_fails = over_budget > 0 || !b.unassigned_tasks.empty();

  Outcome o;
  o.pass = shape && all_good && baseline_fails && s.baseline_budget_margin > 0.0;
  o.detail = "rangetap: " + std::to_string(r.unassigned_tasks.size()) +
             " unassigned, min remaining " + fmt("%.3f m", min_remaining) +
             "; straightline (budgets -" + fmt("%.2f m", s.baseline_budget_margin) +
             "): " + std::to_string(over_budget) + " over budget, " +
             std::to_string(b.unassigned_tasks.size()) + " unassigned";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion8() {
  const auto t0 = Clock::now();
  Fig6Options opts;
  opts.seed = kSuiteSeed + 8;
  opts.repeats = kFleetRepeats;
  const auto rows = run_fig6(opts);
  const double secs = seconds_since(t0);

  std::vector<double> xs;
  std::vector<double> ys;
  bool distance_ok = true;
  int failures = 0;
  std::string steps;
  for (int n : opts.task_counts) {
    double rt_dist = 0.0, sl_dist = 0.0, rt_time = 0.0;
    int rt = 0, sl = 0;
    for (const Fig6Row& r : rows) {
      if (r.tasks != n) continue;
      if (!r.ok) {
        ++failures;
        continue;
      }
      if (r.method == AllocatorKind::kRangeTap) {
        rt_dist += r.total_distance;
        rt_time += r.alloc_time_s;
        ++rt;
      } else {
        sl_dist += r.total_distance;
        ++sl;
      }
    }
    if (rt == 0 || sl == 0) {
      distance_ok = false;
      continue;
    }
    rt_dist /= rt;
    sl_dist /= sl;
    rt_time /= rt;
    distance_ok = distance_ok && rt_dist <= sl_dist;
    xs.push_back(std::log(n));
    ys.push_back(std::log(rt_time));
    steps += " " + std::to_string(n) + ":" + fmt("%.0f", rt_dist) + "/" +
             fmt("%.0f", sl_dist) + "m," + fmt("%.2fs", rt_time);
  }
  // Least-squares slope of log time against log task count.
  double slope = kInf;
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      num += (xs[k] - mx) * (ys[k] - my);
      den += (xs[k] - mx) * (xs[k] - mx);
    }
    slope = num / den;
  }
  Outcome o;
  o.pass = distance_ok && failures == 0 && slope <= kMaxTimeExponent && secs < 900.0;
  o.detail = "steps (rangetap/straightline distance, alloc time):" + steps +
             "; time exponent " + fmt("%.2f", slope) + ", " +
             std::to_string(failures) + " failures, " + fmt("%.1f s", secs);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion9(double worst_identity) {
  const std::vector<double> one{10.0};
  const std::vector<double> two{5.0, 12.0};
  const double r1 = reward_of(one, 0.95);
  const double r2 = reward_of(two, 0.95);
  const bool examples = std::abs(r1 - 0.598737) < 5e-7 && std::abs(r2 - 1.314141) < 5e-7;
  Outcome o;
  o.pass = examples && worst_identity <= kIdentityTolerance;
  o.detail = "rewards " + fmt("%.6f", r1) + " and " + fmt("%.6f", r2) +
             ", worst incremental-vs-recomputed deviation " +
             fmt("%.3e", worst_identity);
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&failed](int id, const char* name, const Outcome& o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  std::vector<PlannerSample> suite;
  double suite_secs = 0.0;
  const Outcome c1 = guarded([&] {
    const auto t0 = Clock::now();
    suite = planner_suite();
    suite_secs = seconds_since(t0);
    return criterion1(suite, suite_secs);
  });
  report(1, "planner correctness", c1);
  report(2, "planner quality", guarded([&] { return criterion2(suite); }));
  report(3, "planner speed", guarded(criterion3));

  AllocationResults alloc;
  bool alloc_ok = true;
  try {
    alloc = allocation_criteria();
  } catch (const std::exception& e) {
    alloc_ok = false;
    alloc.c4 = alloc.c5 = {false, std::string("exception: ") + e.what()};
  }
  report(4, "range constraints", alloc.c4);
  report(5, "greedy half-optimality", alloc.c5);
  report(6, "lazy equals eager",
         alloc_ok ? criterion6(alloc.tally) : Outcome{false, "allocation runs failed"});
  report(7, "crowded scenario", guarded(criterion7));
  report(8, "allocation scaling", guarded(criterion8));
  report(9, "reward identities",
         alloc_ok ? criterion9(alloc.worst_identity)
                  : Outcome{false, "allocation runs failed"});
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
