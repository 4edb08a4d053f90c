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

// Range-constrained task allocation.
//
// Each robot's reward for its ordered task list is
//
//   reward = sum_j lambda^{arrival_j}
//
// where arrival_j is the distance travelled from the robot's start up to
// task j. Appending a task costs one planned leg, so its marginal reward is
// lambda^{committed + leg} with committed the distance already travelled.
//
// Allocation runs sequential auction rounds. In each round robots whose bid
// cache is stale recompute bids against every unassigned task, the best
// eligible bid over the whole fleet wins, and only the winner's cache goes
// stale. Range-infeasible pairs receive the sentinel bid and cannot win.

#ifndef RANGETAP_AUCTION_HPP_
#define RANGETAP_AUCTION_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rangetap/geometry.hpp"
#include "rangetap/gos_planner.hpp"

namespace rangetap {

struct RobotSpec {
  int id = 0;
  Point start;
  double radius = 0.1;
  int capacity = 1;
  double range_budget = 1.0;
};

struct TaskSpec {
  int id = 0;
  Point position;
};

enum class RangeCheckMode {
  kPaperLiteral,  // committed + 2 * leg must fit the budget
  kNoReturn,      // committed + leg
  kWithReturn,    // committed + leg + return leg to start
};

const char* to_string(RangeCheckMode mode);
std::optional<RangeCheckMode> parse_range_check_mode(std::string_view text);

struct AllocConfig {
  double lambda = 0.95;
  RangeCheckMode range_check_mode = RangeCheckMode::kPaperLiteral;
  double sentinel = 0.001;
  bool lazy = true;
};

class AllocationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InfeasibleEnvironment : public AllocationError {
 public:
  using AllocationError::AllocationError;
};
class UnknownRobot : public AllocationError {
 public:
  using AllocationError::AllocationError;
};
class InvalidSpec : public AllocationError {
 public:
  using AllocationError::AllocationError;
};

void validate(const RobotSpec& robot);
void validate(const AllocConfig& cfg);

// Reward for the given cumulative arrival distances.
double reward_of(std::span<const double> arrival_distances, double lambda);

// Whether appending a leg keeps the robot inside its budget. return_length
// is only consulted in kWithReturn mode.
bool range_feasible(RangeCheckMode mode, double committed, double leg_length,
                    double return_length, double budget);

struct RobotLedger {
  std::vector<int> tasks;
  std::vector<double> arrival;  // cumulative distance at each task
  PlannedPath committed_path;
  double distance = 0.0;
  double reward = 0.0;
  bool dirty = true;

  // Where the next leg starts: the last task, or the robot start.
  Point tail(const RobotSpec& robot) const;
};

// Plans one leg for one robot. Implementations are pure with respect to
// (from, to, robot.radius); only the call counter changes.
class LegPlanner {
 public:
  virtual ~LegPlanner() = default;
  virtual PlanResult plan(const Point& from, const Point& to,
                          const RobotSpec& robot) const = 0;
  std::uint64_t calls() const { return calls_; }

 protected:
  mutable std::uint64_t calls_ = 0;
};

// Global-GOS against raw obstacles inflated once per distinct robot radius.
class GosLegPlanner : public LegPlanner {
 public:
  GosLegPlanner(std::vector<Polygon> raw, std::span<const RobotSpec> robots);
  // Single prebuilt obstacle set used for every robot.
  explicit GosLegPlanner(ObstacleSet obstacles);

  PlanResult plan(const Point& from, const Point& to,
                  const RobotSpec& robot) const override;
  const ObstacleSet& obstacles_for(double radius) const;

 private:
  std::map<double, ObstacleSet> by_radius_;
  std::optional<ObstacleSet> shared_;
};

// Euclidean straight legs; ignores obstacles.
class StraightLegPlanner : public LegPlanner {
 public:
  PlanResult plan(const Point& from, const Point& to,
                  const RobotSpec& robot) const override;
};

struct Bid {
  double value = 0.0;           // marginal reward
  double log_value = 0.0;       // ln value; the quantity ranked
  bool eligible = false;
  double distance_after = 0.0;  // committed distance after the leg
  PlannedPath leg;
  std::string diagnostic;
};

// Marginal reward of appending task to this ledger. return_leg must be
// supplied in kWithReturn mode (nullopt when it could not be planned).
Bid compute_bid(const RobotSpec& robot, const RobotLedger& ledger,
                const TaskSpec& task, const LegPlanner& planner,
                const AllocConfig& cfg,
                const std::optional<double>& return_length = std::nullopt);

// Convenience overload planning against one obstacle set; plans the return
// leg itself when the mode needs it.
Bid compute_bid(const RobotSpec& robot, const RobotLedger& ledger,
                const TaskSpec& task, const ObstacleSet& obstacles,
                const AllocConfig& cfg);

struct AllocationStats {
  std::uint64_t compute_bid_calls = 0;
  std::uint64_t planner_calls = 0;
};

struct Allocation {
  std::map<int, RobotLedger> ledgers;  // by robot id
  std::vector<int> unassigned;         // ascending task id
  int rounds = 0;
  AllocationStats stats;
  std::vector<std::string> diagnostics;
};

// Stateful sequential auction. allocate() drives it to completion; tests
// drive it round by round.
class Auctioneer {
 public:
  Auctioneer(std::vector<RobotSpec> robots, std::vector<TaskSpec> tasks,
             const LegPlanner& planner, AllocConfig cfg);

  // Runs one bidding + winner-selection round. Returns false once no
  // unassigned task has an eligible bid.
  bool run_round();
  void run();

  void mark_dirty(int robot_id);
  bool is_dirty(int robot_id) const;
  // Robot id that won the most recent round, if it produced a winner.
  std::optional<int> last_winner() const { return last_winner_; }

  Allocation result() const;

 private:
  std::size_t robot_index(int robot_id) const;
  void refresh_bids(std::size_t i);

  std::vector<RobotSpec> robots_;
  std::vector<TaskSpec> tasks_;
  const LegPlanner& planner_;
  AllocConfig cfg_;
  std::vector<RobotLedger> ledgers_;
  std::vector<bool> assigned_;
  struct ReturnLeg {
    bool planned = false;
    std::optional<double> length;  // nullopt if planning failed
  };
  const std::optional<double>& return_length(std::size_t i, std::size_t j);

  std::vector<std::vector<std::optional<Bid>>> bids_;  // [robot][task]
  std::vector<std::vector<ReturnLeg>> returns_;
  int rounds_ = 0;
  bool finished_ = false;
  std::optional<int> last_winner_;
  std::uint64_t bid_calls_ = 0;
  std::uint64_t planner_calls_at_start_ = 0;
  std::vector<std::string> diagnostics_;
};

// Throws InfeasibleEnvironment if a task is strictly inside a merged
// inflated obstacle for any robot radius.
void check_tasks_free(std::span<const TaskSpec> tasks,
                      const GosLegPlanner& planner,
                      std::span<const RobotSpec> robots);

Allocation allocate(const std::vector<RobotSpec>& robots,
                    const std::vector<TaskSpec>& tasks,
                    const std::vector<Polygon>& raw_obstacles,
                    const AllocConfig& cfg);

// Total reward over all ledgers.
double total_reward(const Allocation& allocation);
double total_distance(const Allocation& allocation);

}  // namespace rangetap

#endif  // RANGETAP_AUCTION_HPP_
