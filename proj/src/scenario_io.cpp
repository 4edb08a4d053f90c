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

#include "rangetap/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rangetap {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += "\n  " + p;
  return out;
}

// Collects problems instead of throwing on the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  const json* field(const json& obj, const std::string& key,
                    const std::string& path, bool required = true) {
    if (!obj.is_object()) {
      problems_.push_back(path + ": expected an object");
      return nullptr;
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) problems_.push_back(path + "." + key + ": missing");
      return nullptr;
    }
    return &*it;
  }

  double number(const json& obj, const std::string& key,
                const std::string& path, double fallback, bool required = true) {
    const json* v = field(obj, key, path, required);
    if (v == nullptr) return fallback;
    if (!v->is_number()) {
      problems_.push_back(path + "." + key + ": expected a number");
      return fallback;
    }
    return v->get<double>();
  }

  long long integer(const json& obj, const std::string& key,
                    const std::string& path, long long fallback,
                    bool required = true) {
    const json* v = field(obj, key, path, required);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer()) {
      problems_.push_back(path + "." + key + ": expected an integer");
      return fallback;
    }
    return v->get<long long>();
  }

  Point point(const json& obj, const std::string& key, const std::string& path) {
    const json* v = field(obj, key, path);
    if (v == nullptr) return {};
    return point_value(*v, path + "." + key);
  }

  Point point_value(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      problems_.push_back(path + ": expected [x, y]");
      return {};
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

 private:
  std::vector<std::string>& problems_;
};

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error("invalid scenario:" + join(problems)),
      problems_(std::move(problems)) {}

Scenario scenario_from_json(const json& doc) {
  std::vector<std::string> problems;
  Reader rd(problems);
  Scenario s;
  const std::string root = "scenario";

  const long long version = rd.integer(doc, "scenario_version", root, -1);
  if (version != -1 && version != kScenarioVersion) {
    problems.push_back("scenario_version: unsupported version " +
                       std::to_string(version));
  }
  if (const json* v = rd.field(doc, "name", root, false)) {
    if (v->is_string()) {
      s.name = v->get<std::string>();
    } else {
      problems.push_back("name: expected a string");
    }
  }
  s.seed = static_cast<std::uint64_t>(rd.integer(doc, "seed", root, 0, false));
  s.return_to_start = false;
  if (const json* v = rd.field(doc, "return_to_start", root, false)) {
    if (v->is_boolean()) {
      s.return_to_start = v->get<bool>();
    } else {
      problems.push_back("return_to_start: expected a boolean");
    }
  }
  s.baseline_budget_margin =
      rd.number(doc, "baseline_budget_margin_m", root, 0.0, false);

  if (const json* b = rd.field(doc, "bounds_m", root)) {
    s.bounds.min_x = rd.number(*b, "min_x", "bounds_m", 0.0);
    s.bounds.min_y = rd.number(*b, "min_y", "bounds_m", 0.0);
    s.bounds.max_x = rd.number(*b, "max_x", "bounds_m", 0.0);
    s.bounds.max_y = rd.number(*b, "max_y", "bounds_m", 0.0);
  }

  if (const json* obs = rd.field(doc, "obstacles", root, false)) {
    if (!obs->is_array()) {
      problems.push_back("obstacles: expected an array");
    } else {
      for (std::size_t k = 0; k < obs->size(); ++k) {
        const std::string path = "obstacles[" + std::to_string(k) + "]";
        Polygon poly;
        poly.id = static_cast<int>(rd.integer((*obs)[k], "id", path, 0));
        if (const json* vs = rd.field((*obs)[k], "vertices_m", path)) {
          if (!vs->is_array()) {
            problems.push_back(path + ".vertices_m: expected an array");
          } else {
            for (std::size_t q = 0; q < vs->size(); ++q) {
              poly.vertices.push_back(rd.point_value(
                  (*vs)[q], path + ".vertices_m[" + std::to_string(q) + "]"));
            }
          }
        }
        s.obstacles_raw.push_back(normalized(std::move(poly)));
      }
    }
  }

  if (const json* rs = rd.field(doc, "robots", root)) {
    if (!rs->is_array()) {
      problems.push_back("robots: expected an array");
    } else {
      for (std::size_t k = 0; k < rs->size(); ++k) {
        const std::string path = "robots[" + std::to_string(k) + "]";
        const json& r = (*rs)[k];
        RobotSpec spec;
        spec.id = static_cast<int>(rd.integer(r, "id", path, 0));
        spec.start = rd.point(r, "start_m", path);
        spec.radius = rd.number(r, "radius_m", path, 0.0);
        spec.capacity = static_cast<int>(rd.integer(r, "capacity", path, 0));
        spec.range_budget = rd.number(r, "range_budget_m", path, 0.0);
        s.robots.push_back(spec);
      }
    }
  }

  if (const json* ts = rd.field(doc, "tasks", root)) {
    if (!ts->is_array()) {
      problems.push_back("tasks: expected an array");
    } else {
      for (std::size_t k = 0; k < ts->size(); ++k) {
        const std::string path = "tasks[" + std::to_string(k) + "]";
        TaskSpec t;
        t.id = static_cast<int>(rd.integer((*ts)[k], "id", path, 0));
        t.position = rd.point((*ts)[k], "position_m", path);
        s.tasks.push_back(t);
      }
    }
  }

  if (const json* c = rd.field(doc, "alloc_config", root, false)) {
    AllocConfig& cfg = s.alloc_config;
    cfg.lambda = rd.number(*c, "lambda", "alloc_config", cfg.lambda, false);
    cfg.sentinel = rd.number(*c, "sentinel", "alloc_config", cfg.sentinel, false);
    if (const json* m = rd.field(*c, "range_check_mode", "alloc_config", false)) {
      const auto mode = m->is_string()
                            ? parse_range_check_mode(m->get<std::string>())
                            : std::nullopt;
      if (mode) {
        cfg.range_check_mode = *mode;
      } else {
        problems.push_back(
            "alloc_config.range_check_mode: expected one of paper-literal, "
            "no-return, with-return");
      }
    }
    if (const json* l = rd.field(*c, "lazy", "alloc_config", false)) {
      if (l->is_boolean()) {
        cfg.lazy = l->get<bool>();
      } else {
        problems.push_back("alloc_config.lazy: expected a boolean");
      }
    }
  }

  if (problems.empty()) problems = validation_problems(s);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return s;
}

std::vector<std::string> validation_problems(const Scenario& s) {
  std::vector<std::string> problems;
  const Rect& b = s.bounds;
  if (!(b.max_x > b.min_x && b.max_y > b.min_y)) {
    problems.push_back("bounds_m: max must exceed min on both axes");
  }
  std::set<int> ids;
  for (std::size_t k = 0; k < s.obstacles_raw.size(); ++k) {
    const std::string path = "obstacles[" + std::to_string(k) + "]";
    try {
      validate_polygon(s.obstacles_raw[k]);
    } catch (const InvalidPolygon& e) {
      problems.push_back(path + ".vertices_m: " + e.what());
    }
    if (!ids.insert(s.obstacles_raw[k].id).second) {
      problems.push_back(path + ".id: duplicate obstacle id");
    }
  }
  ids.clear();
  for (std::size_t k = 0; k < s.robots.size(); ++k) {
    const RobotSpec& r = s.robots[k];
    const std::string path = "robots[" + std::to_string(k) + "]";
    if (!is_finite(r.start) || !b.contains(r.start)) {
      problems.push_back(path + ".start_m: outside workspace bounds");
    }
    if (!(r.radius > 0.0)) problems.push_back(path + ".radius_m: must be > 0");
    if (r.capacity < 0) problems.push_back(path + ".capacity: must be >= 0");
    if (!(r.range_budget > 0.0)) {
      problems.push_back(path + ".range_budget_m: must be > 0");
    }
    if (!ids.insert(r.id).second) {
      problems.push_back(path + ".id: duplicate robot id");
    }
  }
  ids.clear();
  for (std::size_t k = 0; k < s.tasks.size(); ++k) {
    const TaskSpec& t = s.tasks[k];
    const std::string path = "tasks[" + std::to_string(k) + "]";
    if (!is_finite(t.position) || !b.contains(t.position)) {
      problems.push_back(path + ".position_m: outside workspace bounds");
    }
    if (!ids.insert(t.id).second) {
      problems.push_back(path + ".id: duplicate task id");
    }
  }
  const AllocConfig& cfg = s.alloc_config;
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) {
    problems.push_back("alloc_config.lambda: must lie in (0, 1)");
  }
  if (!(cfg.sentinel > 0.0 && cfg.sentinel < 1.0)) {
    problems.push_back("alloc_config.sentinel: must lie in (0, 1)");
  }
  if (s.baseline_budget_margin < 0.0) {
    problems.push_back("baseline_budget_margin_m: must be >= 0");
  }
  return problems;
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

json point_json(const Point& p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(point_json(p));
  return out;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["scenario_version"] = kScenarioVersion;
  doc["name"] = s.name;
  doc["seed"] = s.seed;
  doc["bounds_m"] = {{"min_x", s.bounds.min_x},
                     {"min_y", s.bounds.min_y},
                     {"max_x", s.bounds.max_x},
                     {"max_y", s.bounds.max_y}};
  doc["obstacles"] = json::array();
  for (const Polygon& p : s.obstacles_raw) {
    doc["obstacles"].push_back({{"id", p.id}, {"vertices_m", points_json(p.vertices)}});
  }
  doc["robots"] = json::array();
  for (const RobotSpec& r : s.robots) {
    doc["robots"].push_back({{"id", r.id},
                             {"start_m", point_json(r.start)},
                             {"radius_m", r.radius},
                             {"capacity", r.capacity},
                             {"range_budget_m", r.range_budget}});
  }
  doc["tasks"] = json::array();
  for (const TaskSpec& t : s.tasks) {
    doc["tasks"].push_back({{"id", t.id}, {"position_m", point_json(t.position)}});
  }
  doc["alloc_config"] = {
      {"lambda", s.alloc_config.lambda},
      {"range_check_mode", to_string(s.alloc_config.range_check_mode)},
      {"sentinel", s.alloc_config.sentinel},
      {"lazy", s.alloc_config.lazy}};
  doc["return_to_start"] = s.return_to_start;
  if (s.baseline_budget_margin > 0.0) {
    doc["baseline_budget_margin_m"] = s.baseline_budget_margin;
  }
  return doc;
}

json allocation_to_json(const Allocation& a) {
  json doc;
  doc["rounds"] = a.rounds;
  doc["unassigned"] = a.unassigned;
  doc["ledgers"] = json::array();
  for (const auto& [id, ledger] : a.ledgers) {
    doc["ledgers"].push_back({{"robot_id", id},
                              {"tasks", ledger.tasks},
                              {"arrival_m", ledger.arrival},
                              {"distance_m", ledger.distance},
                              {"reward", ledger.reward},
                              {"path_m", points_json(ledger.committed_path.waypoints)}});
  }
  return doc;
}

json report_to_json(const MissionReport& r, bool include_timing) {
  json doc;
  doc["scenario"] = r.scenario;
  doc["allocator"] = r.allocator;
  doc["robots"] = json::array();
  for (const RobotReport& rr : r.robots) {
    doc["robots"].push_back({{"robot_id", rr.robot_id},
                             {"range_budget_m", rr.range_budget},
                             {"traveled_m", rr.traveled},
                             {"remaining_range_m", rr.remaining_range},
                             {"tasks_assigned", rr.tasks_assigned},
                             {"tasks_completed", rr.tasks_completed},
                             {"completed_return", rr.completed_return},
                             {"route_m", points_json(rr.route)}});
  }
  doc["fleet"] = {{"total_distance_m", r.total_distance},
                  {"makespan_distance_m", r.makespan_distance},
                  {"total_reward", r.total_reward},
                  {"unassigned_tasks", r.unassigned_tasks},
                  {"rounds", r.rounds},
                  {"planner_calls", r.planner_calls},
                  {"compute_bid_calls", r.compute_bid_calls}};
  if (include_timing) doc["fleet"]["allocation_time_s"] = r.allocation_time_s;
  doc["diagnostics"] = r.diagnostics;
  return doc;
}

namespace {

std::string ids(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(v[k]);
  }
  return out;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string report_to_csv(const MissionReport& r) {
  std::ostringstream os;
  os << kReportCsvHeader << "\n";
  double budget_sum = 0.0;
  for (const RobotReport& rr : r.robots) {
    budget_sum += rr.range_budget;
    os << "robot," << rr.robot_id << "," << num(rr.range_budget) << ","
       << num(rr.traveled) << "," << num(rr.remaining_range) << ","
       << ids(rr.tasks_assigned) << "," << ids(rr.tasks_completed) << ","
       << (rr.completed_return ? "true" : "false") << ",\n";
  }
  const bool all_returned =
      std::all_of(r.robots.begin(), r.robots.end(),
                  [](const RobotReport& rr) { return rr.completed_return; });
  os << "fleet,," << num(budget_sum) << "," << num(r.total_distance) << ","
     << num(budget_sum - r.total_distance) << ",,," << (all_returned ? "true" : "false")
     << "," << ids(r.unassigned_tasks) << "\n";
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rangetap
