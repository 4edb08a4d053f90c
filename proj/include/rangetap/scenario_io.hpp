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

// Scenario files (JSON, "scenario_version": 1) and report serialization.
// The schema is documented in README.md.

#ifndef RANGETAP_SCENARIO_IO_HPP_
#define RANGETAP_SCENARIO_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rangetap/auction.hpp"
#include "rangetap/sim.hpp"

namespace rangetap {

inline constexpr int kScenarioVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lists every violated invariant as "field.path: message".
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

Scenario scenario_from_json(const nlohmann::json& doc);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& s);

// Empty when the scenario is valid.
std::vector<std::string> validation_problems(const Scenario& s);

nlohmann::json allocation_to_json(const Allocation& a);
nlohmann::json report_to_json(const MissionReport& r, bool include_timing);

inline constexpr const char* kReportCsvHeader =
    "row,robot_id,range_budget_m,traveled_m,remaining_range_m,"
    "tasks_assigned,tasks_completed,completed_return,unassigned_tasks";
std::string report_to_csv(const MissionReport& r);

// Writes via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace rangetap

#endif  // RANGETAP_SCENARIO_IO_HPP_
