// Copyright 2026 The hetnet Authors
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

#ifndef HETNET_HARNESS_H_
#define HETNET_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetnet/config.h"
#include "hetnet/drop.h"
#include "hetnet/geometry.h"
#include "hetnet/ratemax.h"

namespace hetnet {

struct ExperimentRow {
  ScenarioKind scenario = ScenarioKind::kSingleLayer;
  double load = 0.0;
  int drop_id = 0;
  double common_rate = 0.0;    // bits/s/Hz
  double total_power_w = 0.0;  // macro + low-power
  double active_relays = 0.0;  // transmitting relays; 0 outside relay scenarios
  int iterations = 0;
  double wall_time_s = 0.0;    // not written to CSV

  bool operator==(const ExperimentRow&) const = default;
};

struct SummaryRow {
  ScenarioKind scenario = ScenarioKind::kSingleLayer;
  double load = 0.0;
  int drops = 0;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;
  double mean_total_power_w = 0.0;
  double mean_active_relays = 0.0;
};

struct DropFailure {
  int drop_id = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ordered by (drop_id, scenario, load)
  std::vector<SummaryRow> summary;  // ordered by (scenario, load)
  std::vector<DropFailure> failures;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Users kept at each of `loads` for one drop, under the configured discard
// basis and scenario.
std::vector<int> ActiveUsers(const Drop& drop, const ExperimentConfig& config,
                             ScenarioKind kind, double load);

// All (scenario, load) rows of one drop, in config order. Throws on solver or
// placement failure.
std::vector<ExperimentRow> RunDrop(const ExperimentConfig& config,
                                   const Layout& layout, int drop_id);

// Throws ExperimentError when more than max_failure_fraction of the drops
// fail.
ExperimentResult RunExperiment(const ExperimentConfig& config);

std::vector<SummaryRow> Summarize(const ExperimentConfig& config,
                                  const std::vector<ExperimentRow>& rows);

void WriteRowsCsv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> ReadRowsCsv(std::istream& in);
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& summary);

// rows.csv, summary.csv and failures.csv under `dir` (created if missing).
void WriteExperiment(const std::filesystem::path& dir,
                     const ExperimentResult& result);

}  // namespace hetnet

#endif  // HETNET_HARNESS_H_
