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

#include "hetnet/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace hetnet {
namespace {

// Which full-power vector drives discarding: 0 macro only, 1 micro, 2 relay.
int DiscardKey(const ExperimentConfig& config, ScenarioKind kind) {
  if (config.discard_basis == DiscardBasis::kSharedMacro) return 0;
  if (!UsesLowPower(kind)) return 0;
  return UsesRelays(kind) ? 2 : 1;
}

std::vector<int> DiscardOrderFor(const Drop& drop, const ExperimentConfig& config,
                                 int key) {
  const ScenarioParams params = config.Params();
  const int n = drop.num_users();
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n, params.p_max);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  if (key != 0) {
    const double cap = key == 2 ? params.q_max_relay : params.q_max_micro;
    for (int i = 0; i < n; ++i) q(i) = drop.lowpower_present[i] ? cap : 0.0;
  }
  return DiscardOrder(drop.gains, p, q);
}

std::vector<int> KeptUsers(const std::vector<int>& order, double load) {
  const int keep = KeepCount(load, static_cast<int>(order.size()));
  std::vector<int> kept(order.end() - keep, order.end());
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string FormatFixed(double v, int digits) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

template <typename T>
T ParseField(const std::string& text, int line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("rows csv line " + std::to_string(line) +
                             ": bad field '" + text + "'");
  }
  return value;
}

constexpr const char* kRowsHeader =
    "scenario,load,drop_id,common_rate,total_power_w,active_relays,iterations";

}  // namespace

std::vector<int> ActiveUsers(const Drop& drop, const ExperimentConfig& config,
                             ScenarioKind kind, double load) {
  return KeptUsers(DiscardOrderFor(drop, config, DiscardKey(config, kind)), load);
}

std::vector<ExperimentRow> RunDrop(const ExperimentConfig& config,
                                   const Layout& layout, int drop_id) {
  const ChannelModel model = config.Channel();
  const ScenarioParams params = config.Params();
  std::mt19937_64 rng = DropRng(config.seed, static_cast<std::uint64_t>(drop_id));
  const Drop drop = GenerateDrop(layout, model, config.Drop(), rng);

  std::vector<int> orders[3];
  std::vector<ExperimentRow> rows;
  rows.reserve(config.scenarios.size() * config.loads.size());
  for (ScenarioKind kind : config.scenarios) {
    const int key = DiscardKey(config, kind);
    if (orders[key].empty()) orders[key] = DiscardOrderFor(drop, config, key);
    for (double load : config.loads) {
      const auto start = std::chrono::steady_clock::now();
      const std::vector<int> active = KeptUsers(orders[key], load);
      const GainSystem restricted = RestrictGainSystem(drop.gains, active);
      const RateResult result = RunScenario(drop, active, restricted, kind, params);
      ExperimentRow row;
      row.scenario = kind;
      row.load = load;
      row.drop_id = drop_id;
      row.common_rate = result.common_rate;
      row.total_power_w = result.total_power();
      row.active_relays =
          UsesRelays(kind) ? static_cast<double>(result.active_relays.size()) : 0.0;
      row.iterations = result.iterations;
      row.wall_time_s = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      rows.push_back(row);
    }
  }
  return rows;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const Layout layout =
      BuildLayout(config.cell_radius_m, config.rings, config.sector0_azimuth_deg);

  const int drops = config.drops;
  std::vector<std::vector<ExperimentRow>> per_drop(drops);
  std::vector<std::string> errors(drops);
  std::vector<char> failed(drops, 0);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int d = next++; d < drops; d = next++) {
      try {
        per_drop[d] = RunDrop(config, layout, d);
      } catch (const std::exception& e) {
        failed[d] = 1;
        errors[d] = e.what();
      }
    }
  };

  int workers = config.workers;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, drops);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentResult result;
  for (int d = 0; d < drops; ++d) {
    if (failed[d]) {
      result.failures.push_back({d, errors[d]});
      continue;
    }
    result.rows.insert(result.rows.end(), per_drop[d].begin(), per_drop[d].end());
  }
  const double fraction = static_cast<double>(result.failures.size()) / drops;
  if (fraction > config.max_failure_fraction) {
    std::ostringstream os;
    os << result.failures.size() << " of " << drops << " drops failed";
    if (!result.failures.empty()) {
      os << " (first: drop " << result.failures.front().drop_id << ": "
         << result.failures.front().message << ")";
    }
    throw ExperimentError(os.str());
  }
  result.summary = Summarize(config, result.rows);
  return result;
}

std::vector<SummaryRow> Summarize(const ExperimentConfig& config,
                                  const std::vector<ExperimentRow>& rows) {
  std::vector<SummaryRow> summary;
  for (ScenarioKind kind : config.scenarios) {
    for (double load : config.loads) {
      SummaryRow s;
      s.scenario = kind;
      s.load = load;
      double sum = 0.0, power = 0.0, relays = 0.0;
      for (const auto& r : rows) {
        if (r.scenario != kind || r.load != load) continue;
        ++s.drops;
        sum += r.common_rate;
        power += r.total_power_w;
        relays += r.active_relays;
      }
      if (s.drops > 0) {
        s.mean_rate = sum / s.drops;
        s.mean_total_power_w = power / s.drops;
        s.mean_active_relays = relays / s.drops;
      }
      if (s.drops > 1) {
        double ss = 0.0;
        for (const auto& r : rows) {
          if (r.scenario != kind || r.load != load) continue;
          ss += (r.common_rate - s.mean_rate) * (r.common_rate - s.mean_rate);
        }
        s.stderr_rate = std::sqrt(ss / (s.drops - 1) / s.drops);
      }
      summary.push_back(s);
    }
  }
  return summary;
}

void WriteRowsCsv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kRowsHeader << '\n';
  for (const auto& r : rows) {
    out << ScenarioName(r.scenario) << ',' << FormatDouble(r.load) << ','
        << r.drop_id << ',' << FormatFixed(r.common_rate, 4) << ','
        << FormatDouble(r.total_power_w) << ',' << FormatDouble(r.active_relays)
        << ',' << r.iterations << '\n';
  }
}

std::vector<ExperimentRow> ReadRowsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRowsHeader) {
    throw std::runtime_error("rows csv: missing or unexpected header");
  }
  std::vector<ExperimentRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("rows csv line " + std::to_string(line_no) +
                               ": expected 7 fields");
    }
    ExperimentRow r;
    const auto kind = ParseScenario(fields[0]);
    if (!kind) {
      throw std::runtime_error("rows csv line " + std::to_string(line_no) +
                               ": unknown scenario " + fields[0]);
    }
    r.scenario = *kind;
    r.load = ParseField<double>(fields[1], line_no);
    r.drop_id = ParseField<int>(fields[2], line_no);
    r.common_rate = ParseField<double>(fields[3], line_no);
    r.total_power_w = ParseField<double>(fields[4], line_no);
    r.active_relays = ParseField<double>(fields[5], line_no);
    r.iterations = ParseField<int>(fields[6], line_no);
    rows.push_back(r);
  }
  return rows;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "scenario,load,drops,mean_rate,stderr_rate,mean_total_power_w,"
         "mean_active_relays\n";
  for (const auto& s : summary) {
    out << ScenarioName(s.scenario) << ',' << FormatDouble(s.load) << ','
        << s.drops << ',' << FormatFixed(s.mean_rate, 4) << ','
        << FormatFixed(s.stderr_rate, 4) << ','
        << FormatDouble(s.mean_total_power_w) << ','
        << FormatDouble(s.mean_active_relays) << '\n';
  }
}

void WriteExperiment(const std::filesystem::path& dir,
                     const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("rows.csv");
    WriteRowsCsv(out, result.rows);
  }
  {
    auto out = open("summary.csv");
    WriteSummaryCsv(out, result.summary);
  }
  {
    auto out = open("failures.csv");
    out << "drop_id,message\n";
    for (const auto& f : result.failures) {
      std::string msg = f.message;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << f.drop_id << ',' << msg << '\n';
    }
  }
}

}  // namespace hetnet
