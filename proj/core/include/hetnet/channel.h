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

#ifndef HETNET_CHANNEL_H_
#define HETNET_CHANNEL_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "hetnet/geometry.h"

namespace hetnet {

enum class PathLossModel {
  kCost231Hata,          // 34.5 + 35 log10(d)
  kWalfischIkegamiNlos,  // 34.53 + 38 log10(d)
  kShared,               // 31.5 + 38 log10(d), both layers
};

std::string_view PathLossModelName(PathLossModel model);

struct ChannelModel {
  PathLossModel macro_pathloss = PathLossModel::kCost231Hata;
  PathLossModel lowpower_pathloss = PathLossModel::kWalfischIkegamiNlos;
  double shadow_sigma_macro_db = 8.0;
  double shadow_sigma_lowpower_db = 10.0;
  double tx_antenna_gain_macro_db = 15.0;
  double tx_antenna_gain_lowpower_db = 0.0;
  double rx_antenna_gain_db = -1.0;
  double relay_rx_antenna_gain_db = 0.0;
  double other_losses_db = -10.0;
  // -174 dBm/Hz over 10 MHz plus a 9 dB noise figure.
  double noise_power_dbm = -95.0;
  double theta_3db_deg = 65.0;
  double a_max_db = 20.0;
  double min_distance_macro_m = 35.0;
  double min_distance_lowpower_m = 20.0;

  // COST 231 Hata macro layer with COST 231 Walfisch-Ikegami NLOS low-power
  // layer.
  static ChannelModel Cost231Pair();
  // One shared path-loss law and 8 dB shadowing for both layers.
  static ChannelModel SharedRaman();

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
  std::string Id() const;
};

double DbToLinear(double db);
double LinearToDb(double linear);
double DbmToWatts(double dbm);
double WattsToDbm(double watts);

// Horizontal three-sector pattern -min(12 (theta / theta_3db)^2, a_max) in
// dBi. `theta_deg` is normalized into [-180, 180] first.
double AntennaGainDb(double theta_deg, double theta_3db_deg = 65.0,
                     double a_max_db = 20.0);

double PathLossHataDb(double distance_m);
double PathLossWalfischIkegamiDb(double distance_m);
double PathLossSharedDb(double distance_m);
double PathLossDb(PathLossModel model, double distance_m);

// Total link gain in dB from `tx` to a user at `rx` (transmit gain and
// pattern, receive gain, other losses, path loss at the wrap-around distance,
// minus `shadow_db`).
double LinkGainDb(const StationSite& tx, Point rx, double shadow_db,
                  const ChannelModel& model, const Layout& layout);
double LinkGain(const StationSite& tx, Point rx, double shadow_db,
                const ChannelModel& model, const Layout& layout);

// Same as LinkGainDb, for a macro sector transmitting to a relay site. Uses
// the relay receive gain instead of the handset receive gain.
double RelayLinkGainDb(const StationSite& macro, Point relay, double shadow_db,
                       const ChannelModel& model, const Layout& layout);

class DegenerateGainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Link gains for a set of users paired one-to-one with a macro sector and a
// low-power station (user i is served by macro i and low-power i).
//
//   F(i, j) = g(i, j) / g(i, i)  for j != i, 0 on the diagonal
//   C(i)    = h(i, i) / g(i, i)                 (diagonal of C, kept as vector)
//   G(i, j) = h(i, j) / g(i, i)  for j != i, 0 on the diagonal
//   u(i)    = sigma2(i) / g(i, i)
struct GainSystem {
  Eigen::MatrixXd g;  // user i <- macro j, linear
  Eigen::MatrixXd h;  // user i <- low-power j, linear (zero column if absent)
  Eigen::VectorXd sigma2;

  Eigen::MatrixXd f;
  Eigen::VectorXd c;
  Eigen::MatrixXd g_norm;
  Eigen::VectorXd u;

  int n() const { return static_cast<int>(g.rows()); }
  Eigen::MatrixXd CMatrix() const { return c.asDiagonal(); }
};

// Throws DegenerateGainError when g has a nonpositive serving gain or any
// negative / non-finite entry.
GainSystem BuildGainSystem(Eigen::MatrixXd g, Eigen::MatrixXd h,
                           Eigen::VectorXd sigma2);

// Keeps the rows and columns listed in `active`.
GainSystem RestrictGainSystem(const GainSystem& full,
                              const std::vector<int>& active);

// SINR of every user for macro powers p and low-power powers q.
Eigen::VectorXd ComputeSinr(const GainSystem& gains, const Eigen::VectorXd& p,
                            const Eigen::VectorXd& q);

// CSV fixtures: one file per matrix, a "# n=<n>,model=<id>,matrix=<name>"
// header line, then one comma-separated row per matrix row. Vectors are
// written as a single column.
void WriteMatrixCsv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                    std::string_view model_id, std::string_view name);
Eigen::MatrixXd ReadMatrixCsv(const std::filesystem::path& path);

// Writes g, h, sigma2, F, C, G and u into `dir`.
void WriteGainSystemCsv(const std::filesystem::path& dir,
                        const GainSystem& gains, std::string_view model_id);
// Rebuilds a GainSystem from the g, h and sigma2 files in `dir`.
GainSystem ReadGainSystemCsv(const std::filesystem::path& dir);

}  // namespace hetnet

#endif  // HETNET_CHANNEL_H_
