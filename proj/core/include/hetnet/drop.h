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

#ifndef HETNET_DROP_H_
#define HETNET_DROP_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/channel.h"
#include "hetnet/geometry.h"

namespace hetnet {

class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DropOptions {
  int lowpower_per_cell = 3;
  int placement_retries = 1000;  // per sector
};

struct PlacedUser {
  UserSite site;
  std::vector<double> macro_shadow_db;  // one draw per macro sector
};

// Places one user per sector, uniformly over the sector area. A candidate is
// kept only when its strongest macro sector (pattern, path loss and
// shadowing, equal transmit powers) is the sector it was drawn in; otherwise
// it is discarded and redrawn. Throws PlacementError after `retries` failed
// candidates for one sector.
std::vector<PlacedUser> PlaceUsers(const Layout& layout,
                                   const std::vector<StationSite>& macros,
                                   const ChannelModel& model, int retries,
                                   std::mt19937_64& rng);

// One Monte Carlo realization: sites, users and every link gain.
struct Drop {
  std::vector<StationSite> macros;
  std::vector<StationSite> lowpower;
  std::vector<UserSite> users;           // users[s] is served by sector s
  std::vector<bool> lowpower_present;    // per sector
  GainSystem gains;                      // all users, h(:, j) = 0 if absent
  Eigen::MatrixXd relay_gain;            // relay of sector j <- macro k
  Eigen::VectorXd relay_sigma2;

  int num_users() const { return static_cast<int>(users.size()); }
};

Drop GenerateDrop(const Layout& layout, const ChannelModel& model,
                  const DropOptions& options, std::mt19937_64& rng);

// Independent generator for drop `drop_id` of an experiment seeded with
// `seed`.
std::mt19937_64 DropRng(std::uint64_t seed, std::uint64_t drop_id);

}  // namespace hetnet

#endif  // HETNET_DROP_H_
