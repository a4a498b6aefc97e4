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

#include "hetnet/drop.h"

#include <string>

namespace hetnet {

std::vector<PlacedUser> PlaceUsers(const Layout& layout,
                                   const std::vector<StationSite>& macros,
                                   const ChannelModel& model, int retries,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  const int num_sectors = layout.num_sectors();
  std::vector<PlacedUser> placed;
  placed.reserve(num_sectors);

  for (int s = 0; s < num_sectors; ++s) {
    bool accepted = false;
    for (int attempt = 0; attempt < retries && !accepted; ++attempt) {
      PlacedUser candidate;
      candidate.site = {SampleInSector(s, layout, rng), s};
      candidate.macro_shadow_db.resize(macros.size());
      for (double& shadow : candidate.macro_shadow_db) {
        shadow = model.shadow_sigma_macro_db * unit_normal(rng);
      }
      int best = -1;
      double best_db = 0.0;
      for (std::size_t k = 0; k < macros.size(); ++k) {
        const double rx_db = LinkGainDb(macros[k], candidate.site.position,
                                        candidate.macro_shadow_db[k], model,
                                        layout);
        if (best < 0 || rx_db > best_db) {
          best = static_cast<int>(k);
          best_db = rx_db;
        }
      }
      if (best == s) {
        placed.push_back(std::move(candidate));
        accepted = true;
      }
    }
    if (!accepted) {
      throw PlacementError("no user could be associated with sector " +
                           std::to_string(s) + " after " +
                           std::to_string(retries) + " candidates");
    }
  }
  return placed;
}

Drop GenerateDrop(const Layout& layout, const ChannelModel& model,
                  const DropOptions& options, std::mt19937_64& rng) {
  Drop drop;
  drop.macros = MacroSites(layout);
  drop.lowpower = PlaceLowPower(layout, options.lowpower_per_cell);
  const int n = layout.num_sectors();

  std::vector<PlacedUser> placed =
      PlaceUsers(layout, drop.macros, model, options.placement_retries, rng);

  std::vector<int> site_of_sector(n, -1);
  for (std::size_t j = 0; j < drop.lowpower.size(); ++j) {
    site_of_sector[drop.lowpower[j].sector_id] = static_cast<int>(j);
  }
  drop.lowpower_present.assign(n, false);
  for (int s = 0; s < n; ++s) drop.lowpower_present[s] = site_of_sector[s] >= 0;

  std::normal_distribution<double> unit_normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Point pos = placed[i].site.position;
    for (int k = 0; k < n; ++k) {
      g(i, k) = LinkGain(drop.macros[k], pos, placed[i].macro_shadow_db[k],
                         model, layout);
    }
    for (int j = 0; j < n; ++j) {
      if (site_of_sector[j] < 0) continue;
      const double shadow = model.shadow_sigma_lowpower_db * unit_normal(rng);
      h(i, j) = LinkGain(drop.lowpower[site_of_sector[j]], pos, shadow, model,
                         layout);
    }
    drop.users.push_back(placed[i].site);
  }

  drop.relay_gain = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (site_of_sector[j] < 0) continue;
    const Point relay = drop.lowpower[site_of_sector[j]].position;
    for (int k = 0; k < n; ++k) {
      const double shadow = model.shadow_sigma_macro_db * unit_normal(rng);
      drop.relay_gain(j, k) =
          DbToLinear(RelayLinkGainDb(drop.macros[k], relay, shadow, model, layout));
    }
  }

  const double noise_w = DbmToWatts(model.noise_power_dbm);
  Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(n, noise_w);
  drop.relay_sigma2 = sigma2;

  if ((g.array() <= 0.0).any()) {
    throw DegenerateGainError("nonpositive macro link gain; check channel model");
  }
  drop.gains = BuildGainSystem(std::move(g), std::move(h), std::move(sigma2));
  return drop;
}

std::mt19937_64 DropRng(std::uint64_t seed, std::uint64_t drop_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(drop_id),
                    static_cast<std::uint32_t>(drop_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace hetnet
