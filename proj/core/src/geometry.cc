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

#include "hetnet/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace hetnet {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Axial hex coordinates: q along +x, r along the 60 degree lattice vector.
Point AxialToPoint(int q, int r, double spacing) {
  return {spacing * (q + 0.5 * r), spacing * (std::numbers::sqrt3 / 2.0) * r};
}

int HexRing(int q, int r) {
  return std::max({std::abs(q), std::abs(r), std::abs(q + r)});
}

}  // namespace

double Norm(Point p) { return std::hypot(p.x, p.y); }

double AzimuthDeg(Point p) { return std::atan2(p.y, p.x) * kDegPerRad; }

double WrapAngleDeg(double deg) {
  double wrapped = std::fmod(deg + 180.0, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  return wrapped - 180.0;
}

Layout BuildLayout(double cell_radius, int rings, double sector0_azimuth_deg) {
  if (!(cell_radius > 0.0)) {
    throw std::invalid_argument("cell_radius must be positive");
  }
  if (rings < 0) throw std::invalid_argument("rings must be >= 0");

  Layout layout;
  layout.cell_radius = cell_radius;
  layout.rings = rings;
  const double spacing = std::numbers::sqrt3 * cell_radius;

  struct Entry {
    int ring;
    double angle;
    Point center;
  };
  std::vector<Entry> entries;
  for (int q = -rings; q <= rings; ++q) {
    for (int r = -rings; r <= rings; ++r) {
      const int ring = HexRing(q, r);
      if (ring > rings) continue;
      const Point c = AxialToPoint(q, r, spacing);
      double angle = ring == 0 ? 0.0 : AzimuthDeg(c);
      if (angle < 0.0) angle += 360.0;
      entries.push_back({ring, angle, c});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.ring != b.ring) return a.ring < b.ring;
    return a.angle < b.angle;
  });
  for (const Entry& e : entries) layout.cells.push_back(e.center);

  for (int c = 0; c < layout.num_cells(); ++c) {
    for (int k = 0; k < kSectorsPerCell; ++k) {
      layout.sectors.push_back(
          {c, WrapAngleDeg(sector0_azimuth_deg + 120.0 * k)});
    }
  }

  // The cluster of radius N tiles the plane under the axial shift
  // (2N + 1, -N) and its five 60 degree rotations.
  layout.wrap_translations.push_back({0.0, 0.0});
  int q = 2 * rings + 1;
  int r = -rings;
  for (int k = 0; k < 6; ++k) {
    layout.wrap_translations.push_back(AxialToPoint(q, r, spacing));
    const int rotated_q = -r;
    r = q + r;
    q = rotated_q;
  }
  return layout;
}

Point WrapDisplacement(Point from, Point to, const Layout& layout) {
  Point best = to - from;
  double best_d2 = best.x * best.x + best.y * best.y;
  for (const Point& t : layout.wrap_translations) {
    const Point d = (to + t) - from;
    const double d2 = d.x * d.x + d.y * d.y;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = d;
    }
  }
  return best;
}

double WrapDistance(Point a, Point b, const Layout& layout) {
  return Norm(WrapDisplacement(a, b, layout));
}

bool InCell(Point p, int cell_id, const Layout& layout) {
  const Point d = p - layout.cells.at(cell_id);
  const double apothem = layout.cell_radius * std::numbers::sqrt3 / 2.0;
  const double limit = apothem * (1.0 + 1e-12);
  // Edge normals of a pointy-top hexagon sit at 0, 60 and 120 degrees.
  for (double deg : {0.0, 60.0, 120.0}) {
    const double rad = deg / kDegPerRad;
    if (std::abs(d.x * std::cos(rad) + d.y * std::sin(rad)) > limit) {
      return false;
    }
  }
  return true;
}

bool InSector(Point p, int sector_id, const Layout& layout) {
  const Sector& s = layout.sectors.at(sector_id);
  if (!InCell(p, s.cell_id, layout)) return false;
  const Point d = p - layout.cells[s.cell_id];
  if (d.x == 0.0 && d.y == 0.0) return true;
  return std::abs(WrapAngleDeg(AzimuthDeg(d) - s.boresight_deg)) <= 60.0;
}

Point SampleInSector(int sector_id, const Layout& layout,
                     std::mt19937_64& rng) {
  const Sector& s = layout.sectors.at(sector_id);
  const Point center = layout.cells[s.cell_id];
  const double half_width = layout.cell_radius * std::numbers::sqrt3 / 2.0;
  std::uniform_real_distribution<double> ux(-half_width, half_width);
  std::uniform_real_distribution<double> uy(-layout.cell_radius,
                                            layout.cell_radius);
  // Acceptance probability is 1/4, so this terminates quickly.
  for (;;) {
    const Point p = center + Point{ux(rng), uy(rng)};
    if (InSector(p, sector_id, layout)) return p;
  }
}

std::vector<StationSite> MacroSites(const Layout& layout) {
  std::vector<StationSite> sites;
  sites.reserve(layout.sectors.size());
  for (int s = 0; s < layout.num_sectors(); ++s) {
    const Sector& sector = layout.sectors[s];
    sites.push_back({StationKind::kMacroSector, layout.cells[sector.cell_id],
                     sector.boresight_deg, s});
  }
  return sites;
}

std::vector<StationSite> PlaceLowPower(const Layout& layout, int per_cell) {
  if (per_cell != 1 && per_cell != kSectorsPerCell) {
    throw std::invalid_argument("low-power sites per cell must be 1 or 3");
  }
  std::vector<StationSite> sites;
  for (int s = 0; s < layout.num_sectors(); ++s) {
    if (per_cell == 1 && s % kSectorsPerCell != 0) continue;
    const Sector& sector = layout.sectors[s];
    const double rad = sector.boresight_deg / kDegPerRad;
    const double offset = layout.cell_radius / 2.0;
    const Point pos = layout.cells[sector.cell_id] +
                      Point{offset * std::cos(rad), offset * std::sin(rad)};
    sites.push_back({StationKind::kLowPower, pos, std::nullopt, s});
  }
  return sites;
}

std::string LayoutToJson(const Layout& layout,
                         const std::vector<StationSite>& macros,
                         const std::vector<StationSite>& lowpower,
                         const std::vector<UserSite>& users) {
  using nlohmann::json;
  json doc;
  doc["cell_radius"] = layout.cell_radius;
  doc["rings"] = layout.rings;
  json cells = json::array();
  for (int c = 0; c < layout.num_cells(); ++c) {
    cells.push_back({{"id", c}, {"x", layout.cells[c].x}, {"y", layout.cells[c].y}});
  }
  doc["cells"] = std::move(cells);
  json sectors = json::array();
  for (int s = 0; s < layout.num_sectors(); ++s) {
    sectors.push_back({{"id", s},
                       {"cell_id", layout.sectors[s].cell_id},
                       {"boresight_deg", layout.sectors[s].boresight_deg}});
  }
  doc["sectors"] = std::move(sectors);
  json translations = json::array();
  for (const Point& t : layout.wrap_translations) {
    translations.push_back({t.x, t.y});
  }
  doc["wrap_translations"] = std::move(translations);

  json sites = json::array();
  auto add_sites = [&sites](const std::vector<StationSite>& list) {
    for (const StationSite& site : list) {
      json j = {{"kind", site.kind == StationKind::kMacroSector ? "macro_sector"
                                                                 : "low_power"},
                {"x", site.position.x},
                {"y", site.position.y},
                {"sector_id", site.sector_id}};
      if (site.boresight_deg) j["boresight_deg"] = *site.boresight_deg;
      sites.push_back(std::move(j));
    }
  };
  add_sites(macros);
  add_sites(lowpower);
  doc["sites"] = std::move(sites);

  if (!users.empty()) {
    json user_list = json::array();
    for (const UserSite& u : users) {
      user_list.push_back(
          {{"x", u.position.x}, {"y", u.position.y}, {"sector_id", u.sector_id}});
    }
    doc["users"] = std::move(user_list);
  }
  return doc.dump(2);
}

}  // namespace hetnet
