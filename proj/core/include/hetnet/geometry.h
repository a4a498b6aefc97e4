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

#ifndef HETNET_GEOMETRY_H_
#define HETNET_GEOMETRY_H_

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hetnet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Point a, Point b) = default;
};

double Norm(Point p);

// Azimuth of `p` in degrees, measured counter-clockwise from the +x axis,
// in (-180, 180].
double AzimuthDeg(Point p);

// Maps any angle onto [-180, 180].
double WrapAngleDeg(double deg);

struct Sector {
  int cell_id = 0;
  double boresight_deg = 0.0;
};

// Hexagonal macro-cell layout. Cells are pointy-top hexagons of circumradius
// `cell_radius`, so sector boresights at 90/210/330 degrees point at cell
// vertices and neighbouring centers are sqrt(3) * cell_radius apart.
struct Layout {
  double cell_radius = 1000.0;
  int rings = 2;
  std::vector<Point> cells;
  std::vector<Sector> sectors;  // 3 per cell, sector index = 3 * cell + k
  // Zero vector first, then the six cluster translations.
  std::vector<Point> wrap_translations;

  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_sectors() const { return static_cast<int>(sectors.size()); }
};

constexpr int kSectorsPerCell = 3;

// Builds a hexagonal lattice of 1 + 3 * rings * (rings + 1) cells centred at
// the origin. Sector k of every cell points at sector0_azimuth_deg + 120 * k.
Layout BuildLayout(double cell_radius, int rings,
                   double sector0_azimuth_deg = 90.0);

// Displacement from `from` to the nearest wrap-around image of `to`.
Point WrapDisplacement(Point from, Point to, const Layout& layout);

// min over wrap translations t of |a - (b + t)|.
double WrapDistance(Point a, Point b, const Layout& layout);

// True when `p` lies inside (or on the boundary of) the hexagon of `cell_id`.
bool InCell(Point p, int cell_id, const Layout& layout);

// True when `p` lies inside the cell and within +-60 degrees of the sector's
// boresight as seen from the cell center.
bool InSector(Point p, int sector_id, const Layout& layout);

// Uniform sample over a sector's area (rejection from the cell's bounding
// box).
Point SampleInSector(int sector_id, const Layout& layout, std::mt19937_64& rng);

enum class StationKind { kMacroSector, kLowPower };

struct StationSite {
  StationKind kind = StationKind::kMacroSector;
  Point position;
  std::optional<double> boresight_deg;  // macro sectors only
  int sector_id = 0;                    // serving/bound macro sector
};

struct UserSite {
  Point position;
  int sector_id = 0;
};

std::vector<StationSite> MacroSites(const Layout& layout);

// One low-power site at cell_radius / 2 along the boresight of each sector
// (per_cell = 3) or only along sector 0 of each cell (per_cell = 1).
std::vector<StationSite> PlaceLowPower(const Layout& layout, int per_cell = 3);

// JSON document with cells, sectors and station sites (and users, if given).
std::string LayoutToJson(const Layout& layout,
                         const std::vector<StationSite>& macros,
                         const std::vector<StationSite>& lowpower,
                         const std::vector<UserSite>& users = {});

}  // namespace hetnet

#endif  // HETNET_GEOMETRY_H_
