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

#include "hetnet/channel.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace hetnet {
namespace {

double ClampedDistance(double d, double d_min) { return std::max(d, d_min); }

double LinkGainDbImpl(const StationSite& tx, Point rx, double shadow_db,
                      double rx_gain_db, const ChannelModel& model,
                      const Layout& layout) {
  const Point disp = WrapDisplacement(tx.position, rx, layout);
  const double raw_distance = Norm(disp);
  double budget = rx_gain_db + model.other_losses_db - shadow_db;
  if (tx.kind == StationKind::kMacroSector) {
    double pattern = 0.0;
    if (raw_distance > 0.0 && tx.boresight_deg) {
      pattern = AntennaGainDb(AzimuthDeg(disp) - *tx.boresight_deg,
                              model.theta_3db_deg, model.a_max_db);
    }
    budget += model.tx_antenna_gain_macro_db + pattern;
    budget -= PathLossDb(model.macro_pathloss,
                         ClampedDistance(raw_distance, model.min_distance_macro_m));
  } else {
    budget += model.tx_antenna_gain_lowpower_db;
    budget -= PathLossDb(
        model.lowpower_pathloss,
        ClampedDistance(raw_distance, model.min_distance_lowpower_m));
  }
  return budget;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

std::string_view PathLossModelName(PathLossModel model) {
  switch (model) {
    case PathLossModel::kCost231Hata:
      return "cost231_hata";
    case PathLossModel::kWalfischIkegamiNlos:
      return "cost231_wi_nlos";
    case PathLossModel::kShared:
      return "shared";
  }
  return "unknown";
}

ChannelModel ChannelModel::Cost231Pair() { return ChannelModel{}; }

ChannelModel ChannelModel::SharedRaman() {
  ChannelModel model;
  model.macro_pathloss = PathLossModel::kShared;
  model.lowpower_pathloss = PathLossModel::kShared;
  model.shadow_sigma_macro_db = 8.0;
  model.shadow_sigma_lowpower_db = 8.0;
  return model;
}

void ChannelModel::Validate() const {
  if (!(shadow_sigma_macro_db >= 0.0)) {
    throw std::invalid_argument("shadow_sigma_macro_db must be >= 0");
  }
  if (!(shadow_sigma_lowpower_db >= 0.0)) {
    throw std::invalid_argument("shadow_sigma_lowpower_db must be >= 0");
  }
  if (!(theta_3db_deg > 0.0)) {
    throw std::invalid_argument("theta_3db_deg must be > 0");
  }
  if (!(a_max_db > 0.0)) throw std::invalid_argument("a_max_db must be > 0");
  if (!(min_distance_macro_m > 0.0)) {
    throw std::invalid_argument("min_distance_macro_m must be > 0");
  }
  if (!(min_distance_lowpower_m > 0.0)) {
    throw std::invalid_argument("min_distance_lowpower_m must be > 0");
  }
  if (!std::isfinite(noise_power_dbm)) {
    throw std::invalid_argument("noise_power_dbm must be finite");
  }
}

std::string ChannelModel::Id() const {
  std::ostringstream os;
  os << PathLossModelName(macro_pathloss) << '+'
     << PathLossModelName(lowpower_pathloss);
  return os.str();
}

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }
double LinearToDb(double linear) { return 10.0 * std::log10(linear); }
double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double WattsToDbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double AntennaGainDb(double theta_deg, double theta_3db_deg, double a_max_db) {
  const double theta = WrapAngleDeg(theta_deg);
  const double ratio = theta / theta_3db_deg;
  return -std::min(12.0 * ratio * ratio, a_max_db);
}

double PathLossHataDb(double distance_m) {
  return 34.5 + 35.0 * std::log10(distance_m);
}

double PathLossWalfischIkegamiDb(double distance_m) {
  return 34.53 + 38.0 * std::log10(distance_m);
}

double PathLossSharedDb(double distance_m) {
  return 31.5 + 38.0 * std::log10(distance_m);
}

double PathLossDb(PathLossModel model, double distance_m) {
  switch (model) {
    case PathLossModel::kCost231Hata:
      return PathLossHataDb(distance_m);
    case PathLossModel::kWalfischIkegamiNlos:
      return PathLossWalfischIkegamiDb(distance_m);
    case PathLossModel::kShared:
      return PathLossSharedDb(distance_m);
  }
  return PathLossSharedDb(distance_m);
}

double LinkGainDb(const StationSite& tx, Point rx, double shadow_db,
                  const ChannelModel& model, const Layout& layout) {
  return LinkGainDbImpl(tx, rx, shadow_db, model.rx_antenna_gain_db, model,
                        layout);
}

double LinkGain(const StationSite& tx, Point rx, double shadow_db,
                const ChannelModel& model, const Layout& layout) {
  return DbToLinear(LinkGainDb(tx, rx, shadow_db, model, layout));
}

double RelayLinkGainDb(const StationSite& macro, Point relay, double shadow_db,
                       const ChannelModel& model, const Layout& layout) {
  return LinkGainDbImpl(macro, relay, shadow_db, model.relay_rx_antenna_gain_db,
                        model, layout);
}

GainSystem BuildGainSystem(Eigen::MatrixXd g, Eigen::MatrixXd h,
                           Eigen::VectorXd sigma2) {
  const Eigen::Index n = g.rows();
  if (g.cols() != n || h.rows() != n || h.cols() != n || sigma2.size() != n) {
    throw std::invalid_argument("gain matrices must be n x n with n noise terms");
  }
  if (!g.allFinite() || !h.allFinite() || !sigma2.allFinite()) {
    throw DegenerateGainError("non-finite link gain");
  }
  if ((g.array() < 0.0).any() || (h.array() < 0.0).any() ||
      (sigma2.array() < 0.0).any()) {
    throw DegenerateGainError("negative link gain or noise power");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(g(i, i) > 0.0)) {
      throw DegenerateGainError("nonpositive serving macro gain for user " +
                                std::to_string(i));
    }
  }

  GainSystem sys;
  sys.f.resize(n, n);
  sys.g_norm.resize(n, n);
  sys.c.resize(n);
  sys.u.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double serving = g(i, i);
    sys.f.row(i) = g.row(i) / serving;
    sys.g_norm.row(i) = h.row(i) / serving;
    sys.f(i, i) = 0.0;
    sys.g_norm(i, i) = 0.0;
    sys.c(i) = h(i, i) / serving;
    sys.u(i) = sigma2(i) / serving;
  }
  sys.g = std::move(g);
  sys.h = std::move(h);
  sys.sigma2 = std::move(sigma2);
  return sys;
}

GainSystem RestrictGainSystem(const GainSystem& full,
                              const std::vector<int>& active) {
  const auto n = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd g(n, n), h(n, n);
  Eigen::VectorXd sigma2(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    sigma2(a) = full.sigma2(active[a]);
    for (Eigen::Index b = 0; b < n; ++b) {
      g(a, b) = full.g(active[a], active[b]);
      h(a, b) = full.h(active[a], active[b]);
    }
  }
  return BuildGainSystem(std::move(g), std::move(h), std::move(sigma2));
}

Eigen::VectorXd ComputeSinr(const GainSystem& gains, const Eigen::VectorXd& p,
                            const Eigen::VectorXd& q) {
  const int n = gains.n();
  Eigen::VectorXd sinr(n);
  for (int i = 0; i < n; ++i) {
    double interference = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) interference += gains.g(i, j) * p(j) + gains.h(i, j) * q(j);
    }
    const double signal = gains.g(i, i) * p(i) + gains.h(i, i) * q(i);
    sinr(i) = signal / (interference + gains.sigma2(i));
  }
  return sinr;
}

void WriteMatrixCsv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                    std::string_view model_id, std::string_view name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# n=" << m.rows() << ",model=" << model_id << ",matrix=" << name
      << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << FormatDouble(m(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd ReadMatrixCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      double v = 0.0;
      const char* first = line.data() + start;
      const char* last = line.data() + comma;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw std::runtime_error("malformed number in " + path.string());
      }
      row.push_back(v);
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged rows in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.front().size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void WriteGainSystemCsv(const std::filesystem::path& dir,
                        const GainSystem& gains, std::string_view model_id) {
  std::filesystem::create_directories(dir);
  WriteMatrixCsv(dir / "g.csv", gains.g, model_id, "g");
  WriteMatrixCsv(dir / "h.csv", gains.h, model_id, "h");
  WriteMatrixCsv(dir / "sigma2.csv", gains.sigma2, model_id, "sigma2");
  WriteMatrixCsv(dir / "F.csv", gains.f, model_id, "F");
  WriteMatrixCsv(dir / "C.csv", gains.CMatrix(), model_id, "C");
  WriteMatrixCsv(dir / "G.csv", gains.g_norm, model_id, "G");
  WriteMatrixCsv(dir / "u.csv", gains.u, model_id, "u");
}

GainSystem ReadGainSystemCsv(const std::filesystem::path& dir) {
  Eigen::MatrixXd sigma2 = ReadMatrixCsv(dir / "sigma2.csv");
  return BuildGainSystem(ReadMatrixCsv(dir / "g.csv"),
                         ReadMatrixCsv(dir / "h.csv"), sigma2.col(0));
}

}  // namespace hetnet
