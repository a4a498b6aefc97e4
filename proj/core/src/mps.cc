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

#include "hetnet/mps.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr char kObjectiveRow[] = "COST";

std::string FormatNumber(double v, MpsFormat format) {
  char buf[64];
  if (format == MpsFormat::kFree) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
  // Fixed MPS numeric fields are 12 characters wide.
  for (int precision = 12; precision >= 1; --precision) {
    const int len = std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (len <= 12) return buf;
  }
  throw std::invalid_argument("value does not fit a fixed MPS field");
}

void CheckName(const std::string& name, MpsFormat format) {
  if (name.empty() || name.find(' ') != std::string::npos) {
    throw std::invalid_argument("MPS names must be non-empty without spaces");
  }
  if (format == MpsFormat::kFixed && name.size() > 8) {
    throw std::invalid_argument("fixed MPS names are limited to 8 characters: " +
                                name);
  }
}

// Data line with fields at columns 2, 5, 15, 25, 40 and 50 (fixed format) or
// single-space separated (free format).
std::string DataLine(MpsFormat format, const std::string& code,
                     const std::string& name1, const std::string& name2 = "",
                     const std::string& value1 = "", const std::string& name3 = "",
                     const std::string& value2 = "") {
  if (format == MpsFormat::kFree) {
    std::string line = " ";
    for (const std::string* f : {&code, &name1, &name2, &value1, &name3, &value2}) {
      if (f->empty()) continue;
      if (line.size() > 1) line += ' ';
      line += *f;
    }
    return line;
  }
  std::string line(61, ' ');
  auto put = [&line](std::size_t column, const std::string& field) {
    line.replace(column - 1, field.size(), field);
  };
  put(2, code);
  put(5, name1);
  put(15, name2);
  put(25, value1);
  put(40, name3);
  put(50, value2);
  const std::size_t last = line.find_last_not_of(' ');
  return line.substr(0, last + 1);
}

char SenseCode(RowSense sense) {
  switch (sense) {
    case RowSense::kGreaterEqual:
      return 'G';
    case RowSense::kLessEqual:
      return 'L';
    case RowSense::kEqual:
      return 'E';
  }
  return 'E';
}

std::vector<std::string> Tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

double ParseNumber(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed MPS number: " + text);
  }
  if (used != text.size()) throw std::runtime_error("malformed MPS number: " + text);
  return v;
}

}  // namespace

void WriteMps(const LinearProgram& lp, std::ostream& out, MpsFormat format) {
  const int m = lp.num_rows();
  const int k = lp.num_cols();
  if (static_cast<int>(lp.row_names.size()) != m ||
      static_cast<int>(lp.col_names.size()) != k) {
    throw std::invalid_argument("every row and column needs a name");
  }
  for (const std::string& name : lp.row_names) CheckName(name, format);
  for (const std::string& name : lp.col_names) CheckName(name, format);
  CheckName(lp.name, MpsFormat::kFree);

  out << (format == MpsFormat::kFixed ? "NAME          " : "NAME ") << lp.name
      << '\n';
  out << "ROWS\n";
  out << DataLine(format, "N", kObjectiveRow) << '\n';
  for (int i = 0; i < m; ++i) {
    out << DataLine(format, std::string(1, SenseCode(lp.sense[i])),
                    lp.row_names[i])
        << '\n';
  }
  out << "COLUMNS\n";
  for (int j = 0; j < k; ++j) {
    if (lp.cost(j) != 0.0) {
      out << DataLine(format, "", lp.col_names[j], kObjectiveRow,
                      FormatNumber(lp.cost(j), format))
          << '\n';
    }
    for (int i = 0; i < m; ++i) {
      if (lp.a(i, j) == 0.0) continue;
      out << DataLine(format, "", lp.col_names[j], lp.row_names[i],
                      FormatNumber(lp.a(i, j), format))
          << '\n';
    }
  }
  out << "RHS\n";
  for (int i = 0; i < m; ++i) {
    if (lp.rhs(i) == 0.0) continue;
    out << DataLine(format, "", "RHS", lp.row_names[i],
                    FormatNumber(lp.rhs(i), format))
        << '\n';
  }
  out << "BOUNDS\n";
  for (int j = 0; j < k; ++j) {
    const double lo = lp.lower(j);
    const double up = lp.upper(j);
    if (lo == up) {
      out << DataLine(format, "FX", "BND", lp.col_names[j], FormatNumber(lo, format))
          << '\n';
      continue;
    }
    if (lo != 0.0) {
      out << DataLine(format, "LO", "BND", lp.col_names[j], FormatNumber(lo, format))
          << '\n';
    }
    if (std::isfinite(up)) {
      out << DataLine(format, "UP", "BND", lp.col_names[j], FormatNumber(up, format))
          << '\n';
    }
  }
  out << "ENDATA\n";
}

LinearProgram ReadMps(std::istream& in) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kDone };
  Section section = Section::kNone;
  LinearProgram lp;
  std::string objective_row;
  std::map<std::string, int> row_index;
  std::map<std::string, int> col_index;
  std::vector<RowSense> senses;
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<double> cost;
  std::map<int, double> rhs;
  std::vector<double> lower, upper;

  auto column_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    const int id = static_cast<int>(lp.col_names.size());
    col_index.emplace(name, id);
    lp.col_names.push_back(name);
    columns.emplace_back();
    cost.push_back(0.0);
    lower.push_back(0.0);
    upper.push_back(kInf);
    return id;
  };
  auto add_entry = [&](int col, const std::string& row, const std::string& value) {
    const double v = ParseNumber(value);
    if (row == objective_row) {
      cost[col] = v;
      return;
    }
    auto it = row_index.find(row);
    if (it == row_index.end()) throw std::runtime_error("unknown MPS row: " + row);
    columns[col].emplace_back(it->second, v);
  };

  std::string line;
  while (section != Section::kDone && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    const std::vector<std::string> tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      const std::string& keyword = tokens[0];
      if (keyword == "NAME") {
        if (tokens.size() > 1) lp.name = tokens[1];
      } else if (keyword == "ROWS") {
        section = Section::kRows;
      } else if (keyword == "COLUMNS") {
        section = Section::kColumns;
      } else if (keyword == "RHS") {
        section = Section::kRhs;
      } else if (keyword == "BOUNDS") {
        section = Section::kBounds;
      } else if (keyword == "ENDATA") {
        section = Section::kDone;
      } else {
        throw std::runtime_error("unsupported MPS section: " + keyword);
      }
      continue;
    }
    switch (section) {
      case Section::kRows: {
        if (tokens.size() != 2) throw std::runtime_error("bad ROWS line: " + line);
        const std::string& code = tokens[0];
        if (code == "N") {
          if (objective_row.empty()) objective_row = tokens[1];
          continue;
        }
        RowSense sense;
        if (code == "G") {
          sense = RowSense::kGreaterEqual;
        } else if (code == "L") {
          sense = RowSense::kLessEqual;
        } else if (code == "E") {
          sense = RowSense::kEqual;
        } else {
          throw std::runtime_error("bad row type: " + code);
        }
        row_index.emplace(tokens[1], static_cast<int>(senses.size()));
        lp.row_names.push_back(tokens[1]);
        senses.push_back(sense);
        break;
      }
      case Section::kColumns: {
        if (tokens.size() != 3 && tokens.size() != 5) {
          throw std::runtime_error("bad COLUMNS line: " + line);
        }
        const int col = column_of(tokens[0]);
        add_entry(col, tokens[1], tokens[2]);
        if (tokens.size() == 5) add_entry(col, tokens[3], tokens[4]);
        break;
      }
      case Section::kRhs: {
        if (tokens.size() != 3 && tokens.size() != 5) {
          throw std::runtime_error("bad RHS line: " + line);
        }
        for (std::size_t t = 1; t + 1 < tokens.size(); t += 2) {
          if (tokens[t] == objective_row) continue;
          auto it = row_index.find(tokens[t]);
          if (it == row_index.end()) {
            throw std::runtime_error("unknown MPS row: " + tokens[t]);
          }
          rhs[it->second] = ParseNumber(tokens[t + 1]);
        }
        break;
      }
      case Section::kBounds: {
        if (tokens.size() < 3) throw std::runtime_error("bad BOUNDS line: " + line);
        const std::string& type = tokens[0];
        const int col = column_of(tokens[2]);
        if (type == "FR") {
          lower[col] = -kInf;
          upper[col] = kInf;
          continue;
        }
        if (type == "MI") {
          lower[col] = -kInf;
          continue;
        }
        if (type == "PL") {
          upper[col] = kInf;
          continue;
        }
        if (tokens.size() != 4) throw std::runtime_error("bad BOUNDS line: " + line);
        const double v = ParseNumber(tokens[3]);
        if (type == "UP") {
          upper[col] = v;
        } else if (type == "LO") {
          lower[col] = v;
        } else if (type == "FX") {
          lower[col] = upper[col] = v;
        } else {
          throw std::runtime_error("unsupported bound type: " + type);
        }
        break;
      }
      default:
        throw std::runtime_error("MPS data outside a section: " + line);
    }
  }
  if (section != Section::kDone) throw std::runtime_error("missing ENDATA");

  const int m = static_cast<int>(senses.size());
  const int k = static_cast<int>(columns.size());
  lp.sense = senses;
  lp.a = Eigen::MatrixXd::Zero(m, k);
  for (int j = 0; j < k; ++j) {
    for (const auto& [row, v] : columns[j]) lp.a(row, j) = v;
  }
  lp.rhs = Eigen::VectorXd::Zero(m);
  for (const auto& [row, v] : rhs) lp.rhs(row) = v;
  lp.cost = Eigen::Map<const Eigen::VectorXd>(cost.data(), k);
  lp.lower = Eigen::Map<const Eigen::VectorXd>(lower.data(), k);
  lp.upper = Eigen::Map<const Eigen::VectorXd>(upper.data(), k);
  return lp;
}

}  // namespace hetnet
