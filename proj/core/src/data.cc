// Copyright 2026 The causalmatch Authors.
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

#include "causalmatch/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "causalmatch/errors.h"
#include "causalmatch/random.h"

namespace causalmatch {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double ParseCell(const std::string& cell, int row, const std::string& column) {
  const std::string s = Trim(cell);
  if (s.empty()) {
    throw DataError("missing value at row " + std::to_string(row) +
                    ", column '" + column + "'");
  }
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DataError("unparseable value '" + s + "' at row " +
                    std::to_string(row) + ", column '" + column + "'");
  }
  return v;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

int Dataset::num_treated() const {
  return static_cast<int>((t.array() == 1.0).count());
}

Vector Dataset::TrueIte() const {
  if (!has_ground_truth()) {
    throw UnavailableError("dataset carries no mu0/mu1 ground truth");
  }
  return *mu1 - *mu0;
}

Matrix Dataset::CovariatesWithoutAnchor() const {
  return DropColumn(x, anchor_index);
}

Dataset Dataset::Subset(std::span<const int> rows) const {
  Dataset out;
  out.x = SelectRows(x, rows);
  out.t = SelectRows(t, rows);
  out.y = SelectRows(y, rows);
  if (y_cfactual) out.y_cfactual = SelectRows(*y_cfactual, rows);
  if (mu0) out.mu0 = SelectRows(*mu0, rows);
  if (mu1) out.mu1 = SelectRows(*mu1, rows);
  out.anchor_index = anchor_index;
  out.feature_names = feature_names;
  out.hidden_names = hidden_names;
  return out;
}

int Dataset::FeatureIndex(const std::string& name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  return it == feature_names.end()
             ? -1
             : static_cast<int>(it - feature_names.begin());
}

void Dataset::Validate() const {
  const Eigen::Index rows = x.rows();
  if (rows < 2) throw DataError("dataset needs at least 2 rows");
  if (t.size() != rows || y.size() != rows) {
    throw DataError("t / y length differs from covariate rows");
  }
  if (anchor_index < 0 || anchor_index >= x.cols()) {
    throw DataError("anchor index " + std::to_string(anchor_index) +
                    " outside covariate range");
  }
  if (static_cast<Eigen::Index>(feature_names.size()) != x.cols()) {
    throw DataError("feature name count differs from covariate columns");
  }
  if (mu0.has_value() != mu1.has_value()) {
    throw DataError("mu0 and mu1 must be both present or both absent");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (t[i] != 0.0 && t[i] != 1.0) {
      throw DataError("non-binary treatment at row " + std::to_string(i));
    }
  }
  const auto check_len = [&](const std::optional<Vector>& v, const char* name) {
    if (v && v->size() != rows) {
      throw DataError(std::string(name) + " length differs from rows");
    }
  };
  check_len(y_cfactual, "y_cfactual");
  check_len(mu0, "mu0");
  check_len(mu1, "mu1");
  if (!x.allFinite() || !y.allFinite()) {
    throw DataError("non-finite covariate or outcome value");
  }
}

Dataset LoadCsv(const std::string& path, const std::string& anchor_name) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("dataset '" + path + "' is empty (no header)");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = SplitCsvLine(line);
  for (auto& h : header) h = Trim(h);

  int col_t = -1, col_y = -1, col_ycf = -1, col_mu0 = -1, col_mu1 = -1;
  std::vector<int> x_cols;
  Dataset data;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    const std::string& h = header[c];
    if (h == "t") {
      col_t = c;
    } else if (h == "y_factual") {
      col_y = c;
    } else if (h == "y_cfactual") {
      col_ycf = c;
    } else if (h == "mu0") {
      col_mu0 = c;
    } else if (h == "mu1") {
      col_mu1 = c;
    } else if (h.rfind("x_", 0) == 0 && h.size() > 2) {
      x_cols.push_back(c);
      data.feature_names.push_back(h.substr(2));
    } else if (h == "domain") {
      // Produced by the domain generator; labels are regenerated on demand.
    } else {
      throw DataError("unexpected column '" + h + "' in '" + path + "'");
    }
  }
  if (col_t < 0) throw DataError("missing required column 't'");
  if (col_y < 0) throw DataError("missing required column 'y_factual'");
  if ((col_mu0 < 0) != (col_mu1 < 0)) {
    throw DataError("columns mu0 and mu1 must appear together");
  }
  if (x_cols.empty()) throw DataError("no covariate (x_*) columns");

  std::vector<std::vector<double>> rows;
  int row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    ++row;
    std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    std::vector<double> values(header.size(), 0.0);
    for (size_t c = 0; c < header.size(); ++c) {
      if (header[c] == "domain") continue;
      values[c] = ParseCell(cells[c], row, header[c]);
    }
    if (values[col_t] != 0.0 && values[col_t] != 1.0) {
      throw DataError("non-binary treatment value " +
                      FormatDouble(values[col_t]) + " at row " +
                      std::to_string(row));
    }
    rows.push_back(std::move(values));
  }
  const int n = static_cast<int>(rows.size());
  data.x.resize(n, static_cast<Eigen::Index>(x_cols.size()));
  data.t.resize(n);
  data.y.resize(n);
  if (col_ycf >= 0) data.y_cfactual = Vector(n);
  if (col_mu0 >= 0) {
    data.mu0 = Vector(n);
    data.mu1 = Vector(n);
  }
  for (int i = 0; i < n; ++i) {
    const auto& r = rows[i];
    data.t[i] = r[col_t];
    data.y[i] = r[col_y];
    if (col_ycf >= 0) (*data.y_cfactual)[i] = r[col_ycf];
    if (col_mu0 >= 0) {
      (*data.mu0)[i] = r[col_mu0];
      (*data.mu1)[i] = r[col_mu1];
    }
    for (size_t k = 0; k < x_cols.size(); ++k) data.x(i, k) = r[x_cols[k]];
  }
  data.anchor_index = data.FeatureIndex(anchor_name);
  if (data.anchor_index < 0) {
    throw DataError("anchor '" + anchor_name + "' is not a covariate of '" +
                    path + "'");
  }
  data.Validate();
  return data;
}

void SaveCsv(const Dataset& data, const std::string& path,
             const std::vector<int>* domains) {
  if (domains && static_cast<int>(domains->size()) != data.n()) {
    throw ShapeError("domain label count differs from dataset rows");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "t,y_factual";
  if (data.y_cfactual) out << ",y_cfactual";
  if (data.has_ground_truth()) out << ",mu0,mu1";
  for (const auto& name : data.feature_names) out << ",x_" << name;
  if (domains) out << ",domain";
  out << '\n';
  for (int i = 0; i < data.n(); ++i) {
    out << FormatDouble(data.t[i]) << ',' << FormatDouble(data.y[i]);
    if (data.y_cfactual) out << ',' << FormatDouble((*data.y_cfactual)[i]);
    if (data.has_ground_truth()) {
      out << ',' << FormatDouble((*data.mu0)[i]) << ','
          << FormatDouble((*data.mu1)[i]);
    }
    for (int j = 0; j < data.d(); ++j) out << ',' << FormatDouble(data.x(i, j));
    if (domains) out << ',' << (*domains)[i];
    out << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

Dataset InduceConfounding(const Dataset& data,
                          const std::vector<std::string>& drop_names) {
  std::vector<int> drop;
  for (const auto& name : drop_names) {
    if (name == "t" || name == "y_factual" || name == "y") {
      throw ConfigError("cannot drop treatment or outcome column '" + name +
                        "'");
    }
    const int idx = data.FeatureIndex(name);
    if (idx < 0) throw ConfigError("unknown covariate '" + name + "'");
    if (idx == data.anchor_index) {
      throw ConfigError("refusing to drop the anchor covariate '" + name +
                        "'; it must stay observed");
    }
    if (std::find(drop.begin(), drop.end(), idx) == drop.end()) {
      drop.push_back(idx);
    }
  }
  Dataset out = data;
  out.x = DropColumns(data.x, drop);
  out.feature_names.clear();
  for (int j = 0; j < data.d(); ++j) {
    if (std::find(drop.begin(), drop.end(), j) == drop.end()) {
      out.feature_names.push_back(data.feature_names[j]);
    } else {
      out.hidden_names.push_back(data.feature_names[j]);
    }
  }
  const int removed_before_anchor = static_cast<int>(std::count_if(
      drop.begin(), drop.end(), [&](int j) { return j < data.anchor_index; }));
  out.anchor_index = data.anchor_index - removed_before_anchor;
  return out;
}

SplitResult Split(const Dataset& data, double ratio, std::uint64_t seed,
                  int max_retries) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ConfigError("split ratio must lie in (0, 1)");
  }
  const int n = data.n();
  const int n_train = static_cast<int>(std::lround(ratio * n));
  if (n_train < 1 || n_train >= n) {
    throw DegenerateError("split ratio leaves an empty part for n=" +
                          std::to_string(n));
  }
  std::vector<int> order(n);
  Rng rng = MakeRng(seed, {0x5b117});
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> train(order.begin(), order.begin() + n_train);
    std::vector<int> test(order.begin() + n_train, order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    int treated = 0;
    for (int i : train) treated += data.t[i] == 1.0 ? 1 : 0;
    if (treated == 0 || treated == n_train) continue;
    SplitResult r;
    r.train = data.Subset(train);
    r.test = data.Subset(test);
    r.train_rows = std::move(train);
    r.test_rows = std::move(test);
    return r;
  }
  throw DegenerateError("could not draw a training split with both treatment "
                        "arms after " + std::to_string(max_retries) +
                        " retries");
}

}  // namespace causalmatch
