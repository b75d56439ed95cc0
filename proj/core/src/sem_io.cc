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

#include <fstream>
#include <sstream>

#include "causalmatch/errors.h"
#include "causalmatch/sem.h"

namespace causalmatch {
namespace {

std::vector<int> ParseIndexList(const std::string& text) {
  std::vector<int> out;
  if (text == "-" || text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw DataError("SEM file: bad node index '" + item + "'");
    }
  }
  return out;
}

std::string NextContentLine(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return line;
  }
  throw DataError("SEM file: unexpected end of input");
}

}  // namespace

std::string SerializeSem(const LinearSem& sem) {
  std::ostringstream os;
  os << "p " << sem.p() << '\n';
  os << "roles treatment=" << sem.roles.treatment
     << " outcome=" << sem.roles.outcome << " anchor=" << sem.roles.anchor
     << " hidden=";
  if (sem.roles.hidden.empty()) {
    os << '-';
  } else {
    for (size_t k = 0; k < sem.roles.hidden.size(); ++k) {
      os << (k ? "," : "") << sem.roles.hidden[k];
    }
  }
  os << '\n';
  if (!sem.names.empty()) {
    os << "names";
    for (int i = 0; i < sem.p(); ++i) os << ' ' << sem.NodeName(i);
    os << '\n';
  }
  int edges = 0;
  for (Eigen::Index k = 0; k < sem.b.size(); ++k) {
    edges += sem.b.data()[k] != 0.0 ? 1 : 0;
  }
  os << "edges " << edges << '\n';
  for (int i = 0; i < sem.p(); ++i) {
    for (int j = 0; j < sem.p(); ++j) {
      if (sem.b(i, j) != 0.0) {
        os << i << ' ' << j << ' ' << FormatDouble(sem.b(i, j)) << '\n';
      }
    }
  }
  os << "noise\n";
  for (int i = 0; i < sem.p(); ++i) {
    os << i << ' ' << FormatDouble(sem.omega[i]) << '\n';
  }
  return os.str();
}

LinearSem ParseSem(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  int p = 0;
  {
    std::istringstream line(NextContentLine(in));
    if (!(line >> key >> p) || key != "p" || p < 1) {
      throw DataError("SEM file: expected 'p <count>' header");
    }
  }
  SemRoles roles;
  std::vector<std::string> names;
  std::string line_text = NextContentLine(in);
  {
    std::istringstream line(line_text);
    line >> key;
    if (key != "roles") throw DataError("SEM file: expected 'roles' line");
    std::string field;
    while (line >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw DataError("SEM file: malformed role '" + field + "'");
      }
      const std::string name = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (name == "hidden") {
        roles.hidden = ParseIndexList(value);
      } else {
        const std::vector<int> v = ParseIndexList(value);
        if (v.size() != 1) {
          throw DataError("SEM file: role '" + name + "' needs one index");
        }
        if (name == "treatment") {
          roles.treatment = v[0];
        } else if (name == "outcome") {
          roles.outcome = v[0];
        } else if (name == "anchor") {
          roles.anchor = v[0];
        } else {
          throw DataError("SEM file: unknown role '" + name + "'");
        }
      }
    }
  }
  line_text = NextContentLine(in);
  if (line_text.rfind("names", 0) == 0) {
    std::istringstream line(line_text);
    line >> key;
    std::string name;
    while (line >> name) names.push_back(name);
    if (static_cast<int>(names.size()) != p) {
      throw DataError("SEM file: names line needs one name per node");
    }
    line_text = NextContentLine(in);
  }
  int edge_count = 0;
  {
    std::istringstream line(line_text);
    if (!(line >> key >> edge_count) || key != "edges" || edge_count < 0) {
      throw DataError("SEM file: expected 'edges <count>'");
    }
  }
  std::vector<std::tuple<int, int, double>> edges;
  for (int e = 0; e < edge_count; ++e) {
    std::istringstream line(NextContentLine(in));
    int i = 0, j = 0;
    double w = 0.0;
    if (!(line >> i >> j >> w)) {
      throw DataError("SEM file: malformed edge line " + std::to_string(e + 1));
    }
    edges.emplace_back(i, j, w);
  }
  if (NextContentLine(in).rfind("noise", 0) != 0) {
    throw DataError("SEM file: expected 'noise' section");
  }
  std::vector<double> omega(p, 0.0);
  std::vector<bool> seen(p, false);
  for (int k = 0; k < p; ++k) {
    std::istringstream line(NextContentLine(in));
    int i = 0;
    double s2 = 0.0;
    if (!(line >> i >> s2) || i < 0 || i >= p || seen[i]) {
      throw DataError("SEM file: malformed noise line " + std::to_string(k + 1));
    }
    seen[i] = true;
    omega[i] = s2;
  }
  LinearSem sem = MakeSem(p, edges, omega, roles);
  sem.names = std::move(names);
  return sem;
}

void SaveSem(const LinearSem& sem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write SEM file '" + path + "'");
  out << SerializeSem(sem);
}

LinearSem LoadSem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open SEM file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSem(buffer.str());
}

}  // namespace causalmatch
