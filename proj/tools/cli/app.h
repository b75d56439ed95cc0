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

#ifndef CAUSALMATCH_TOOLS_CLI_APP_H_
#define CAUSALMATCH_TOOLS_CLI_APP_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "causalmatch/data.h"
#include "causalmatch/errors.h"
#include "causalmatch/metrics.h"
#include "causalmatch/trainer.h"

namespace causalmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

int ExitCodeFor(ErrorKind kind);

// Flat `key = value` lines; blank lines and '#' comments are skipped. Keys are
// long flag names without the leading dashes.
std::map<std::string, std::string> ParseConfigText(const std::string& text);

// Replaces `--config PATH` in `args` (args[0] is the subcommand) by the
// file's entries as `--key=value` tokens placed before the user's own flags,
// so that flags given on the command line take precedence.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args);

// Writes through a sibling temporary file and renames it into place, so a
// failure never leaves a partial file at `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content);

// Effect metrics of a trained model on one sample. Truth-dependent fields are
// filled only when the dataset carries mu0 / mu1.
MetricsReport Evaluate(const TrainedModel& model, const Dataset& data,
                       SampleSplit split, const std::string& run,
                       const std::string& label);

struct AblationCell {
  double alpha = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string model;
  bool ok = false;
  std::string message;
  double ate_error = 0.0;
  double sqrt_pehe = 0.0;
};

// Grid CSV: per-seed rows followed by one aggregate row per (alpha, eps)
// cell, cells in ascending (alpha, eps) order.
std::string AblationCsv(std::vector<AblationCell> cells);

// Parses and runs one command line (without the program name). Diagnostics go
// to `err`, short progress summaries to `out`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace causalmatch::cli

#endif  // CAUSALMATCH_TOOLS_CLI_APP_H_
