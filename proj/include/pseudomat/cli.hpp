// Copyright 2026 The pseudomat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSEUDOMAT_CLI_HPP
#define PSEUDOMAT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pseudomat::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kCapacity = 2;
inline constexpr int kCheckFailed = 3;

/// One request. Empty strings and zero counts mean "use the default".
struct ExperimentConfig {
  std::string command;
  int r = 0;  // 0: inferred from U, the words or the layout, else 2
  std::string u;
  std::string d;
  std::string shape = "square";
  std::string state;  // phi, psi:j or psi
  int j = -1;         // shorthand for the state: 0 is phi, k is psi:k
  int max_m = 8;
  bool list = false;
  int truncated = -1;  // -1: truncated unless the state is phi
  std::vector<std::string> words;
  std::vector<int> n;
  std::vector<int> sizes;
  long trials = 1000;
  std::uint64_t seed = 0;
  std::string trace = "full";
  std::string model = "circular";
  std::string property;
  int max_degree = 6;
  double tol = 1e-9;
  std::string output;
  std::string format = "csv";
  bool strict = false;
};

/// Parses arguments (without the program name), merging a --config JSON
/// file underneath explicit flags. Throws ArgumentError.
ExperimentConfig parse_arguments(const std::vector<std::string>& args);

/// Dispatches one request, writing the table or report to config.output
/// (or `out`) and a one-line summary to `err`. Returns an exit status.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run, with every error mapped to its exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudomat::cli

#endif  // PSEUDOMAT_CLI_HPP
