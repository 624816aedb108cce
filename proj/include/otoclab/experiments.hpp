// Copyright 2026 The otoclab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOCLAB_EXPERIMENTS_HPP
#define OTOCLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "otoclab/circuits.hpp"

namespace otoclab {

// Serializes a named circuit's gate list to the experiment-config circuit
// schema ({"site_dims": [...], "gates": [{"kind", "targets"}, ...]}).
std::string gate_list_config_json(const NamedCircuit& circuit);

// One result record: ordered key/value pairs, serialized as NDJSON or CSV.
// Doubles are printed with 17 significant digits so they round-trip.
class Record {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, bool value);

  std::string to_ndjson() const;
  std::string csv_header() const;
  std::string csv_row() const;

 private:
  using Value = std::variant<std::string, double, std::uint64_t, bool>;
  std::vector<std::pair<std::string, Value>> fields_;
};

struct RunOptions {
  std::string format = "ndjson";  // ndjson | csv
  std::optional<std::uint64_t> seed_override;
  std::size_t workers = 1;
  std::string tolerance_profile = "strict";  // strict | loose
};

// Exit codes: 0 ok, 1 numerical failure, 2 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

// Runs the experiment described by a JSON config document. One record per
// grid/ensemble point; identical config + seed produce byte-identical
// output. Per-point post-selection failures are recorded and the run
// continues.
int run_experiment_config(const std::string& config_text, std::ostream& out,
                          std::ostream& err, const RunOptions& options);

// Runs the built-in fixture suite (closed-form values of the named
// circuits, channel identities, bounds, and the deterministic decoder) and
// prints a pass/fail table keyed by fixture group. Returns kExitOk when
// every fixture passes.
int verify_fixtures(std::ostream& out, std::ostream& err);

}  // namespace otoclab

#endif  // OTOCLAB_EXPERIMENTS_HPP
