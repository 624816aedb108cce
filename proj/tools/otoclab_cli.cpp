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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "otoclab/experiments.hpp"

namespace {

struct CliState {
  std::string config_path;
  std::string out_path;
  otoclab::RunOptions options;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common_flags(CLI::App* cmd, CliState& state, bool needs_config) {
  auto* config_opt =
      cmd->add_option("--config", state.config_path, "experiment config file");
  if (needs_config) config_opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", state.out_path,
                  "output path (stdout when omitted)");
  cmd->add_option("--format", state.options.format, "ndjson or csv")
      ->check(CLI::IsMember({"ndjson", "csv"}));
  cmd->add_option("--seed", state.seed, "override the config seed")
      ->each([&state](const std::string&) { state.seed_set = true; });
  cmd->add_option("--workers", state.options.workers, "worker thread count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance-profile", state.options.tolerance_profile,
                  "strict or loose")
      ->check(CLI::IsMember({"strict", "loose"}));
}

int run_from_config(const CliState& state, const std::string& expected_kind) {
  std::ifstream in(state.config_path);
  if (!in) {
    std::cerr << "config error: cannot open " << state.config_path << "\n";
    return otoclab::kExitConfig;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  if (!expected_kind.empty() &&
      text.find("\"" + expected_kind + "\"") == std::string::npos) {
    std::cerr << "config error: config does not declare experiment '"
              << expected_kind << "'\n";
    return otoclab::kExitConfig;
  }

  otoclab::RunOptions options = state.options;
  if (state.seed_set) options.seed_override = state.seed;

  if (!state.out_path.empty()) {
    std::ofstream out(state.out_path);
    if (!out) {
      std::cerr << "config error: cannot open output " << state.out_path
                << "\n";
      return otoclab::kExitConfig;
    }
    return otoclab::run_experiment_config(text, out, std::cerr, options);
  }
  return otoclab::run_experiment_config(text, std::cout, std::cerr, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"otoclab - teleportation-based scrambling diagnostics"};
  app.require_subcommand(1);

  CliState state;
  const std::vector<std::string> kinds = {
      "otoc",          "decode",          "state-decode",
      "grover",        "sweep-depolarize", "sweep-coherent",
      "ensemble",      "clifford-test",   "finite-temp"};
  std::string chosen;
  for (const auto& kind : kinds) {
    auto* cmd = app.add_subcommand(
        kind, "run a '" + kind + "' experiment from a config file");
    add_common_flags(cmd, state, /*needs_config=*/true);
    cmd->callback([&chosen, kind] { chosen = kind; });
  }
  auto* run_cmd = app.add_subcommand(
      "run", "run whichever experiment the config declares");
  add_common_flags(run_cmd, state, /*needs_config=*/true);
  run_cmd->callback([&chosen] { chosen = ""; });

  auto* repro = app.add_subcommand(
      "fixtures", "run the built-in fixture suite and print the table");
  std::string repro_out;
  repro->add_option("--out", repro_out, "output path (stdout when omitted)");
  bool do_repro = false;
  repro->callback([&do_repro] { do_repro = true; });

  CLI11_PARSE(app, argc, argv);

  if (do_repro) {
    if (!repro_out.empty()) {
      std::ofstream out(repro_out);
      if (!out) {
        std::cerr << "cannot open output " << repro_out << "\n";
        return otoclab::kExitConfig;
      }
      return otoclab::verify_fixtures(out, std::cerr);
    }
    return otoclab::verify_fixtures(std::cout, std::cerr);
  }
  return run_from_config(state, chosen);
}
