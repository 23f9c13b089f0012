// Copyright 2026 The temperlab Authors.
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

#ifndef TEMPERLAB_CLI_COMMANDS_HPP
#define TEMPERLAB_CLI_COMMANDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "temperlab/cli/config.hpp"
#include "temperlab/cli/output.hpp"

namespace temperlab::cli {

/// What a command produced. Tables honor --format; `json` is used when the
/// command has no tabular form. `side_tables` go to their own paths.
struct CommandOutput {
  std::optional<Table> table;
  std::optional<nlohmann::ordered_json> json;
  std::vector<std::pair<std::string, Table>> side_tables;
  bool complete = true;       // every requested point finished without error
  bool checks_passed = true;  // verify: every item PASS
};

struct RunFlags {
  bool timestamp = true;  // also gates wall-clock columns
};

CommandOutput cmd_verify(const ExperimentConfig& config, const RunFlags& flags);
CommandOutput cmd_scan_gap(const ExperimentConfig& config, const RunFlags& flags);
CommandOutput cmd_scan_conductance(const ExperimentConfig& config, const RunFlags& flags);
CommandOutput cmd_compare_rgb(const ExperimentConfig& config, const RunFlags& flags);
CommandOutput cmd_simulate(const ExperimentConfig& config, const RunFlags& flags);
CommandOutput cmd_ladder_info(const ExperimentConfig& config, const RunFlags& flags);

/// Chain selected by the chain block at grid value n.
LumpedChain build_configured_chain(const ExperimentConfig& config, int n, LadderKind kind);

/// Dump path for one grid point: "{n}" and "{ladder}" are substituted; without
/// placeholders a "-n<n>-<ladder>" suffix is added when the grid has several points.
std::string dump_path(const ExperimentConfig& config, int n, LadderKind kind);

}  // namespace temperlab::cli

#endif  // TEMPERLAB_CLI_COMMANDS_HPP
