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

#include "temperlab/cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>

#include "temperlab/cli/commands.hpp"
#include "temperlab/cli/config.hpp"
#include "temperlab/error.hpp"

namespace temperlab::cli {

namespace {

void print_config_errors(const std::vector<ConfigIssue>& issues, std::ostream& err) {
  nlohmann::ordered_json j = json_envelope("config-errors", 1, false);
  j["errors"] = nlohmann::ordered_json::array();
  for (const auto& i : issues) j["errors"].push_back({{"field", i.field}, {"message", i.message}});
  err << j.dump(2) << "\n";
}

void write_table(const Table& t, const std::string& format, bool timestamp, std::ostream& os) {
  if (format == "json")
    os << t.to_json(timestamp).dump(2) << "\n";
  else
    t.write_csv(os, timestamp);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo analysis of tempering chains on mean-field Potts models"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string dump;
  std::uint64_t seed = 0;
  int threads = 0;
  bool strict = false;
  bool no_timestamp = false;
  app.add_option("command", command, "verify | scan-gap | scan-conductance | compare-rgb | simulate | ladder-info")
      ->required()
      ->check(CLI::IsMember({"verify", "scan-gap", "scan-conductance", "compare-rgb", "simulate", "ladder-info"}));
  app.add_option("--config", config_path, "YAML experiment config");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "64-bit seed");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads for grid points")->check(CLI::PositiveNumber);
  app.add_flag("--strict", strict, "verify: exit nonzero when any item fails");
  app.add_flag("--no-timestamp", no_timestamp, "omit timestamp lines and zero wall-clock columns");
  app.add_option("--dump", dump, "write each built chain as sparse triplets to this path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  ExperimentConfig config;
  std::vector<ConfigIssue> issues;
  try {
    if (!config_path.empty()) config = load_config(config_path, &issues);
  } catch (const ConfigError& e) {
    print_config_errors(e.issues(), err);
    return kExitUsage;
  }
  if (!out_path.empty()) config.output.path = out_path;
  if (!format.empty()) config.output.format = format;
  if (!dump.empty()) config.chain.dump = dump;
  if (*seed_opt) config.seed = seed;
  if (*threads_opt) config.threads = threads;
  if (no_timestamp) config.output.timestamp = false;
  const auto invalid = validate_config(config, command);
  issues.insert(issues.end(), invalid.begin(), invalid.end());
  if (!issues.empty()) {
    print_config_errors(issues, err);
    return kExitUsage;
  }

  const RunFlags flags{config.output.timestamp};
  static const std::map<std::string, CommandOutput (*)(const ExperimentConfig&, const RunFlags&)> commands = {
      {"verify", cmd_verify},           {"scan-gap", cmd_scan_gap},     {"scan-conductance", cmd_scan_conductance},
      {"compare-rgb", cmd_compare_rgb}, {"simulate", cmd_simulate},     {"ladder-info", cmd_ladder_info}};
  CommandOutput result;
  try {
    result = commands.at(command)(config, flags);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIncomplete;
  }

  std::ofstream file;
  if (!config.output.path.empty()) {
    file.open(config.output.path);
    if (!file) {
      err << "error: cannot write '" << config.output.path << "'\n";
      return kExitIncomplete;
    }
  }
  std::ostream& os = config.output.path.empty() ? out : file;
  if (result.table) write_table(*result.table, config.output.format, flags.timestamp, os);
  if (result.json) os << result.json->dump(2) << "\n";
  for (const auto& [path, table] : result.side_tables) {
    std::ofstream side(path);
    if (!side) {
      err << "error: cannot write '" << path << "'\n";
      return kExitIncomplete;
    }
    table.write_csv(side, flags.timestamp);
  }
  if (!result.complete) return kExitIncomplete;
  if (strict && !result.checks_passed) return kExitIncomplete;
  return kExitOk;
}

}  // namespace temperlab::cli
