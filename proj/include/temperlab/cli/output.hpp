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

#ifndef TEMPERLAB_CLI_OUTPUT_HPP
#define TEMPERLAB_CLI_OUTPUT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace temperlab::cli {

/// A cell is empty, text, an integer, or a real printed with 17 significant digits.
using Cell = std::variant<std::monostate, std::string, long long, double>;

std::string format_double(double v);

/// Rows written in insertion order under a versioned schema name.
class Table {
 public:
  Table(std::string schema, int version, std::vector<std::string> columns);

  /// Starts a row; cells not set stay empty.
  void add_row();
  void set(const std::string& column, Cell value);

  const std::string& schema() const { return schema_; }
  int version() const { return version_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// CSV: "# schema: <name>/<version>", an optional "# generated: <UTC>" line,
  /// the header, then rows. Numbers use the '.' decimal regardless of locale.
  void write_csv(std::ostream& out, bool timestamp) const;
  nlohmann::ordered_json to_json(bool timestamp) const;

 private:
  std::string schema_;
  int version_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string utc_timestamp();

/// JSON envelope shared by every report.
nlohmann::ordered_json json_envelope(const std::string& schema, int version, bool timestamp);

}  // namespace temperlab::cli

#endif  // TEMPERLAB_CLI_OUTPUT_HPP
