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

#include "temperlab/cli/output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <locale>
#include <sstream>

#include "temperlab/error.hpp"

namespace temperlab::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return csv_escape(std::get<std::string>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return "";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (std::isfinite(v)) return v;
    return format_double(v);  // JSON has no inf or nan
  }
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Table::Table(std::string schema, int version, std::vector<std::string> columns)
    : schema_(std::move(schema)), version_(version), columns_(std::move(columns)) {}

void Table::add_row() { rows_.emplace_back(columns_.size()); }

void Table::set(const std::string& column, Cell value) {
  require(!rows_.empty(), ErrorCode::kInvalidArgument, "no row to set");
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  require(it != columns_.end(), ErrorCode::kInvalidArgument, "unknown column '" + column + "'");
  rows_.back()[static_cast<std::size_t>(it - columns_.begin())] = std::move(value);
}

void Table::write_csv(std::ostream& out, bool timestamp) const {
  out << "# schema: " << schema_ << "/" << version_ << "\n";
  if (timestamp) out << "# generated: " << utc_timestamp() << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
}

nlohmann::ordered_json json_envelope(const std::string& schema, int version, bool timestamp) {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["schema_version"] = version;
  if (timestamp) j["generated"] = utc_timestamp();
  return j;
}

nlohmann::ordered_json Table::to_json(bool timestamp) const {
  nlohmann::ordered_json j = json_envelope(schema_, version_, timestamp);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = cell_json(row[i]);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

}  // namespace temperlab::cli
