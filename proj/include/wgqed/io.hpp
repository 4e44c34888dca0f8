// Copyright 2025 The wgqed Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wgqed {

inline constexpr const char* kToolName = "wgqed";
inline constexpr const char* kToolVersion = "1.0.0";

using Cell = std::variant<double, std::int64_t, std::string>;

// Column-ordered table. CSV output starts with one "# " line holding the
// metadata as compact JSON, then a header row, then data rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// 17 significant digits; non-finite values print as nan / inf / -inf.
std::string format_double(double v);
std::string format_cell(const Cell& c);

void write_csv(std::ostream& os, const nlohmann::json& metadata, const Table& table);
// {"metadata": ..., "columns": [...], "rows": [[...], ...]}; NaN becomes null.
nlohmann::json table_to_json(const nlohmann::json& metadata, const Table& table);

struct CsvDocument {
  nlohmann::json metadata;  // null when the file has no metadata line
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws InvalidArgument if absent
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvDocument read_csv(std::istream& is);

// Writes text to a file, or to stdout for "-" or an empty path.
void write_text(const std::string& path, const std::string& text);

}  // namespace wgqed
