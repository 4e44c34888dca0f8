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

#include "wgqed/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wgqed/common.hpp"

namespace wgqed {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("table row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const nlohmann::json& metadata, const Table& table) {
  os << "# " << metadata.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

nlohmann::json table_to_json(const nlohmann::json& metadata, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c))
        r.push_back(std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr));
      else if (const auto* i = std::get_if<std::int64_t>(&c))
        r.push_back(*i);
      else
        r.push_back(std::get<std::string>(c));
    }
    rows.push_back(std::move(r));
  }
  return {{"metadata", metadata}, {"columns", table.columns}, {"rows", std::move(rows)}};
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t CsvDocument::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InvalidArgument("missing column: " + name);
}

std::vector<double> CsvDocument::numeric_column(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    try {
      out.push_back(std::stod(r.at(c)));
    } catch (const std::exception&) {
      throw InvalidArgument("non-numeric value in column " + name);
    }
  }
  return out;
}

CsvDocument read_csv(std::istream& is) {
  CsvDocument doc;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      if (!header && doc.metadata.is_null()) doc.metadata = nlohmann::json::parse(line.substr(2));
      continue;
    }
    auto fields = split_commas(line);
    if (!header) {
      doc.columns = std::move(fields);
      header = true;
      continue;
    }
    if (fields.size() != doc.columns.size()) throw InvalidArgument("CSV row width mismatch");
    doc.rows.push_back(std::move(fields));
  }
  if (!header) throw InvalidArgument("CSV has no header row");
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file: " + path);
  f << text;
  if (!f) throw NumericalError("failed writing output file: " + path);
}

}  // namespace wgqed
