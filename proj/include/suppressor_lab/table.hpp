/*
 * Copyright 2026 The suppressor-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "suppressor_lab/dataset.hpp"

namespace suppressor_lab {

/// One tidy long-format table: fixed column order, one observation per row.
/// Cells are doubles, strings, or empty.
struct Table {
  using Cell = std::variant<std::monostate, double, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::vector<Cell>& add_row() {
    rows.emplace_back(columns.size());
    return rows.back();
  }
};

namespace detail {

// RFC-4180 quoting: quote only when the field contains a comma, quote or
// newline; double embedded quotes.
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string cell_text(const Table::Cell& c) {
  if (std::holds_alternative<double>(c)) {
    return format_double(std::get<double>(c));
  }
  if (std::holds_alternative<std::string>(c)) {
    return csv_escape(std::get<std::string>(c));
  }
  return {};
}

}  // namespace detail

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << detail::csv_escape(t.columns[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << detail::cell_text(row[i]);
    }
    os << '\n';
  }
}

inline std::string to_csv_string(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace suppressor_lab
