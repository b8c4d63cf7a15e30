// Copyright 2026 The dpsynth Authors
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
#include "dpsynth/csv_io.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpsynth/error.h"

namespace dpsynth {

bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get(ch);
      break;
    } else if (ch == '\n') {
      break;
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw DataError("unterminated quoted CSV field");
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

double parse_cell(const AttributeSpec& spec, std::string_view text) {
  if (text.empty()) {
    throw DataError("missing value for attribute '" + spec.name + "'");
  }
  double value = 0;
  if (spec.kind == AttributeKind::kCategorical) {
    auto code = spec.code_of(text);
    if (!code) {
      throw DataError("value '" + std::string(text) + "' is not in the domain of '" +
                      spec.name + "'");
    }
    return static_cast<double>(*code);
  }
  if (spec.kind == AttributeKind::kInteger) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw DataError("'" + std::string(text) + "' is not an integer (attribute '" +
                      spec.name + "')");
    }
    value = static_cast<double>(v);
    if (std::fabs(value) > kMaxExactInteger) {
      throw DataError("integer '" + std::string(text) + "' exceeds 2^53");
    }
  } else {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw DataError("'" + std::string(text) + "' is not a real number (attribute '" +
                      spec.name + "')");
    }
  }
  if (!spec.contains(value)) {
    throw DataError("value " + std::string(text) + " is outside the domain of '" +
                    spec.name + "'");
  }
  return value;
}

std::string format_cell(const AttributeSpec& spec, double value) {
  switch (spec.kind) {
    case AttributeKind::kCategorical:
      return spec.categories.at(static_cast<std::size_t>(value));
    case AttributeKind::kInteger:
      return std::to_string(static_cast<long long>(value));
    case AttributeKind::kReal: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
      return std::string(buf, ptr);
    }
  }
  return {};
}

ColumnTable load_table_csv(const TableSchema& schema, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing data file '" + path + "' for table '" + schema.name + "'");
  std::vector<std::string> header;
  if (!read_csv_record(in, header)) {
    throw DataError("'" + path + "' is empty; a header row is required");
  }
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  const std::size_t m = schema.attributes.size();
  if (header.size() != m) {
    throw DataError("'" + path + "': header has " + std::to_string(header.size()) +
                    " fields, schema declares " + std::to_string(m));
  }
  // file column -> schema attribute
  std::vector<std::size_t> order(m);
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    auto idx = schema.index_of(header[i]);
    if (!idx || seen[*idx]) {
      throw DataError("'" + path + "': unexpected or duplicate header field '" +
                      header[i] + "'");
    }
    seen[*idx] = true;
    order[i] = *idx;
  }
  std::vector<std::vector<double>> cols(m);
  std::vector<std::string> fields;
  std::size_t row = 0;
  while (read_csv_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != m) {
      throw DataError("'" + path + "' row " + std::to_string(row + 1) + ": expected " +
                      std::to_string(m) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < m; ++i) {
      try {
        cols[order[i]].push_back(parse_cell(schema.attributes[order[i]], fields[i]));
      } catch (const DataError& e) {
        throw DataError("'" + path + "' row " + std::to_string(row + 1) + ", column '" +
                        header[i] + "': " + e.what());
      }
    }
    ++row;
  }
  return ColumnTable(schema, std::move(cols), row);
}

void save_table_csv(const ColumnTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  const auto& attrs = table.schema().attributes;
  std::vector<std::string> fields;
  for (const auto& a : attrs) fields.push_back(a.name);
  write_csv_record(out, fields);
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < attrs.size(); ++c) {
      fields[c] = format_cell(attrs[c], table.at(r, c));
    }
    write_csv_record(out, fields);
  }
  if (!out) throw DataError("failed writing '" + path + "'");
}

Database load_database(const DatabaseSchema& schema, const std::string& csv_dir) {
  Database db;
  db.schema = schema;
  for (const auto& t : schema.tables) {
    auto path = (std::filesystem::path(csv_dir) / (t.name + ".csv")).string();
    db.tables.push_back(load_table_csv(t, path));
  }
  db.validate();
  return db;
}

Database load_database(const std::string& schema_file, const std::string& csv_dir) {
  return load_database(load_schema(schema_file), csv_dir);
}

void save_database(const Database& db, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : db.tables) {
    save_table_csv(t, (std::filesystem::path(dir) / (t.name() + ".csv")).string());
  }
}

}  // namespace dpsynth
