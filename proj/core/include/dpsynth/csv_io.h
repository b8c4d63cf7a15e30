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
#ifndef DPSYNTH_CSV_IO_H_
#define DPSYNTH_CSV_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth {

// RFC-4180 record reader: quoted fields, doubled quotes, CRLF or LF endings.
// Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);

// Parses one cell against its attribute; throws DataError on missing values,
// unparsable text or a value outside the declared domain.
double parse_cell(const AttributeSpec& spec, std::string_view text);
// Inverse of parse_cell. Reals use the shortest round-tripping form.
std::string format_cell(const AttributeSpec& spec, double value);

// Reads <table>.csv. The header must name every attribute exactly once;
// column order in the file is free.
ColumnTable load_table_csv(const TableSchema& schema, const std::string& path);
void save_table_csv(const ColumnTable& table, const std::string& path);

// Loads one CSV per declared table from csv_dir and validates the result
// (domains, primary-key uniqueness, referential integrity).
Database load_database(const DatabaseSchema& schema, const std::string& csv_dir);
Database load_database(const std::string& schema_file, const std::string& csv_dir);

// Writes <table>.csv for every table into dir (created if needed).
void save_database(const Database& db, const std::string& dir);

}  // namespace dpsynth

#endif  // DPSYNTH_CSV_IO_H_
