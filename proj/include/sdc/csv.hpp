// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/microdata.hpp"

namespace sdc {

// RFC 4180 record: fields after unquoting, plus the 1-based line on which
// the record starts.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// Accepts LF or CRLF line ends and a leading UTF-8 byte order mark.
std::vector<CsvRecord> ParseCsv(std::string_view text);

// Quotes the field when it contains a comma, quote, CR or LF.
std::string FormatCsvField(std::string_view field);

// Optional leading header column carrying stable record identifiers, so a
// published file can be aligned with its original after record deletion.
inline constexpr std::string_view kRecordIdColumn = "_rid";

struct CsvWriteOptions {
  bool record_ids = false;
};

// Header names must match the schema (any order, plus an optional
// kRecordIdColumn). Cells equal to a variable's missing marker load as
// missing. Errors cite the 1-based data row.
Microdata LoadTable(std::string_view csv, const DatasetSchema& schema);

// Columns in schema order, LF line ends, missing cells written as the
// variable's marker.
std::string WriteCsv(const Microdata& data, CsvWriteOptions options = {});

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace sdc
