// SPDX-License-Identifier: Apache-2.0

#include "sdc/csv.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include "sdc/error.hpp"

namespace sdc {

std::vector<CsvRecord> ParseCsv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;  // any character (or quote) seen in the record
  std::size_t quote_line = 0;

  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(current));
    current = CsvRecord{};
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          Fail(ErrorKind::kData, "line " + std::to_string(line) +
                                     ": quote inside unquoted field");
        in_quotes = true;
        quote_line = line;
        field_started = true;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field += c;
        break;
      case '\n':
        end_record();
        ++line;
        current.line = line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes)
    Fail(ErrorKind::kData,
         "line " + std::to_string(quote_line) + ": unterminated quoted field");
  if (field_started || !field.empty()) end_record();
  return records;
}

std::string FormatCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Microdata LoadTable(std::string_view csv, const DatasetSchema& schema) {
  auto records = ParseCsv(csv);
  if (records.empty()) Fail(ErrorKind::kData, "data file has no header row");

  const auto& header = records.front().fields;
  std::vector<std::size_t> var_of_column(header.size());
  std::optional<std::size_t> id_column;
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!seen.insert(header[c]).second)
      Fail(ErrorKind::kData, "header repeats column '" + header[c] + "'");
    if (header[c] == kRecordIdColumn) {
      id_column = c;
      continue;
    }
    auto var = schema.Find(header[c]);
    if (!var)
      Fail(ErrorKind::kData, "header column '" + header[c] + "' is not in the schema");
    var_of_column[c] = *var;
  }
  const std::size_t expected = schema.size() + (id_column ? 1 : 0);
  if (header.size() != expected)
    for (const auto& v : schema.variables())
      if (!seen.contains(v.name))
        Fail(ErrorKind::kData, "header lacks schema variable '" + v.name + "'");

  const std::size_t rows = records.size() - 1;
  std::vector<ColumnBuilder> builders(schema.size());
  for (auto& b : builders) b.Reserve(rows);
  std::vector<RecordId> ids;
  ids.reserve(rows);
  std::unordered_set<RecordId> seen_ids;

  for (std::size_t r = 0; r < rows; ++r) {
    const auto& fields = records[r + 1].fields;
    const std::string where = "row " + std::to_string(r + 1);
    if (fields.size() != expected)
      Fail(ErrorKind::kData, where + " has " + std::to_string(fields.size()) +
                                 " cells, expected " + std::to_string(expected));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (id_column && c == *id_column) {
        RecordId id = 0;
        const auto& f = fields[c];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
        if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
          Fail(ErrorKind::kData, where + ": invalid record id '" + f + "'");
        if (!seen_ids.insert(id).second)
          Fail(ErrorKind::kData, where + ": duplicate record id " + f);
        ids.push_back(id);
        continue;
      }
      const auto var = var_of_column[c];
      if (fields[c] == schema.at(var).missing_marker)
        builders[var].AppendMissing();
      else
        builders[var].AppendValue(fields[c]);
    }
    if (!id_column) ids.push_back(r);
  }

  std::vector<std::shared_ptr<const Column>> columns;
  for (auto& b : builders) columns.push_back(std::make_shared<const Column>(b.Finish()));
  return Microdata(schema, std::move(columns), std::move(ids));
}

std::string WriteCsv(const Microdata& data, CsvWriteOptions options) {
  std::string out;
  const auto& vars = data.schema().variables();
  bool first = true;
  auto sep = [&] {
    if (!first) out += ',';
    first = false;
  };
  if (options.record_ids) {
    sep();
    out += kRecordIdColumn;
  }
  for (const auto& v : vars) {
    sep();
    out += FormatCsvField(v.name);
  }
  out += '\n';
  for (std::size_t r = 0; r < data.record_count(); ++r) {
    first = true;
    if (options.record_ids) {
      sep();
      out += std::to_string(data.id(r));
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      sep();
      auto value = data.column(v).value(r);
      out += FormatCsvField(value ? *value : std::string_view(vars[v].missing_marker));
    }
    out += '\n';
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kData, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kData, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) Fail(ErrorKind::kData, "failed writing '" + path + "'");
}

}  // namespace sdc
