// SPDX-License-Identifier: Apache-2.0

#include "sdc/microdata.hpp"

#include <chrono>
#include <unordered_set>

#include "json.hpp"
#include "sdc/error.hpp"

namespace sdc {

std::string_view ToString(VariableKind kind) {
  switch (kind) {
    case VariableKind::kCategorical:
      return "categorical";
    case VariableKind::kNumerical:
      return "numerical";
    case VariableKind::kString:
      return "string";
    case VariableKind::kDate:
      return "date";
  }
  return "categorical";
}

std::optional<VariableKind> ParseVariableKind(std::string_view token) {
  if (token == "categorical") return VariableKind::kCategorical;
  if (token == "numerical") return VariableKind::kNumerical;
  if (token == "string") return VariableKind::kString;
  if (token == "date") return VariableKind::kDate;
  return std::nullopt;
}

DatasetSchema::DatasetSchema(std::vector<VariableMeta> variables)
    : variables_(std::move(variables)) {
  if (variables_.empty()) Fail(ErrorKind::kData, "schema declares no variables");
  std::unordered_set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.name.empty()) Fail(ErrorKind::kData, "schema variable with empty name");
    if (!seen.insert(v.name).second)
      Fail(ErrorKind::kData, "duplicate variable name '" + v.name + "'");
  }
}

DatasetSchema DatasetSchema::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kData, std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variables") || !doc["variables"].is_array())
    Fail(ErrorKind::kData, "schema must be an object with a \"variables\" array");
  std::vector<VariableMeta> vars;
  for (const auto& entry : doc["variables"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string())
      Fail(ErrorKind::kData, "schema variable without a string \"name\"");
    VariableMeta meta;
    meta.name = entry["name"].get<std::string>();
    const std::string kind = entry.value("kind", std::string("categorical"));
    auto parsed = ParseVariableKind(kind);
    if (!parsed)
      Fail(ErrorKind::kData,
           "unknown kind '" + kind + "' for variable '" + meta.name + "'");
    meta.kind = *parsed;
    if (entry.contains("missing")) {
      if (!entry["missing"].is_string())
        Fail(ErrorKind::kData, "missing marker of '" + meta.name + "' must be a string");
      meta.missing_marker = entry["missing"].get<std::string>();
    }
    vars.push_back(std::move(meta));
  }
  return DatasetSchema(std::move(vars));
}

std::string DatasetSchema::ToJson() const {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : variables_) {
    vars.push_back({{"name", v.name},
                    {"kind", std::string(sdc::ToString(v.kind))},
                    {"missing", v.missing_marker}});
  }
  return nlohmann::json{{"variables", vars}}.dump(2) + "\n";
}

std::optional<std::size_t> DatasetSchema::Find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return i;
  return std::nullopt;
}

std::size_t DatasetSchema::IndexOf(std::string_view name) const {
  auto index = Find(name);
  if (!index) Fail(ErrorKind::kUsage, "unknown variable '" + std::string(name) + "'");
  return *index;
}

bool DatasetSchema::SameVariables(const DatasetSchema& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (variables_[i].name != other.variables_[i].name) return false;
  return true;
}

std::optional<std::string_view> Column::value(std::size_t row) const {
  const auto c = codes_[row];
  if (c == kMissingCode) return std::nullopt;
  return dictionary_[c];
}

std::size_t Column::missing_count() const {
  std::size_t n = 0;
  for (auto c : codes_) n += (c == kMissingCode);
  return n;
}

void ColumnBuilder::Append(const Cell& cell) {
  if (cell)
    AppendValue(*cell);
  else
    AppendMissing();
}

void ColumnBuilder::AppendValue(std::string_view value) {
  auto [it, inserted] = index_.try_emplace(
      std::string(value), static_cast<std::int32_t>(column_.dictionary_.size()));
  if (inserted) column_.dictionary_.emplace_back(value);
  column_.codes_.push_back(it->second);
}

Column ColumnBuilder::Finish() {
  index_.clear();
  return std::move(column_);
}

Microdata::Microdata(DatasetSchema schema,
                     std::vector<std::shared_ptr<const Column>> columns,
                     std::vector<RecordId> ids)
    : schema_(std::move(schema)), columns_(std::move(columns)), ids_(std::move(ids)) {
  if (columns_.size() != schema_.size())
    Fail(ErrorKind::kData, "column count does not match schema");
  for (const auto& c : columns_)
    if (!c || c->size() != ids_.size())
      Fail(ErrorKind::kData, "column length does not match record count");
}

Microdata Microdata::FromRows(DatasetSchema schema,
                              const std::vector<std::vector<Cell>>& rows) {
  std::vector<ColumnBuilder> builders(schema.size());
  for (auto& b : builders) b.Reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size())
      Fail(ErrorKind::kData, "row " + std::to_string(r + 1) + " has " +
                                 std::to_string(rows[r].size()) + " cells, expected " +
                                 std::to_string(schema.size()));
    for (std::size_t v = 0; v < schema.size(); ++v) builders[v].Append(rows[r][v]);
  }
  std::vector<std::shared_ptr<const Column>> columns;
  for (auto& b : builders) columns.push_back(std::make_shared<const Column>(b.Finish()));
  std::vector<RecordId> ids(rows.size());
  for (std::size_t r = 0; r < ids.size(); ++r) ids[r] = r;
  return Microdata(std::move(schema), std::move(columns), std::move(ids));
}

Cell Microdata::cell(std::size_t row, std::size_t var) const {
  auto v = columns_[var]->value(row);
  if (!v) return std::nullopt;
  return std::string(*v);
}

Microdata Microdata::WithColumn(std::size_t var, Column column) const {
  return WithColumn(var, std::move(column), schema_.at(var).kind);
}

Microdata Microdata::WithColumn(std::size_t var, Column column,
                                VariableKind kind) const {
  auto vars = schema_.variables();
  vars.at(var).kind = kind;
  auto columns = columns_;
  columns[var] = std::make_shared<const Column>(std::move(column));
  return Microdata(DatasetSchema(std::move(vars)), std::move(columns), ids_);
}

Microdata Microdata::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<std::shared_ptr<const Column>> columns;
  for (const auto& source : columns_) {
    ColumnBuilder b;
    b.Reserve(rows.size());
    for (auto r : rows) {
      auto v = source->value(r);
      if (v)
        b.AppendValue(*v);
      else
        b.AppendMissing();
    }
    columns.push_back(std::make_shared<const Column>(b.Finish()));
  }
  std::vector<RecordId> ids;
  ids.reserve(rows.size());
  for (auto r : rows) ids.push_back(ids_.at(r));
  return Microdata(schema_, std::move(columns), std::move(ids));
}

bool Microdata::ContentEquals(const Microdata& other) const {
  if (!schema_.SameVariables(other.schema_) || ids_ != other.ids_) return false;
  for (std::size_t v = 0; v < columns_.size(); ++v)
    for (std::size_t r = 0; r < ids_.size(); ++r)
      if (columns_[v]->value(r) != other.columns_[v]->value(r)) return false;
  return true;
}

QuasiIdentifier::QuasiIdentifier(std::vector<std::string> variables)
    : variables_(std::move(variables)) {
  if (variables_.empty()) Fail(ErrorKind::kUsage, "quasi-identifier is empty");
  std::unordered_set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.empty()) Fail(ErrorKind::kUsage, "quasi-identifier has an empty variable name");
    if (!seen.insert(v).second)
      Fail(ErrorKind::kUsage, "variable '" + v + "' repeated in quasi-identifier");
  }
}

QuasiIdentifier QuasiIdentifier::Parse(std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    auto end = text.find('+', start);
    names.emplace_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return QuasiIdentifier(std::move(names));
}

std::vector<QuasiIdentifier> QuasiIdentifier::ParseList(std::string_view text) {
  std::vector<QuasiIdentifier> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(',', start);
    out.push_back(Parse(text.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string QuasiIdentifier::ToString() const {
  std::string out;
  for (const auto& v : variables_) {
    if (!out.empty()) out += '+';
    out += v;
  }
  return out;
}

std::vector<std::size_t> QuasiIdentifier::Resolve(const DatasetSchema& schema) const {
  std::vector<std::size_t> out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) out.push_back(schema.IndexOf(v));
  return out;
}

QidView::QidView(std::vector<std::shared_ptr<const Column>> columns,
                 std::size_t rows)
    : columns_(std::move(columns)), rows_(rows) {
  codes_.resize(rows_ * columns_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < columns_.size(); ++j)
      codes_[r * columns_.size() + j] = columns_[j]->code(r);
}

bool QidView::has_missing(std::size_t row) const {
  for (auto c : tuple(row))
    if (c == kMissingCode) return true;
  return false;
}

Cell QidView::cell(std::size_t row, std::size_t position) const {
  auto v = columns_.at(position)->value(row);
  if (!v) return std::nullopt;
  return std::string(*v);
}

QidView ProjectQid(const Microdata& data, const QuasiIdentifier& qid) {
  std::vector<std::shared_ptr<const Column>> columns;
  for (auto index : qid.Resolve(data.schema())) columns.push_back(data.column_ptr(index));
  return QidView(std::move(columns), data.record_count());
}

namespace {

bool ParseIsoDate(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (s[i] < '0' || s[i] > '9') return false;
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
    return v;
  };
  const std::chrono::year_month_day ymd{std::chrono::year{num(0, 4)},
                                        std::chrono::month{static_cast<unsigned>(num(5, 2))},
                                        std::chrono::day{static_cast<unsigned>(num(8, 2))}};
  return ymd.ok();
}

}  // namespace

Microdata TruncateDateToYear(const Microdata& data, std::string_view variable) {
  const auto var = data.schema().IndexOf(variable);
  if (data.schema().at(var).kind != VariableKind::kDate)
    Fail(ErrorKind::kUsage, "variable '" + std::string(variable) + "' is not a date");
  const Column& source = data.column(var);
  ColumnBuilder b;
  b.Reserve(source.size());
  for (std::size_t r = 0; r < source.size(); ++r) {
    auto v = source.value(r);
    if (!v) {
      b.AppendMissing();
      continue;
    }
    if (!ParseIsoDate(*v))
      Fail(ErrorKind::kData, "row " + std::to_string(r + 1) + ": malformed date '" +
                                 std::string(*v) + "' in variable '" +
                                 std::string(variable) + "' (expected YYYY-MM-DD)");
    b.AppendValue(v->substr(0, 4));
  }
  return data.WithColumn(var, b.Finish(), VariableKind::kCategorical);
}

}  // namespace sdc
