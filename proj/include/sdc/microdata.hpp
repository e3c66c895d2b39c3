// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sdc {

enum class VariableKind { kCategorical, kNumerical, kString, kDate };

std::string_view ToString(VariableKind kind);
std::optional<VariableKind> ParseVariableKind(std::string_view token);

struct VariableMeta {
  std::string name;
  VariableKind kind = VariableKind::kCategorical;
  // Token that denotes a missing cell in delimited input and output.
  std::string missing_marker;

  bool operator==(const VariableMeta&) const = default;
};

// Ordered, non-empty list of uniquely named variables.
class DatasetSchema {
 public:
  explicit DatasetSchema(std::vector<VariableMeta> variables);

  // {"variables":[{"name":..,"kind":..,"missing":..}, ...]}
  static DatasetSchema FromJson(std::string_view text);
  std::string ToJson() const;

  const std::vector<VariableMeta>& variables() const { return variables_; }
  const VariableMeta& at(std::size_t index) const { return variables_.at(index); }
  std::size_t size() const { return variables_.size(); }

  std::optional<std::size_t> Find(std::string_view name) const;
  // Throws a usage error naming the variable when it is not declared.
  std::size_t IndexOf(std::string_view name) const;

  // Same variable names in the same order; kinds and markers may differ.
  bool SameVariables(const DatasetSchema& other) const;

  bool operator==(const DatasetSchema&) const = default;

 private:
  std::vector<VariableMeta> variables_;
};

using Cell = std::optional<std::string>;
using RecordId = std::uint64_t;

inline constexpr std::int32_t kMissingCode = -1;

// Dictionary-encoded column. Codes index into the dictionary of distinct
// values; kMissingCode marks a missing cell. Two cells of one column hold
// equal values iff their codes are equal.
class Column {
 public:
  Column() = default;

  std::size_t size() const { return codes_.size(); }
  std::int32_t code(std::size_t row) const { return codes_[row]; }
  std::span<const std::int32_t> codes() const { return codes_; }
  bool is_missing(std::size_t row) const { return codes_[row] == kMissingCode; }
  std::optional<std::string_view> value(std::size_t row) const;
  const std::string& value_of(std::int32_t code) const { return dictionary_[code]; }
  const std::vector<std::string>& dictionary() const { return dictionary_; }
  std::size_t missing_count() const;

 private:
  friend class ColumnBuilder;
  std::vector<std::string> dictionary_;
  std::vector<std::int32_t> codes_;
};

class ColumnBuilder {
 public:
  void Reserve(std::size_t rows) { column_.codes_.reserve(rows); }
  void Append(const Cell& cell);
  void AppendValue(std::string_view value);
  void AppendMissing() { column_.codes_.push_back(kMissingCode); }
  Column Finish();

 private:
  Column column_;
  std::unordered_map<std::string, std::int32_t> index_;
};

// Immutable table of records. Columns are shared between derived tables,
// so operators that touch one variable copy only that column. Every record
// carries a stable identifier assigned at load and kept by all operators.
class Microdata {
 public:
  Microdata(DatasetSchema schema,
            std::vector<std::shared_ptr<const Column>> columns,
            std::vector<RecordId> ids);

  // Record identifiers 0..n-1 in row order.
  static Microdata FromRows(DatasetSchema schema,
                            const std::vector<std::vector<Cell>>& rows);

  const DatasetSchema& schema() const { return schema_; }
  std::size_t record_count() const { return ids_.size(); }
  std::size_t variable_count() const { return columns_.size(); }
  const Column& column(std::size_t var) const { return *columns_[var]; }
  const std::shared_ptr<const Column>& column_ptr(std::size_t var) const {
    return columns_[var];
  }
  RecordId id(std::size_t row) const { return ids_[row]; }
  std::span<const RecordId> ids() const { return ids_; }
  Cell cell(std::size_t row, std::size_t var) const;

  Microdata WithColumn(std::size_t var, Column column) const;
  Microdata WithColumn(std::size_t var, Column column, VariableKind kind) const;
  // Keeps the listed rows (ascending row indices) in order.
  Microdata SelectRows(std::span<const std::size_t> rows) const;

  // Cell-by-cell equality including record identifiers.
  bool ContentEquals(const Microdata& other) const;

 private:
  DatasetSchema schema_;
  std::vector<std::shared_ptr<const Column>> columns_;
  std::vector<RecordId> ids_;
};

// Ordered, duplicate-free, non-empty list of variable names.
class QuasiIdentifier {
 public:
  explicit QuasiIdentifier(std::vector<std::string> variables);

  // "zc+gender+yob"
  static QuasiIdentifier Parse(std::string_view text);
  // "zc+gender,gender+pob"
  static std::vector<QuasiIdentifier> ParseList(std::string_view text);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t size() const { return variables_.size(); }
  std::string ToString() const;
  std::vector<std::size_t> Resolve(const DatasetSchema& schema) const;

  bool operator==(const QuasiIdentifier&) const = default;

 private:
  std::vector<std::string> variables_;
};

// Per-record tuples restricted to the quasi-identifier columns, stored as
// dictionary codes in row-major order.
class QidView {
 public:
  QidView(std::vector<std::shared_ptr<const Column>> columns,
          std::size_t rows);

  std::size_t size() const { return rows_; }
  std::size_t arity() const { return columns_.size(); }
  std::span<const std::int32_t> tuple(std::size_t row) const {
    return {codes_.data() + row * arity(), arity()};
  }
  bool has_missing(std::size_t row) const;
  Cell cell(std::size_t row, std::size_t position) const;

 private:
  std::vector<std::shared_ptr<const Column>> columns_;
  std::size_t rows_;
  std::vector<std::int32_t> codes_;
};

QidView ProjectQid(const Microdata& data, const QuasiIdentifier& qid);

// Replaces ISO YYYY-MM-DD values of a date variable by their year; the
// variable becomes categorical.
Microdata TruncateDateToYear(const Microdata& data, std::string_view variable);

}  // namespace sdc
