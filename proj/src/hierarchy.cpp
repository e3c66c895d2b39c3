// SPDX-License-Identifier: Apache-2.0

#include "sdc/hierarchy.hpp"

#include <set>

#include "sdc/csv.hpp"
#include "sdc/error.hpp"

namespace sdc {

GeneralizationHierarchy::GeneralizationHierarchy(std::string variable,
                                                 std::vector<std::vector<std::string>> rows)
    : variable_(std::move(variable)), rows_(std::move(rows)) {
  if (rows_.empty())
    Fail(ErrorKind::kData, "hierarchy for '" + variable_ + "' has no values");
  const std::size_t width = rows_.front().size();
  if (width == 0) Fail(ErrorKind::kData, "hierarchy for '" + variable_ + "' has no levels");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != width)
      Fail(ErrorKind::kData, "hierarchy for '" + variable_ + "': value row " +
                                 std::to_string(i + 1) + " has " +
                                 std::to_string(rows_[i].size()) + " levels, expected " +
                                 std::to_string(width));
    if (!index_.emplace(rows_[i][0], i).second)
      Fail(ErrorKind::kData,
           "hierarchy for '" + variable_ + "' lists value '" + rows_[i][0] + "' twice");
  }
  // Consecutive levels must form a function image(j-1) -> image(j).
  for (std::size_t j = 2; j < width; ++j) {
    std::unordered_map<std::string, std::size_t> parent_of;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto [it, inserted] = parent_of.emplace(rows_[i][j - 1], i);
      if (!inserted && rows_[it->second][j] != rows_[i][j])
        Fail(ErrorKind::kData,
             "hierarchy for '" + variable_ + "' is not coarsening: '" + rows_[it->second][0] +
                 "' and '" + rows_[i][0] + "' merge at level " + std::to_string(j - 1) +
                 " but split at level " + std::to_string(j));
    }
  }
}

GeneralizationHierarchy GeneralizationHierarchy::FromCsv(std::string_view text,
                                                         std::string variable) {
  auto records = ParseCsv(text);
  if (records.empty())
    Fail(ErrorKind::kData, "hierarchy for '" + variable + "' has no header");
  const auto& header = records.front().fields;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] != "level" + std::to_string(j))
      Fail(ErrorKind::kData, "hierarchy for '" + variable + "': header column " +
                                 std::to_string(j) + " must be 'level" + std::to_string(j) +
                                 "', got '" + header[j] + "'");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != header.size())
      Fail(ErrorKind::kData, "hierarchy for '" + variable + "': row " + std::to_string(r) +
                                 " has " + std::to_string(records[r].fields.size()) +
                                 " cells, expected " + std::to_string(header.size()));
    rows.push_back(std::move(records[r].fields));
  }
  return GeneralizationHierarchy(std::move(variable), std::move(rows));
}

std::string GeneralizationHierarchy::ToCsv() const {
  std::string out;
  for (std::size_t j = 0; j <= height(); ++j) {
    if (j) out += ',';
    out += "level" + std::to_string(j);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += FormatCsvField(row[j]);
    }
    out += '\n';
  }
  return out;
}

const std::string* GeneralizationHierarchy::Image(std::string_view value,
                                                  std::size_t level) const {
  auto it = index_.find(std::string(value));
  if (it == index_.end() || level > height()) return nullptr;
  return &rows_[it->second][level];
}

std::size_t GeneralizationHierarchy::CategoryCount(std::size_t level) const {
  std::set<std::string_view> categories;
  for (const auto& row : rows_) categories.insert(row.at(level));
  return categories.size();
}

void GeneralizationHierarchy::CheckCovers(const Microdata& data) const {
  const auto var = data.schema().IndexOf(variable_);
  for (const auto& v : data.column(var).dictionary())
    if (!index_.contains(v))
      Fail(ErrorKind::kPrecondition,
           "hierarchy for '" + variable_ + "' does not cover observed value '" + v + "'");
}

}  // namespace sdc
