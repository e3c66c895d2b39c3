// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdc/microdata.hpp"

namespace sdc {

// Leveled coarsening of one variable's domain. Level 0 is the identity;
// values merged at some level stay merged at every higher level.
class GeneralizationHierarchy {
 public:
  // rows[i] = {value, image at level 1, ..., image at level H}.
  GeneralizationHierarchy(std::string variable,
                          std::vector<std::vector<std::string>> rows);

  // CSV with header "level0,level1,...", one row per level-0 value.
  static GeneralizationHierarchy FromCsv(std::string_view text, std::string variable);
  std::string ToCsv() const;

  const std::string& variable() const { return variable_; }
  std::size_t height() const { return rows_.empty() ? 0 : rows_.front().size() - 1; }
  std::size_t domain_size() const { return rows_.size(); }
  const std::string& value(std::size_t i) const { return rows_[i][0]; }

  // nullptr when the value is not in the domain.
  const std::string* Image(std::string_view value, std::size_t level) const;
  std::size_t CategoryCount(std::size_t level) const;

  // Throws when an observed value of the variable is not covered.
  void CheckCovers(const Microdata& data) const;

 private:
  std::string variable_;
  std::vector<std::vector<std::string>> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace sdc
