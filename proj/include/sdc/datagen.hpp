// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/microdata.hpp"

namespace sdc {

struct WeightedValue {
  std::string value;
  double weight = 1.0;
};

// One generated variable. Exactly one source is used:
//   values    - weighted draw from a pool
//   years     - uniform calendar day in [first, last] as YYYY-MM-DD
//   year_of   - the year of an earlier date variable (no draw)
struct GeneratedVariable {
  VariableMeta meta;
  std::vector<WeightedValue> values;
  int first_year = 0;
  int last_year = 0;
  std::string year_of;
};

struct GeneratorSpec {
  std::string name;
  std::size_t record_count = 0;
  std::uint64_t seed = 0;
  std::vector<GeneratedVariable> variables;

  static GeneratorSpec FromJson(std::string_view text);
  DatasetSchema Schema() const;
};

// Draw source: std::mt19937_64 seeded with GeneratorSpec::seed. Each draw takes
// one 64-bit output x and uses u = (x >> 11) * 2^-53 in [0, 1). A weighted
// draw picks the first value whose cumulative weight exceeds u * total; a
// date draw picks day floor(u * days_in_range). Variables are drawn in
// declaration order, record by record.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double Next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

Microdata Generate(const GeneratorSpec& spec);

}  // namespace sdc
