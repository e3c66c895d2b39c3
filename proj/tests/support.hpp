// SPDX-License-Identifier: Apache-2.0
//
// Fixtures, random datasets and brute-force oracles shared by the test
// binaries. The oracles work on decoded cells, never on column codes, so
// they do not share logic with the code under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "sdc/csv.hpp"
#include "sdc/error.hpp"
#include "sdc/datagen.hpp"
#include "sdc/hierarchy.hpp"
#include "sdc/microdata.hpp"

namespace sdctest {

using sdc::Cell;
using sdc::Microdata;
using sdc::QuasiIdentifier;

inline const Cell kMiss = std::nullopt;

template <typename Fn>
sdc::ErrorKind KindOf(Fn&& fn) {
  try {
    fn();
  } catch (const sdc::Error& e) {
    return e.kind();
  }
  FAIL("expected an sdc::Error");
  return sdc::ErrorKind::kUsage;
}

template <typename Fn>
std::string MessageOf(Fn&& fn) {
  try {
    fn();
  } catch (const sdc::Error& e) {
    return e.what();
  }
  return {};
}

inline std::string DataPath(const std::string& relative) {
  return std::string(SDC_DATA_DIR) + "/" + relative;
}

inline sdc::DatasetSchema CategoricalSchema(const std::vector<std::string>& names) {
  std::vector<sdc::VariableMeta> vars;
  for (const auto& n : names) vars.push_back({n, sdc::VariableKind::kCategorical, ""});
  return sdc::DatasetSchema(std::move(vars));
}

inline Microdata Table(const std::vector<std::string>& names,
                       const std::vector<std::vector<Cell>>& rows) {
  return Microdata::FromRows(CategoricalSchema(names), rows);
}

// One-variable table from plain tokens.
inline Microdata Column(const std::string& name, const std::vector<std::string>& values) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& v : values) rows.push_back({v});
  return Table({name}, rows);
}

// Rows built so that the qid "v" partitions into the given class sizes.
inline Microdata FromSizes(const std::vector<std::size_t>& sizes) {
  std::vector<std::string> values;
  for (std::size_t c = 0; c < sizes.size(); ++c)
    for (std::size_t i = 0; i < sizes[c]; ++i) values.push_back("c" + std::to_string(c));
  return Column("v", values);
}

inline const Microdata& Corpus() {
  static const Microdata data = [] {
    return sdc::Generate(sdc::GeneratorSpec::FromJson(sdc::ReadFile(DataPath("kw-synth-1000.json"))));
  }();
  return data;
}

struct RandomTable {
  Microdata data;
  QuasiIdentifier qid;
};

struct RandomOptions {
  std::size_t max_records = 200;
  std::size_t max_variables = 5;
  std::size_t max_domain = 6;
  double missing_rate = 0.0;
  std::size_t min_records = 1;
};

// Small domains so that classes of every size show up.
inline RandomTable MakeRandomTable(std::mt19937_64& rng, const RandomOptions& opt) {
  std::uniform_int_distribution<std::size_t> nrec(opt.min_records, opt.max_records);
  std::uniform_int_distribution<std::size_t> nvar(1, opt.max_variables);
  std::uniform_int_distribution<std::size_t> ndom(1, opt.max_domain);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = nrec(rng);
  const std::size_t q = nvar(rng);
  std::vector<std::string> names;
  std::vector<std::size_t> domains;
  for (std::size_t j = 0; j < q; ++j) {
    names.push_back("x" + std::to_string(j));
    domains.push_back(ndom(rng));
  }
  std::vector<std::vector<Cell>> rows(n);
  for (auto& row : rows) {
    for (std::size_t j = 0; j < q; ++j) {
      if (opt.missing_rate > 0 && coin(rng) < opt.missing_rate) {
        row.push_back(kMiss);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, domains[j] - 1);
        row.push_back("v" + std::to_string(pick(rng)));
      }
    }
  }
  return {Table(names, rows), QuasiIdentifier(names)};
}

inline std::vector<Cell> QidCells(const Microdata& data, const QuasiIdentifier& qid,
                                  std::size_t row) {
  std::vector<Cell> out;
  for (const auto& name : qid.variables())
    out.push_back(data.cell(row, data.schema().IndexOf(name)));
  return out;
}

// Pairwise-equality grouping, O(n^2). Class sizes in order of first
// appearance; records with a missing qid cell are skipped.
inline std::vector<std::size_t> OracleClassSizes(const Microdata& data,
                                                 const QuasiIdentifier& qid) {
  const std::size_t n = data.record_count();
  std::vector<std::vector<Cell>> tuples;
  for (std::size_t i = 0; i < n; ++i) tuples.push_back(QidCells(data, qid, i));
  auto complete = [&](std::size_t i) {
    return std::all_of(tuples[i].begin(), tuples[i].end(),
                       [](const Cell& c) { return c.has_value(); });
  };
  std::vector<bool> assigned(n, false);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i] || !complete(i)) continue;
    std::size_t size = 0;
    for (std::size_t j = i; j < n; ++j) {
      if (!assigned[j] && tuples[j] == tuples[i]) {
        assigned[j] = true;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

// Wildcard compatibility over every pair, O(n^2 q).
inline std::vector<std::size_t> OracleEffectiveSizes(const Microdata& data,
                                                     const QuasiIdentifier& qid) {
  const std::size_t n = data.record_count();
  std::vector<std::vector<Cell>> tuples;
  for (std::size_t i = 0; i < n; ++i) tuples.push_back(QidCells(data, qid, i));
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool ok = true;
      for (std::size_t v = 0; v < tuples[i].size() && ok; ++v) {
        const auto& a = tuples[i][v];
        const auto& b = tuples[j][v];
        ok = !a || !b || *a == *b;
      }
      if (ok) ++out[i];
    }
  }
  return out;
}

// Quantile by the textbook 1-based rank formula h = (n-1)p + 1.
inline double OracleQuantile(std::vector<std::size_t> sizes, double p) {
  std::sort(sizes.begin(), sizes.end());
  const double h = (static_cast<double>(sizes.size()) - 1.0) * p + 1.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo >= sizes.size()) return static_cast<double>(sizes.back());
  const double a = static_cast<double>(sizes[lo - 1]);
  const double b = static_cast<double>(sizes[lo]);
  return a + (h - static_cast<double>(lo)) * (b - a);
}

// Hand-evaluated (max - q3) / count.
inline double OracleSlope(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) return 0.0;
  const double mx = static_cast<double>(*std::max_element(sizes.begin(), sizes.end()));
  return (mx - OracleQuantile(sizes, 0.75)) / static_cast<double>(sizes.size());
}

inline double OracleXi(const Microdata& data, const QuasiIdentifier& qid) {
  const auto eff = OracleEffectiveSizes(data, qid);
  double sum = 0;
  for (auto e : eff) sum += 1.0 / static_cast<double>(e);
  return sum / static_cast<double>(eff.size());
}

// Per-variable count of cells missing in published but present in the
// original record with the same id.
inline std::map<std::string, std::size_t> OracleSuppressedCells(const Microdata& original,
                                                                const Microdata& published) {
  std::map<sdc::RecordId, std::size_t> row_of;
  for (std::size_t i = 0; i < original.record_count(); ++i) row_of[original.id(i)] = i;
  std::map<std::string, std::size_t> out;
  for (std::size_t v = 0; v < original.variable_count(); ++v)
    out[original.schema().at(v).name] = 0;
  for (std::size_t i = 0; i < published.record_count(); ++i) {
    const std::size_t o = row_of.at(published.id(i));
    for (std::size_t v = 0; v < original.variable_count(); ++v) {
      if (original.cell(o, v) && !published.cell(i, v)) ++out[original.schema().at(v).name];
    }
  }
  return out;
}

inline std::size_t OracleUnsafe(const Microdata& data, const QuasiIdentifier& qid,
                                std::size_t k) {
  const auto eff = OracleEffectiveSizes(data, qid);
  return static_cast<std::size_t>(
      std::count_if(eff.begin(), eff.end(), [k](std::size_t e) { return e < k; }));
}

// Random hierarchy over the values v0..v{d-1} of one variable: each level
// merges groups of the previous level.
inline sdc::GeneralizationHierarchy RandomHierarchy(std::mt19937_64& rng, const std::string& var,
                                                    std::size_t domain, std::size_t height) {
  std::vector<std::vector<std::string>> rows(domain);
  std::vector<std::size_t> group(domain);
  for (std::size_t i = 0; i < domain; ++i) {
    rows[i].push_back("v" + std::to_string(i));
    group[i] = i;
  }
  for (std::size_t level = 1; level <= height; ++level) {
    std::size_t groups = *std::max_element(group.begin(), group.end()) + 1;
    std::size_t target = std::max<std::size_t>(1, groups / 2 + (rng() % 2));
    std::vector<std::size_t> remap(groups);
    for (auto& g : remap) g = rng() % target;
    for (std::size_t i = 0; i < domain; ++i) {
      group[i] = remap[group[i]];
      rows[i].push_back("L" + std::to_string(level) + "g" + std::to_string(group[i]));
    }
    // Compact group ids for the next level.
    std::vector<std::size_t> ids;
    for (auto g : group) ids.push_back(g);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto& g : group)
      g = static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), g) - ids.begin());
  }
  return sdc::GeneralizationHierarchy(var, rows);
}

}  // namespace sdctest
