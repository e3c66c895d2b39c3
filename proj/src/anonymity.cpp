// SPDX-License-Identifier: Apache-2.0

#include "sdc/anonymity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sdc/error.hpp"

namespace sdc {
namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<std::int32_t>& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto c : t) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace

std::size_t FrequencyProfile::covered_records() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

Partition PartitionView(const QidView& view) {
  Partition out;
  out.class_of.resize(view.size());
  std::unordered_map<std::vector<std::int32_t>, std::size_t, TupleHash> index;
  index.reserve(view.size());
  std::vector<std::int32_t> key(view.arity());
  for (std::size_t r = 0; r < view.size(); ++r) {
    auto t = view.tuple(r);
    if (view.has_missing(r))
      Fail(ErrorKind::kPrecondition,
           "record " + std::to_string(r) + " has a missing quasi-identifier cell");
    key.assign(t.begin(), t.end());
    auto [it, inserted] = index.try_emplace(key, out.profile.sizes.size());
    if (inserted) out.profile.sizes.push_back(0);
    ++out.profile.sizes[it->second];
    out.class_of[r] = it->second;
  }
  return out;
}

QidPartition PartitionComplete(const Microdata& data, const QuasiIdentifier& qid) {
  auto view = ProjectQid(data, qid);
  QidPartition out;
  for (std::size_t r = 0; r < view.size(); ++r) {
    if (view.has_missing(r))
      ++out.excluded;
    else
      out.rows.push_back(r);
  }
  if (out.excluded == 0) {
    out.partition = PartitionView(view);
  } else {
    out.partition = PartitionView(ProjectQid(data.SelectRows(out.rows), qid));
  }
  return out;
}

double Quantile(std::span<const std::size_t> sorted_sizes, double p) {
  if (sorted_sizes.empty()) Fail(ErrorKind::kPrecondition, "quantile of an empty profile");
  const double h = (static_cast<double>(sorted_sizes.size()) - 1.0) * p;  // 0-based rank
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted_sizes.size() - 1);
  const double frac = h - static_cast<double>(lo);
  const double a = static_cast<double>(sorted_sizes[lo]);
  const double b = static_cast<double>(sorted_sizes[hi]);
  return a + frac * (b - a);
}

QuartileSummary Summarize(const FrequencyProfile& profile) {
  if (profile.sizes.empty())
    Fail(ErrorKind::kPrecondition, "quartile summary of an empty profile");
  std::vector<std::size_t> sorted = profile.sizes;
  std::sort(sorted.begin(), sorted.end());
  QuartileSummary s;
  s.set_count = sorted.size();
  s.min = static_cast<double>(sorted.front());
  s.q1 = Quantile(sorted, 0.25);
  s.median = Quantile(sorted, 0.5);
  s.q3 = Quantile(sorted, 0.75);
  s.max = static_cast<double>(sorted.back());
  return s;
}

std::vector<ThresholdCount> ThresholdCounts(const FrequencyProfile& profile,
                                            std::span<const std::size_t> bounds) {
  if (!std::is_sorted(bounds.begin(), bounds.end()))
    Fail(ErrorKind::kUsage, "threshold bounds must be sorted ascending");
  std::vector<ThresholdCount> out;
  out.reserve(bounds.size());
  for (auto b : bounds) {
    std::size_t records = 0;
    for (auto f : profile.sizes)
      if (f <= b) records += f;
    out.push_back({b, records});
  }
  return out;
}

bool Compatible(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != b[j] && a[j] != kMissingCode && b[j] != kMissingCode) return false;
  return true;
}

std::size_t EffectiveSize(std::size_t row, const Microdata& data,
                          const QuasiIdentifier& qid) {
  auto view = ProjectQid(data, qid);
  if (row >= view.size()) Fail(ErrorKind::kUsage, "record index out of range");
  std::size_t n = 0;
  const auto self = view.tuple(row);
  for (std::size_t r = 0; r < view.size(); ++r) n += Compatible(self, view.tuple(r));
  return n;
}

std::vector<std::size_t> EffectiveSizes(const QidView& view) {
  // Group identical tuples (missing included as its own code), then compare
  // distinct tuples pairwise weighted by multiplicity.
  std::unordered_map<std::vector<std::int32_t>, std::size_t, TupleHash> index;
  std::vector<std::vector<std::int32_t>> distinct;
  std::vector<std::size_t> multiplicity;
  std::vector<std::size_t> group_of(view.size());
  std::vector<bool> group_has_missing;
  std::vector<std::int32_t> key(view.arity());
  for (std::size_t r = 0; r < view.size(); ++r) {
    auto t = view.tuple(r);
    key.assign(t.begin(), t.end());
    auto [it, inserted] = index.try_emplace(key, distinct.size());
    if (inserted) {
      distinct.push_back(key);
      multiplicity.push_back(0);
      group_has_missing.push_back(view.has_missing(r));
    }
    ++multiplicity[it->second];
    group_of[r] = it->second;
  }

  const std::size_t m = distinct.size();
  std::vector<std::size_t> group_size(multiplicity);
  std::vector<std::size_t> wildcard_groups;
  for (std::size_t g = 0; g < m; ++g)
    if (group_has_missing[g]) wildcard_groups.push_back(g);

  // A complete tuple is compatible with another complete tuple only when
  // equal, so only pairs involving a wildcard group need comparing.
  for (auto g : wildcard_groups) {
    for (std::size_t h = 0; h < m; ++h) {
      if (h == g) continue;
      if (group_has_missing[h] && h < g) continue;  // pair handled from h
      if (!Compatible(distinct[g], distinct[h])) continue;
      group_size[g] += multiplicity[h];
      group_size[h] += multiplicity[g];
    }
  }

  std::vector<std::size_t> out(view.size());
  for (std::size_t r = 0; r < view.size(); ++r) out[r] = group_size[group_of[r]];
  return out;
}

std::vector<std::size_t> EffectiveSizes(const Microdata& data,
                                        const QuasiIdentifier& qid) {
  return EffectiveSizes(ProjectQid(data, qid));
}

bool IsKAnonymous(const Microdata& data, const QuasiIdentifier& qid, std::size_t k) {
  if (k < 1) Fail(ErrorKind::kUsage, "k must be at least 1");
  for (auto e : EffectiveSizes(data, qid))
    if (e < k) return false;
  return true;
}

}  // namespace sdc
