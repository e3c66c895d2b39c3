// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdc/microdata.hpp"

namespace sdc {

// Multiset of anonymity-set sizes, one entry per equivalence class in order
// of first appearance.
struct FrequencyProfile {
  std::vector<std::size_t> sizes;

  std::size_t class_count() const { return sizes.size(); }
  std::size_t covered_records() const;
};

struct Partition {
  FrequencyProfile profile;
  // Class index of every record of the view.
  std::vector<std::size_t> class_of;
};

// Groups equal tuples. Throws when a tuple contains a missing cell.
Partition PartitionView(const QidView& view);

// Partition over the records whose qid cells are all present.
struct QidPartition {
  Partition partition;
  std::vector<std::size_t> rows;  // row index of each partitioned record
  std::size_t excluded = 0;       // records with a missing qid cell
};

QidPartition PartitionComplete(const Microdata& data, const QuasiIdentifier& qid);

struct QuartileSummary {
  std::size_t set_count = 0;
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;

  bool operator==(const QuartileSummary&) const = default;
};

// p-quantile at fractional rank (n-1)p+1 of the ascending sizes, linearly
// interpolated between neighbouring ranks.
double Quantile(std::span<const std::size_t> sorted_sizes, double p);
QuartileSummary Summarize(const FrequencyProfile& profile);

struct ThresholdCount {
  std::size_t bound = 0;
  std::size_t records = 0;

  bool operator==(const ThresholdCount&) const = default;
};

inline constexpr std::size_t kDefaultBounds[] = {1, 5, 10, 50};

// Records lying in anonymity sets of size <= bound, per ascending bound.
std::vector<ThresholdCount> ThresholdCounts(const FrequencyProfile& profile,
                                            std::span<const std::size_t> bounds);

// Number of records compatible with the given record on the qid, where a
// missing cell matches any value. Includes the record itself.
std::size_t EffectiveSize(std::size_t row, const Microdata& data,
                          const QuasiIdentifier& qid);
std::vector<std::size_t> EffectiveSizes(const QidView& view);
std::vector<std::size_t> EffectiveSizes(const Microdata& data,
                                        const QuasiIdentifier& qid);

bool Compatible(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

bool IsKAnonymous(const Microdata& data, const QuasiIdentifier& qid, std::size_t k);

}  // namespace sdc
