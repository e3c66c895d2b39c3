// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdc/anonymity.hpp"
#include "sdc/microdata.hpp"

namespace sdc {

// (max - q3) / set_count: growth of set size across the top quartile.
double QuartileSlope(const QuartileSummary& summary);

// Ratio of published to original quartile slope. Throws kUndefined when
// the original slope is zero.
double InformationLoss(const QuartileSummary& original, const QuartileSummary& published);

// Loss on one qid between two datasets. Both summaries are taken over the
// records whose qid cells are all present; the excluded counts are kept.
struct QidLoss {
  QuasiIdentifier qid;
  std::optional<double> lambda;  // nullopt when undefined
  std::size_t original_excluded = 0;
  std::size_t published_excluded = 0;
};

QidLoss LossForQid(const Microdata& original, const Microdata& published,
                   const QuasiIdentifier& qid);

struct HierarchyLevel {
  std::size_t level = 0;
  std::size_t height = 0;
};

// Unweighted mean of level / height over the qid variables. Variables of
// height zero contribute zero.
double PrecLoss(std::span<const HierarchyLevel> levels);

struct SuppressionAccounting {
  // Per variable in schema order.
  std::vector<std::pair<std::string, std::size_t>> suppressed_cells;
  std::size_t deleted_records = 0;

  std::size_t total_suppressed() const;
  bool operator==(const SuppressionAccounting&) const = default;
};

// Records are aligned by their stable identifiers.
SuppressionAccounting AccountSuppression(const Microdata& original,
                                         const Microdata& published);

struct LossReport {
  std::vector<QidLoss> lambda;
  double prec_loss = 0;
  SuppressionAccounting accounting;
};

}  // namespace sdc
