// SPDX-License-Identifier: Apache-2.0

#include "sdc/risk.hpp"

#include <algorithm>
#include <string>

#include "sdc/anonymity.hpp"
#include "sdc/error.hpp"

namespace sdc {

RiskProfile RisksFromSizes(std::span<const std::size_t> effective_sizes) {
  RiskProfile out;
  out.per_record.reserve(effective_sizes.size());
  for (auto e : effective_sizes) {
    const double r = 1.0 / static_cast<double>(e);
    out.per_record.push_back(r);
    out.max_risk = std::max(out.max_risk, r);
  }
  return out;
}

RiskProfile RecordRisks(const Microdata& data, const QuasiIdentifier& qid) {
  if (data.record_count() == 0) Fail(ErrorKind::kPrecondition, "risk of an empty dataset");
  return RisksFromSizes(EffectiveSizes(data, qid));
}

double GlobalRisk(const RiskProfile& profile) {
  if (profile.per_record.empty())
    Fail(ErrorKind::kPrecondition, "risk of an empty dataset");
  double sum = 0;
  for (auto r : profile.per_record) sum += r;
  return sum / static_cast<double>(profile.per_record.size());
}

double GlobalRisk(const Microdata& data, const QuasiIdentifier& qid) {
  if (data.record_count() == 0) Fail(ErrorKind::kPrecondition, "risk of an empty dataset");
  const auto sizes = EffectiveSizes(data, qid);
  // Grouping by size keeps the sum exact for complete classes: the records
  // of c classes of size e contribute (c * e) / e = c.
  std::vector<std::size_t> by_size(data.record_count() + 1, 0);
  for (auto e : sizes) ++by_size[e];
  double sum = 0;
  for (std::size_t e = 1; e < by_size.size(); ++e)
    if (by_size[e] != 0) sum += static_cast<double>(by_size[e]) / static_cast<double>(e);
  return sum / static_cast<double>(data.record_count());
}

void CheckThreshold(double r_star) {
  if (!(r_star > 0.0 && r_star <= 1.0))
    Fail(ErrorKind::kUsage, "risk threshold must lie in (0, 1], got " + std::to_string(r_star));
}

bool IsUnsafe(std::size_t effective_size, double r_star) {
  return 1.0 / static_cast<double>(effective_size) > r_star;
}

std::vector<std::size_t> UnsafeRecords(const Microdata& data,
                                       const QuasiIdentifier& qid, double r_star) {
  CheckThreshold(r_star);
  std::vector<std::size_t> out;
  const auto sizes = EffectiveSizes(data, qid);
  for (std::size_t r = 0; r < sizes.size(); ++r)
    if (IsUnsafe(sizes[r], r_star)) out.push_back(r);
  return out;
}

std::size_t CountUnsafe(std::span<const std::size_t> effective_sizes, double r_star) {
  std::size_t n = 0;
  for (auto e : effective_sizes) n += IsUnsafe(e, r_star);
  return n;
}

RiskSummary Summarize(const Microdata& data, const QuasiIdentifier& qid, double r_star) {
  CheckThreshold(r_star);
  RiskSummary s;
  s.threshold = r_star;
  s.xi = GlobalRisk(data, qid);
  s.unsafe_count = CountUnsafe(EffectiveSizes(data, qid), r_star);
  return s;
}

double ThresholdForK(std::size_t k) {
  if (k < 1) Fail(ErrorKind::kUsage, "k must be at least 1");
  return 1.0 / static_cast<double>(k);
}

std::vector<double> DefaultBinEdges() {
  std::vector<double> edges;
  for (int i = 0; i <= 10; ++i) edges.push_back(i / 10.0);
  return edges;
}

std::vector<std::size_t> RiskHistogram(const RiskProfile& profile,
                                       std::span<const double> bin_edges) {
  if (bin_edges.size() < 2) Fail(ErrorKind::kUsage, "histogram needs at least two edges");
  for (std::size_t i = 1; i < bin_edges.size(); ++i)
    if (!(bin_edges[i] > bin_edges[i - 1]))
      Fail(ErrorKind::kUsage, "histogram edges must be strictly ascending");
  std::vector<std::size_t> counts(bin_edges.size() - 1, 0);
  for (auto r : profile.per_record) {
    // First edge >= r closes the bin (lower-exclusive, upper-inclusive).
    auto it = std::lower_bound(bin_edges.begin(), bin_edges.end(), r);
    if (it == bin_edges.begin() || it == bin_edges.end())
      Fail(ErrorKind::kUsage, "risk " + std::to_string(r) + " outside histogram range");
    ++counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1];
  }
  return counts;
}

}  // namespace sdc
