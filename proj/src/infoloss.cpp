// SPDX-License-Identifier: Apache-2.0

#include "sdc/infoloss.hpp"

#include <numeric>
#include <unordered_map>

#include "sdc/error.hpp"

namespace sdc {

double QuartileSlope(const QuartileSummary& summary) {
  if (summary.set_count == 0) Fail(ErrorKind::kPrecondition, "slope of an empty summary");
  return (summary.max - summary.q3) / static_cast<double>(summary.set_count);
}

double InformationLoss(const QuartileSummary& original, const QuartileSummary& published) {
  const double base = QuartileSlope(original);
  if (base == 0.0)
    Fail(ErrorKind::kUndefined,
         "information loss undefined: original max equals third quartile");
  return QuartileSlope(published) / base;
}

QidLoss LossForQid(const Microdata& original, const Microdata& published,
                   const QuasiIdentifier& qid) {
  QidLoss out{qid, std::nullopt, 0, 0};
  const auto before = PartitionComplete(original, qid);
  const auto after = PartitionComplete(published, qid);
  out.original_excluded = before.excluded;
  out.published_excluded = after.excluded;
  if (before.partition.profile.sizes.empty() || after.partition.profile.sizes.empty())
    return out;
  try {
    out.lambda = InformationLoss(Summarize(before.partition.profile),
                                 Summarize(after.partition.profile));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndefined) throw;
  }
  return out;
}

double PrecLoss(std::span<const HierarchyLevel> levels) {
  if (levels.empty()) return 0.0;
  double sum = 0;
  for (const auto& l : levels) {
    if (l.level > l.height)
      Fail(ErrorKind::kUsage, "applied level " + std::to_string(l.level) +
                                  " exceeds hierarchy height " + std::to_string(l.height));
    if (l.height > 0) sum += static_cast<double>(l.level) / static_cast<double>(l.height);
  }
  return sum / static_cast<double>(levels.size());
}

std::size_t SuppressionAccounting::total_suppressed() const {
  std::size_t n = 0;
  for (const auto& [name, count] : suppressed_cells) n += count;
  return n;
}

SuppressionAccounting AccountSuppression(const Microdata& original,
                                         const Microdata& published) {
  if (!original.schema().SameVariables(published.schema()))
    Fail(ErrorKind::kData, "published dataset does not share the original's variables");
  std::unordered_map<RecordId, std::size_t> row_of;
  row_of.reserve(original.record_count());
  for (std::size_t r = 0; r < original.record_count(); ++r) row_of.emplace(original.id(r), r);

  SuppressionAccounting out;
  const auto& vars = original.schema().variables();
  for (const auto& v : vars) out.suppressed_cells.emplace_back(v.name, 0);
  for (std::size_t p = 0; p < published.record_count(); ++p) {
    auto it = row_of.find(published.id(p));
    if (it == row_of.end())
      Fail(ErrorKind::kData, "published record id " + std::to_string(published.id(p)) +
                                 " does not occur in the original");
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (published.column(v).is_missing(p) && !original.column(v).is_missing(it->second))
        ++out.suppressed_cells[v].second;
  }
  if (published.record_count() > original.record_count())
    Fail(ErrorKind::kData, "published dataset has more records than the original");
  out.deleted_records = original.record_count() - published.record_count();
  return out;
}

}  // namespace sdc
