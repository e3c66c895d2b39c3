// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdc/microdata.hpp"

namespace sdc {

// Re-identification probability of every record, r = 1 / effective size.
struct RiskProfile {
  std::vector<double> per_record;
  double max_risk = 0;
};

struct RiskSummary {
  double xi = 0;              // global individual disclosure risk
  std::size_t unsafe_count = 0;
  double threshold = 1.0;     // r*
};

RiskProfile RecordRisks(const Microdata& data, const QuasiIdentifier& qid);
RiskProfile RisksFromSizes(std::span<const std::size_t> effective_sizes);

// xi = (1/n) sum_k f_k r_k. With r = 1/f this is the mean per-record risk,
// which reduces to K/n when no qid cell is missing.
double GlobalRisk(const Microdata& data, const QuasiIdentifier& qid);
double GlobalRisk(const RiskProfile& profile);

void CheckThreshold(double r_star);
// True when a record of the given effective size has risk above r*.
bool IsUnsafe(std::size_t effective_size, double r_star);

std::vector<std::size_t> UnsafeRecords(const Microdata& data,
                                       const QuasiIdentifier& qid, double r_star);
std::size_t CountUnsafe(std::span<const std::size_t> effective_sizes, double r_star);

RiskSummary Summarize(const Microdata& data, const QuasiIdentifier& qid, double r_star);

double ThresholdForK(std::size_t k);

// Edges 0, 0.1, ..., 1.0.
std::vector<double> DefaultBinEdges();

// Bin i counts risks in (edges[i], edges[i+1]].
std::vector<std::size_t> RiskHistogram(const RiskProfile& profile,
                                       std::span<const double> bin_edges);

}  // namespace sdc
