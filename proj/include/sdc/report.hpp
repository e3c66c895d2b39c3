// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdc/anonymity.hpp"
#include "sdc/anonymizer.hpp"
#include "sdc/microdata.hpp"

namespace sdc {

enum class ReportFormat { kText, kCsv, kJson };

// "text" (or "text-table"), "csv", "json".
ReportFormat ParseReportFormat(std::string_view token);

struct AnonymityRow {
  std::string qid;
  std::size_t records = 0;
  std::size_t excluded = 0;                // records with a missing qid cell
  std::optional<QuartileSummary> summary;  // nullopt when nothing is left
  std::vector<ThresholdCount> counts;

  bool operator==(const AnonymityRow&) const = default;
};

struct AnonymityReport {
  std::vector<std::size_t> bounds;
  std::vector<AnonymityRow> rows;

  bool operator==(const AnonymityReport&) const = default;
};

AnonymityReport BuildAnonymityReport(
    const Microdata& data, std::span<const QuasiIdentifier> qids,
    std::span<const std::size_t> bounds = kDefaultBounds);

struct ComparisonColumn {
  std::string label;
  std::size_t records = 0;
  std::vector<double> xi;                    // per eval qid
  std::vector<std::optional<double>> lambda; // per loss qid, nullopt = n/a
  std::vector<std::size_t> lambda_excluded;  // published records left out of lambda
  std::vector<std::size_t> suppressed;       // per variable
  std::size_t deleted = 0;

  bool operator==(const ComparisonColumn&) const = default;
};

struct ComparisonReport {
  std::vector<std::string> eval_qids;
  std::vector<std::string> loss_qids;
  std::vector<std::string> variables;
  std::vector<double> original_xi;
  std::vector<std::optional<double>> original_lambda;  // 1 unless undefined
  std::vector<ComparisonColumn> columns;

  bool operator==(const ComparisonReport&) const = default;
};

struct LabeledDataset {
  std::string label;
  Microdata data;
};

ComparisonReport BuildComparisonReport(const Microdata& original,
                                       std::span<const LabeledDataset> published,
                                       std::span<const QuasiIdentifier> eval_qids,
                                       std::span<const QuasiIdentifier> loss_qids);

std::string Render(const AnonymityReport& report, ReportFormat format);
std::string Render(const ComparisonReport& report, ReportFormat format);
// Unsafe-record overview of a driver run, one row per step.
std::string RenderSteps(const AnonymizationResult& result);

AnonymityReport AnonymityReportFromJson(std::string_view text);
ComparisonReport ComparisonReportFromJson(std::string_view text);

// Shortest representation that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace sdc
