// SPDX-License-Identifier: Apache-2.0

#include "sdc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "sdc/csv.hpp"
#include "sdc/error.hpp"
#include "sdc/infoloss.hpp"
#include "sdc/risk.hpp"

namespace sdc {

using nlohmann::json;

namespace {

constexpr std::string_view kNotAvailable = "n/a";

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Round half to even, as in the integer quartile columns.
std::string Rounded(double v) { return Fixed(std::nearbyint(v), 0); }

std::string TextTable(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return {};
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const auto& cell = rows[r][c];
      const std::string pad(width[c] - cell.size(), ' ');
      if (c) out += " | ";
      out += c == 0 ? cell + pad : pad + cell;
    }
    out += '\n';
    if (r == 0) {
      for (std::size_t c = 0; c < width.size(); ++c) {
        if (c) out += "-+-";
        out += std::string(width[c], '-');
      }
      out += '\n';
    }
  }
  return out;
}

std::string CsvLines(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += FormatCsvField(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string CountHeader(std::size_t bound) {
  return bound == 1 ? "k=1" : "k<=" + std::to_string(bound);
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("report is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ReportFormat ParseReportFormat(std::string_view token) {
  if (token == "text" || token == "text-table") return ReportFormat::kText;
  if (token == "csv") return ReportFormat::kCsv;
  if (token == "json") return ReportFormat::kJson;
  Fail(ErrorKind::kUsage, "unknown report format '" + std::string(token) + "'");
}

AnonymityReport BuildAnonymityReport(const Microdata& data,
                                     std::span<const QuasiIdentifier> qids,
                                     std::span<const std::size_t> bounds) {
  AnonymityReport report;
  report.bounds.assign(bounds.begin(), bounds.end());
  for (const auto& q : qids) {
    const auto part = PartitionComplete(data, q);
    AnonymityRow row;
    row.qid = q.ToString();
    row.records = data.record_count();
    row.excluded = part.excluded;
    if (!part.partition.profile.sizes.empty()) row.summary = Summarize(part.partition.profile);
    row.counts = ThresholdCounts(part.partition.profile, bounds);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ComparisonReport BuildComparisonReport(const Microdata& original,
                                       std::span<const LabeledDataset> published,
                                       std::span<const QuasiIdentifier> eval_qids,
                                       std::span<const QuasiIdentifier> loss_qids) {
  ComparisonReport report;
  for (const auto& q : eval_qids) report.eval_qids.push_back(q.ToString());
  for (const auto& q : loss_qids) report.loss_qids.push_back(q.ToString());
  for (const auto& v : original.schema().variables()) report.variables.push_back(v.name);
  for (const auto& q : eval_qids) report.original_xi.push_back(GlobalRisk(original, q));
  for (const auto& q : loss_qids)
    report.original_lambda.push_back(LossForQid(original, original, q).lambda);

  for (const auto& [label, data] : published) {
    if (!original.schema().SameVariables(data.schema()))
      Fail(ErrorKind::kData, "published dataset '" + label +
                                 "' does not share the original's variables");
    ComparisonColumn column;
    column.label = label;
    column.records = data.record_count();
    for (const auto& q : eval_qids) column.xi.push_back(GlobalRisk(data, q));
    for (const auto& q : loss_qids) {
      const auto loss = LossForQid(original, data, q);
      column.lambda.push_back(loss.lambda);
      column.lambda_excluded.push_back(loss.published_excluded);
    }
    const auto accounting = AccountSuppression(original, data);
    for (const auto& [name, count] : accounting.suppressed_cells)
      column.suppressed.push_back(count);
    column.deleted = accounting.deleted_records;
    report.columns.push_back(std::move(column));
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

json ToJson(const AnonymityReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json counts = json::array();
    for (const auto& c : r.counts) counts.push_back({{"bound", c.bound}, {"records", c.records}});
    json summary = nullptr;
    if (r.summary)
      summary = {{"set_count", r.summary->set_count}, {"min", r.summary->min},
                 {"q1", r.summary->q1},               {"median", r.summary->median},
                 {"q3", r.summary->q3},               {"max", r.summary->max}};
    rows.push_back({{"qid", r.qid},
                    {"records", r.records},
                    {"excluded", r.excluded},
                    {"summary", summary},
                    {"threshold_counts", counts}});
  }
  return {{"bounds", report.bounds}, {"rows", rows}};
}

json LambdaJson(const std::optional<double>& v) {
  return v ? json(*v) : json(std::string(kNotAvailable));
}

std::optional<double> LambdaFromJson(const json& j) {
  return j.is_number() ? std::optional<double>(j.get<double>()) : std::nullopt;
}

json ToJson(const ComparisonReport& report) {
  json original_lambda = json::array();
  for (const auto& l : report.original_lambda) original_lambda.push_back(LambdaJson(l));
  json columns = json::array();
  for (const auto& c : report.columns) {
    json lambda = json::array();
    for (const auto& l : c.lambda) lambda.push_back(LambdaJson(l));
    columns.push_back({{"label", c.label},
                       {"records", c.records},
                       {"xi", c.xi},
                       {"lambda", lambda},
                       {"lambda_excluded", c.lambda_excluded},
                       {"suppressed", c.suppressed},
                       {"deleted", c.deleted}});
  }
  return {{"eval_qids", report.eval_qids}, {"loss_qids", report.loss_qids},
          {"variables", report.variables}, {"original_xi", report.original_xi},
          {"original_lambda", original_lambda}, {"columns", columns}};
}

}  // namespace

std::string Render(const AnonymityReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) return ToJson(report).dump(2) + "\n";
  const bool text = format == ReportFormat::kText;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"qid", "sets", "min", "q1", "median", "q3", "max"};
  for (auto b : report.bounds) header.push_back(CountHeader(b));
  header.push_back("excluded");
  rows.push_back(header);
  for (const auto& r : report.rows) {
    std::vector<std::string> row = {r.qid};
    if (r.summary) {
      const auto& s = *r.summary;
      row.push_back(std::to_string(s.set_count));
      for (double v : {s.min, s.q1, s.median, s.q3, s.max})
        row.push_back(text ? Rounded(v) : FormatNumber(v));
    } else {
      row.push_back("0");
      for (int i = 0; i < 5; ++i) row.emplace_back(kNotAvailable);
    }
    for (const auto& c : r.counts) row.push_back(std::to_string(c.records));
    row.push_back(std::to_string(r.excluded));
    rows.push_back(std::move(row));
  }
  return text ? TextTable(rows) : CsvLines(rows);
}

std::string Render(const ComparisonReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) return ToJson(report).dump(2) + "\n";
  const bool text = format == ReportFormat::kText;
  auto number = [&](double v) { return text ? Fixed(v, 4) : FormatNumber(v); };

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"metric", "original"};
  for (const auto& c : report.columns) header.push_back(c.label);
  rows.push_back(header);
  for (std::size_t i = 0; i < report.eval_qids.size(); ++i) {
    std::vector<std::string> row = {"xi for " + report.eval_qids[i], number(report.original_xi[i])};
    for (const auto& c : report.columns) row.push_back(number(c.xi[i]));
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < report.loss_qids.size(); ++i) {
    auto cell = [&](const std::optional<double>& v) {
      return v ? number(*v) : std::string(kNotAvailable);
    };
    std::vector<std::string> row = {"lambda for " + report.loss_qids[i],
                                    cell(report.original_lambda[i])};
    for (const auto& c : report.columns) row.push_back(cell(c.lambda[i]));
    rows.push_back(std::move(row));
  }
  for (std::size_t v = 0; v < report.variables.size(); ++v) {
    std::vector<std::string> row = {"suppressed " + report.variables[v], "0"};
    for (const auto& c : report.columns) row.push_back(std::to_string(c.suppressed[v]));
    rows.push_back(std::move(row));
  }
  {
    std::vector<std::string> row = {"deleted records", "0"};
    for (const auto& c : report.columns) row.push_back(std::to_string(c.deleted));
    rows.push_back(std::move(row));
  }
  return text ? TextTable(rows) : CsvLines(rows);
}

std::string RenderSteps(const AnonymizationResult& result) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"step"};
  for (const auto& q : result.qids) header.push_back("unsafe " + q.ToString());
  rows.push_back(header);
  for (const auto& s : result.steps) {
    std::vector<std::string> row = {s.label};
    for (auto u : s.unsafe) row.push_back(std::to_string(u));
    rows.push_back(std::move(row));
  }
  return TextTable(rows);
}

AnonymityReport AnonymityReportFromJson(std::string_view text) {
  const json doc = ParseJson(text);
  AnonymityReport report;
  try {
    report.bounds = doc.at("bounds").get<std::vector<std::size_t>>();
    for (const auto& r : doc.at("rows")) {
      AnonymityRow row;
      row.qid = r.at("qid").get<std::string>();
      row.records = r.at("records").get<std::size_t>();
      row.excluded = r.at("excluded").get<std::size_t>();
      if (!r.at("summary").is_null()) {
        const auto& s = r["summary"];
        row.summary = QuartileSummary{s.at("set_count").get<std::size_t>(),
                                      s.at("min").get<double>(),  s.at("q1").get<double>(),
                                      s.at("median").get<double>(), s.at("q3").get<double>(),
                                      s.at("max").get<double>()};
      }
      for (const auto& c : r.at("threshold_counts"))
        row.counts.push_back({c.at("bound").get<std::size_t>(), c.at("records").get<std::size_t>()});
      report.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("malformed anonymity report: ") + e.what());
  }
  return report;
}

ComparisonReport ComparisonReportFromJson(std::string_view text) {
  const json doc = ParseJson(text);
  ComparisonReport report;
  try {
    report.eval_qids = doc.at("eval_qids").get<std::vector<std::string>>();
    report.loss_qids = doc.at("loss_qids").get<std::vector<std::string>>();
    report.variables = doc.at("variables").get<std::vector<std::string>>();
    report.original_xi = doc.at("original_xi").get<std::vector<double>>();
    for (const auto& l : doc.at("original_lambda")) report.original_lambda.push_back(LambdaFromJson(l));
    for (const auto& c : doc.at("columns")) {
      ComparisonColumn column;
      column.label = c.at("label").get<std::string>();
      column.records = c.at("records").get<std::size_t>();
      column.xi = c.at("xi").get<std::vector<double>>();
      for (const auto& l : c.at("lambda")) column.lambda.push_back(LambdaFromJson(l));
      column.lambda_excluded = c.at("lambda_excluded").get<std::vector<std::size_t>>();
      column.suppressed = c.at("suppressed").get<std::vector<std::size_t>>();
      column.deleted = c.at("deleted").get<std::size_t>();
      report.columns.push_back(std::move(column));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("malformed comparison report: ") + e.what());
  }
  return report;
}

}  // namespace sdc
