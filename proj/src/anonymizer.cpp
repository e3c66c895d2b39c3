// SPDX-License-Identifier: Apache-2.0

#include "sdc/anonymizer.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "sdc/anonymity.hpp"
#include "sdc/error.hpp"

namespace sdc {

using nlohmann::json;

Microdata GlobalRecode(const Microdata& data, const GeneralizationHierarchy& hierarchy,
                       std::size_t level) {
  if (level > hierarchy.height())
    Fail(ErrorKind::kUsage, "level " + std::to_string(level) + " exceeds height " +
                                std::to_string(hierarchy.height()) + " of hierarchy for '" +
                                hierarchy.variable() + "'");
  const auto var = data.schema().IndexOf(hierarchy.variable());
  const Column& source = data.column(var);
  // Map dictionary codes once, then rebuild the column.
  std::vector<const std::string*> image(source.dictionary().size());
  for (std::size_t c = 0; c < image.size(); ++c) {
    image[c] = hierarchy.Image(source.dictionary()[c], level);
    if (!image[c])
      Fail(ErrorKind::kPrecondition, "value '" + source.dictionary()[c] +
                                         "' of variable '" + hierarchy.variable() +
                                         "' is not in its hierarchy");
  }
  ColumnBuilder b;
  b.Reserve(source.size());
  for (auto code : source.codes()) {
    if (code == kMissingCode)
      b.AppendMissing();
    else
      b.AppendValue(*image[code]);
  }
  return data.WithColumn(var, b.Finish());
}

Microdata ZipTruncate(const Microdata& data, std::string_view variable, std::size_t digits) {
  if (digits < 1) Fail(ErrorKind::kUsage, "truncation must remove at least one digit");
  const auto var = data.schema().IndexOf(variable);
  const Column& source = data.column(var);
  std::vector<std::string> image;
  image.reserve(source.dictionary().size());
  for (const auto& v : source.dictionary()) {
    if (!std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
      Fail(ErrorKind::kPrecondition, "value '" + v + "' of variable '" +
                                         std::string(variable) + "' is not a digit string");
    if (v.size() < digits + 1)
      Fail(ErrorKind::kPrecondition, "value '" + v + "' of variable '" +
                                         std::string(variable) + "' is too short to drop " +
                                         std::to_string(digits) + " digit(s)");
    image.push_back(v.substr(0, v.size() - digits) + std::string(digits, '*'));
  }
  ColumnBuilder b;
  b.Reserve(source.size());
  for (auto code : source.codes()) {
    if (code == kMissingCode)
      b.AppendMissing();
    else
      b.AppendValue(image[code]);
  }
  return data.WithColumn(var, b.Finish());
}

namespace {

std::string_view TrimSpaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ImportanceWeights ParseImportance(std::string_view text) {
  ImportanceWeights out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    auto item = TrimSpaces(text.substr(start, end == std::string_view::npos ? end : end - start));
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      Fail(ErrorKind::kUsage, "importance entry '" + std::string(item) + "' is not var=weight");
    double w = 0;
    auto num = TrimSpaces(item.substr(eq + 1));
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), w);
    if (ec != std::errc() || ptr != num.data() + num.size())
      Fail(ErrorKind::kUsage, "importance weight '" + std::string(num) + "' is not a number");
    out[std::string(TrimSpaces(item.substr(0, eq)))] = w;
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

namespace {

// Rebuilds the given columns of `data` with some rows set to missing.
Microdata WithMissingCells(const Microdata& data,
                           const std::vector<std::vector<std::size_t>>& rows_by_var) {
  Microdata out = data;
  for (std::size_t v = 0; v < rows_by_var.size(); ++v) {
    if (rows_by_var[v].empty()) continue;
    std::vector<bool> blank(data.record_count(), false);
    for (auto r : rows_by_var[v]) blank[r] = true;
    const Column& source = data.column(v);
    ColumnBuilder b;
    b.Reserve(source.size());
    for (std::size_t r = 0; r < source.size(); ++r) {
      auto value = source.value(r);
      if (blank[r] || !value)
        b.AppendMissing();
      else
        b.AppendValue(*value);
    }
    out = out.WithColumn(v, b.Finish());
  }
  return out;
}

std::unordered_map<RecordId, std::size_t> RowIndex(const Microdata& data) {
  std::unordered_map<RecordId, std::size_t> row_of;
  row_of.reserve(data.record_count());
  for (std::size_t r = 0; r < data.record_count(); ++r) row_of.emplace(data.id(r), r);
  return row_of;
}

}  // namespace

SuppressionResult LocalSuppress(const Microdata& data, const QuasiIdentifier& qid,
                                double r_star, const ImportanceWeights& importance) {
  CheckThreshold(r_star);
  const auto vars = qid.Resolve(data.schema());
  const std::size_t arity = vars.size();

  std::vector<double> weight(arity, 1.0);
  if (!importance.empty()) {
    for (std::size_t j = 0; j < arity; ++j) {
      auto it = importance.find(qid.variables()[j]);
      if (it == importance.end())
        Fail(ErrorKind::kUsage,
             "no importance weight for qid variable '" + qid.variables()[j] + "'");
      weight[j] = it->second;
    }
  }
  std::vector<std::size_t> order(arity);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });

  const auto view = ProjectQid(data, qid);
  const std::size_t n = view.size();
  std::vector<std::int32_t> codes(n * arity);
  for (std::size_t r = 0; r < n; ++r) {
    auto t = view.tuple(r);
    std::copy(t.begin(), t.end(), codes.begin() + static_cast<std::ptrdiff_t>(r * arity));
  }
  auto tuple = [&](std::size_t r) {
    return std::span<const std::int32_t>(codes.data() + r * arity, arity);
  };
  std::vector<std::size_t> eff = EffectiveSizes(view);

  SuppressionResult result{data, {}};
  std::vector<std::vector<std::size_t>> rows_by_var(data.variable_count());
  std::vector<std::int32_t> before(arity);

  while (true) {
    // Riskiest unsafe record: smallest effective size, then lowest index.
    std::size_t victim = n;
    for (std::size_t r = 0; r < n; ++r)
      if (IsUnsafe(eff[r], r_star) && (victim == n || eff[r] < eff[victim])) victim = r;
    if (victim == n) break;

    std::size_t position = arity;
    for (auto j : order)
      if (codes[victim * arity + j] != kMissingCode) {
        position = j;
        break;
      }
    if (position == arity)
      Fail(ErrorKind::kPrecondition,
           "cannot reach risk " + std::to_string(r_star) + " on " + qid.ToString() +
               ": a fully suppressed record is still unsafe (too few records)");

    auto t = tuple(victim);
    before.assign(t.begin(), t.end());
    codes[victim * arity + position] = kMissingCode;
    // Blanking a cell only adds compatible partners; count the new ones.
    for (std::size_t r = 0; r < n; ++r) {
      if (r == victim) continue;
      const auto other = tuple(r);
      if (before[position] == other[position] || other[position] == kMissingCode) continue;
      if (Compatible(tuple(victim), other)) {
        ++eff[r];
        ++eff[victim];
      }
    }
    rows_by_var[vars[position]].push_back(victim);
    result.cells.push_back({data.id(victim), qid.variables()[position]});
  }

  result.published = WithMissingCells(data, rows_by_var);
  return result;
}

DeletionResult CasewiseDelete(const Microdata& data, const QuasiIdentifier& qid,
                              double r_star) {
  CheckThreshold(r_star);
  qid.Resolve(data.schema());
  DeletionResult result{data, {}};
  while (true) {
    const auto sizes = EffectiveSizes(result.survivors, qid);
    std::vector<std::size_t> keep;
    keep.reserve(sizes.size());
    for (std::size_t r = 0; r < sizes.size(); ++r) {
      if (IsUnsafe(sizes[r], r_star))
        result.deleted.push_back(result.survivors.id(r));
      else
        keep.push_back(r);
    }
    if (keep.size() == sizes.size()) break;
    result.survivors = result.survivors.SelectRows(keep);
  }
  return result;
}

// ---------------------------------------------------------------------------

RecodeOp MakeRecodeOp(const GeneralizationHierarchy& hierarchy, std::size_t level) {
  if (level > hierarchy.height())
    Fail(ErrorKind::kUsage, "level " + std::to_string(level) + " exceeds height " +
                                std::to_string(hierarchy.height()) + " of hierarchy for '" +
                                hierarchy.variable() + "'");
  RecodeOp op{hierarchy.variable(), level, hierarchy.height(), {}};
  op.mapping.reserve(hierarchy.domain_size());
  for (std::size_t i = 0; i < hierarchy.domain_size(); ++i)
    op.mapping.emplace_back(hierarchy.value(i), *hierarchy.Image(hierarchy.value(i), level));
  return op;
}

namespace {

Microdata ApplyRecode(const Microdata& data, const RecodeOp& op) {
  const auto var = data.schema().IndexOf(op.variable);
  std::unordered_map<std::string_view, std::string_view> image;
  for (const auto& [from, to] : op.mapping) image.emplace(from, to);
  const Column& source = data.column(var);
  ColumnBuilder b;
  b.Reserve(source.size());
  for (std::size_t r = 0; r < source.size(); ++r) {
    auto v = source.value(r);
    if (!v) {
      b.AppendMissing();
      continue;
    }
    auto it = image.find(*v);
    if (it == image.end())
      Fail(ErrorKind::kPrecondition, "value '" + std::string(*v) + "' of variable '" +
                                         op.variable + "' is not in its hierarchy");
    b.AppendValue(it->second);
  }
  return data.WithColumn(var, b.Finish());
}

struct ApplyVisitor {
  const Microdata& data;

  Microdata operator()(const RecodeOp& op) const { return ApplyRecode(data, op); }
  Microdata operator()(const TruncateOp& op) const {
    return ZipTruncate(data, op.variable, op.digits);
  }
  Microdata operator()(const SuppressOp& op) const {
    const auto row_of = RowIndex(data);
    std::vector<std::vector<std::size_t>> rows_by_var(data.variable_count());
    for (const auto& cell : op.cells) {
      auto it = row_of.find(cell.record);
      if (it == row_of.end())
        Fail(ErrorKind::kData, "suppression names unknown record " + std::to_string(cell.record));
      rows_by_var[data.schema().IndexOf(cell.variable)].push_back(it->second);
    }
    return WithMissingCells(data, rows_by_var);
  }
  Microdata operator()(const DeleteOp& op) const {
    const auto row_of = RowIndex(data);
    std::vector<bool> drop(data.record_count(), false);
    for (auto id : op.records) {
      auto it = row_of.find(id);
      if (it == row_of.end())
        Fail(ErrorKind::kData, "deletion names unknown record " + std::to_string(id));
      drop[it->second] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < data.record_count(); ++r)
      if (!drop[r]) keep.push_back(r);
    return data.SelectRows(keep);
  }
};

std::string FormatDouble(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Microdata Apply(const Microdata& data, const Operation& op) {
  return std::visit(ApplyVisitor{data}, op);
}

Microdata Replay(const Microdata& original, const OpLog& log) {
  Microdata current = original;
  for (const auto& op : log) current = Apply(current, op);
  return current;
}

std::string DescribeOp(const Operation& op) {
  struct {
    std::string operator()(const RecodeOp& o) const {
      return "recode " + o.variable + " to level " + std::to_string(o.level);
    }
    std::string operator()(const TruncateOp& o) const {
      return "truncate " + o.variable + " by " + std::to_string(o.digits);
    }
    std::string operator()(const SuppressOp& o) const {
      return "suppress " + std::to_string(o.cells.size()) + " cell(s) on " + o.qid +
             " at r*=" + FormatDouble(o.r_star);
    }
    std::string operator()(const DeleteOp& o) const {
      return "delete " + std::to_string(o.records.size()) + " record(s) on " + o.qid +
             " at r*=" + FormatDouble(o.r_star);
    }
  } describe;
  return std::visit(describe, op);
}

namespace {

json ToJson(const Operation& op) {
  struct {
    json operator()(const RecodeOp& o) const {
      json mapping = json::array();
      for (const auto& [from, to] : o.mapping) mapping.push_back({from, to});
      return {{"op", "recode"}, {"variable", o.variable}, {"level", o.level},
              {"height", o.height}, {"mapping", mapping}};
    }
    json operator()(const TruncateOp& o) const {
      return {{"op", "truncate"}, {"variable", o.variable}, {"digits", o.digits}};
    }
    json operator()(const SuppressOp& o) const {
      json cells = json::array();
      for (const auto& c : o.cells) cells.push_back({c.record, c.variable});
      return {{"op", "suppress"}, {"qid", o.qid}, {"r_star", o.r_star}, {"cells", cells}};
    }
    json operator()(const DeleteOp& o) const {
      return {{"op", "delete"}, {"qid", o.qid}, {"r_star", o.r_star}, {"records", o.records}};
    }
  } to_json;
  return std::visit(to_json, op);
}

Operation FromJson(const json& j) {
  try {
    const auto kind = j.at("op").get<std::string>();
    if (kind == "recode") {
      RecodeOp op{j.at("variable").get<std::string>(), j.at("level").get<std::size_t>(),
                  j.at("height").get<std::size_t>(), {}};
      for (const auto& pair : j.at("mapping"))
        op.mapping.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
      return op;
    }
    if (kind == "truncate")
      return TruncateOp{j.at("variable").get<std::string>(), j.at("digits").get<std::size_t>()};
    if (kind == "suppress") {
      SuppressOp op{j.at("qid").get<std::string>(), j.at("r_star").get<double>(), {}};
      for (const auto& c : j.at("cells"))
        op.cells.push_back({c.at(0).get<RecordId>(), c.at(1).get<std::string>()});
      return op;
    }
    if (kind == "delete")
      return DeleteOp{j.at("qid").get<std::string>(), j.at("r_star").get<double>(),
                      j.at("records").get<std::vector<RecordId>>()};
    Fail(ErrorKind::kData, "unknown operation '" + kind + "' in log");
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("malformed log entry: ") + e.what());
  }
}

json ParseJson(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace

std::string OpLogToJson(const OpLog& log) {
  json out = json::array();
  for (const auto& op : log) out.push_back(ToJson(op));
  return out.dump(1) + "\n";
}

OpLog OpLogFromJson(std::string_view text) {
  const json doc = ParseJson(text, "operation log");
  if (!doc.is_array()) Fail(ErrorKind::kData, "operation log must be a JSON array");
  OpLog log;
  for (const auto& entry : doc) log.push_back(FromJson(entry));
  return log;
}

std::string OperationToJson(const Operation& op) { return ToJson(op).dump(); }

Operation OperationFromJson(std::string_view text) {
  return FromJson(ParseJson(text, "operation"));
}

// ---------------------------------------------------------------------------

RecodePlan::RecodePlan(std::vector<RecodeStep> steps) : steps_(std::move(steps)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : steps_) {
    if (!seen.insert(s.variable).second)
      Fail(ErrorKind::kData, "recode plan lists variable '" + s.variable + "' twice");
    if (s.level.has_value() == s.truncate_digits.has_value())
      Fail(ErrorKind::kData, "plan step for '" + s.variable +
                                 "' needs exactly one of level / truncate_digits");
    if (s.level) {
      if (!s.hierarchy)
        Fail(ErrorKind::kData, "plan step for '" + s.variable + "' has no hierarchy");
      if (s.hierarchy->variable() != s.variable)
        Fail(ErrorKind::kData, "plan step for '" + s.variable + "' uses the hierarchy of '" +
                                   s.hierarchy->variable() + "'");
      if (*s.level > s.hierarchy->height())
        Fail(ErrorKind::kData, "plan level " + std::to_string(*s.level) + " for '" +
                                   s.variable + "' exceeds hierarchy height " +
                                   std::to_string(s.hierarchy->height()));
    }
    if (s.truncate_digits && *s.truncate_digits < 1)
      Fail(ErrorKind::kData, "plan step for '" + s.variable + "' truncates zero digits");
  }
}

RecodePlan RecodePlan::FromJson(std::string_view text, const HierarchyResolver& resolver) {
  const json doc = ParseJson(text, "recode plan");
  if (!doc.is_array()) Fail(ErrorKind::kData, "recode plan must be a JSON array");
  std::vector<RecodeStep> steps;
  try {
    for (const auto& entry : doc) {
      RecodeStep step;
      step.variable = entry.at("variable").get<std::string>();
      if (entry.contains("level")) step.level = entry["level"].get<std::size_t>();
      if (entry.contains("truncate_digits"))
        step.truncate_digits = entry["truncate_digits"].get<std::size_t>();
      if (step.level) {
        std::optional<std::string> path;
        if (entry.contains("hierarchy")) path = entry["hierarchy"].get<std::string>();
        if (!resolver)
          Fail(ErrorKind::kUsage, "no hierarchy source for '" + step.variable + "'");
        step.hierarchy = resolver(step.variable, path);
      }
      steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("malformed recode plan: ") + e.what());
  }
  return RecodePlan(std::move(steps));
}

std::optional<Finisher> ParseFinisher(std::string_view token) {
  if (token == "suppress") return Finisher::kLocalSuppress;
  if (token == "delete") return Finisher::kCasewiseDelete;
  return std::nullopt;
}

namespace {

std::vector<std::size_t> UnsafeCounts(const Microdata& data,
                                      std::span<const QuasiIdentifier> qids, double r_star) {
  std::vector<std::size_t> out;
  for (const auto& q : qids) out.push_back(CountUnsafe(EffectiveSizes(data, q), r_star));
  return out;
}

void Measure(const Microdata& data, std::span<const QuasiIdentifier> qids, double r_star,
             std::vector<RiskSummary>& summaries, std::vector<double>& max_risks) {
  for (const auto& q : qids) {
    const auto profile = RecordRisks(data, q);
    RiskSummary s;
    s.threshold = r_star;
    s.xi = GlobalRisk(data, q);
    for (auto r : profile.per_record) s.unsafe_count += (r > r_star);
    summaries.push_back(s);
    max_risks.push_back(profile.max_risk);
  }
}

}  // namespace

AnonymizationResult AchieveKAnonymity(const Microdata& data,
                                      std::span<const QuasiIdentifier> qids, std::size_t k,
                                      const RecodePlan& plan, Finisher finisher,
                                      const ImportanceWeights& importance) {
  if (qids.empty()) Fail(ErrorKind::kUsage, "no quasi-identifier to anonymize");
  const double r_star = ThresholdForK(k);
  for (const auto& q : qids) q.Resolve(data.schema());
  if (data.record_count() == 0) Fail(ErrorKind::kPrecondition, "dataset is empty");

  AnonymizationResult result{data, {}, {qids.begin(), qids.end()}, k, {}, {}, {}, {}, {}, {}};
  Measure(data, qids, r_star, result.before, result.max_risk_before);
  result.steps.push_back({"original", UnsafeCounts(data, qids, r_star)});

  Microdata current = data;
  for (const auto& step : plan.steps()) {
    Operation op = step.level ? Operation(MakeRecodeOp(*step.hierarchy, *step.level))
                              : Operation(TruncateOp{step.variable, *step.truncate_digits});
    current = Apply(current, op);
    result.steps.push_back({DescribeOp(op), UnsafeCounts(current, qids, r_star)});
    result.op_log.push_back(std::move(op));
  }

  if (finisher == Finisher::kLocalSuppress) {
    // Blanking cells never lowers an effective size, so earlier qids stay safe.
    for (const auto& q : qids) {
      auto s = LocalSuppress(current, q, r_star, importance);
      current = std::move(s.published);
      result.op_log.push_back(SuppressOp{q.ToString(), r_star, std::move(s.cells)});
    }
    result.steps.push_back({"local suppression", UnsafeCounts(current, qids, r_star)});
  } else {
    // Deleting for one qid can expose records on another; iterate to a
    // common fixed point.
    for (bool first = true;; first = false) {
      bool deleted_any = false;
      for (const auto& q : qids) {
        auto d = CasewiseDelete(current, q, r_star);
        current = std::move(d.survivors);
        if (!d.deleted.empty()) deleted_any = true;
        if (first || !d.deleted.empty())
          result.op_log.push_back(DeleteOp{q.ToString(), r_star, std::move(d.deleted)});
      }
      if (!deleted_any) break;
    }
    result.steps.push_back({"casewise deletion", UnsafeCounts(current, qids, r_star)});
  }
  if (current.record_count() == 0)
    Fail(ErrorKind::kPrecondition, "casewise deletion removed every record");

  result.published = current;
  Measure(current, qids, r_star, result.after, result.max_risk_after);
  for (std::size_t i = 0; i < qids.size(); ++i)
    if (result.after[i].unsafe_count != 0)
      Fail(ErrorKind::kPrecondition, "driver failed to reach " + std::to_string(k) +
                                         "-anonymity on " + qids[i].ToString());

  for (const auto& q : qids) result.loss.lambda.push_back(LossForQid(data, current, q));
  result.loss.accounting = AccountSuppression(data, current);

  std::vector<HierarchyLevel> levels;
  std::unordered_set<std::string> seen;
  for (const auto& q : qids) {
    for (const auto& v : q.variables()) {
      if (!seen.insert(v).second) continue;
      HierarchyLevel level;
      for (const auto& step : plan.steps()) {
        if (step.variable != v) continue;
        if (step.level) {
          level = {*step.level, step.hierarchy->height()};
        } else {
          // Digit truncation acts as a prefix hierarchy of height = value length.
          std::size_t width = 0;
          for (const auto& value : data.column(data.schema().IndexOf(v)).dictionary())
            width = std::max(width, value.size());
          level = {*step.truncate_digits, width};
        }
      }
      levels.push_back(level);
    }
  }
  result.loss.prec_loss = PrecLoss(levels);
  return result;
}

std::string ResultSummaryJson(const AnonymizationResult& result) {
  json steps = json::array();
  for (const auto& s : result.steps) {
    json unsafe = json::object();
    for (std::size_t i = 0; i < result.qids.size(); ++i)
      unsafe[result.qids[i].ToString()] = s.unsafe[i];
    steps.push_back({{"label", s.label}, {"unsafe", unsafe}});
  }
  auto risks = [&](const std::vector<RiskSummary>& rs, const std::vector<double>& maxes) {
    json out = json::array();
    for (std::size_t i = 0; i < rs.size(); ++i)
      out.push_back({{"qid", result.qids[i].ToString()},
                     {"xi", rs[i].xi},
                     {"max_risk", maxes[i]},
                     {"unsafe_count", rs[i].unsafe_count},
                     {"threshold", rs[i].threshold}});
    return out;
  };
  json lambda = json::array();
  for (const auto& l : result.loss.lambda)
    lambda.push_back({{"qid", l.qid.ToString()},
                      {"lambda", l.lambda ? json(*l.lambda) : json(nullptr)},
                      {"original_excluded", l.original_excluded},
                      {"published_excluded", l.published_excluded}});
  json suppressed = json::object();
  for (const auto& [name, count] : result.loss.accounting.suppressed_cells)
    suppressed[name] = count;
  json doc = {{"k", result.k},
              {"records_published", result.published.record_count()},
              {"steps", steps},
              {"before", risks(result.before, result.max_risk_before)},
              {"after", risks(result.after, result.max_risk_after)},
              {"loss",
               {{"lambda", lambda},
                {"prec", result.loss.prec_loss},
                {"suppressed_cells", suppressed},
                {"deleted_records", result.loss.accounting.deleted_records}}}};
  return doc.dump(2) + "\n";
}

}  // namespace sdc
