// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sdc/hierarchy.hpp"
#include "sdc/infoloss.hpp"
#include "sdc/microdata.hpp"
#include "sdc/risk.hpp"

namespace sdc {

// ---------------------------------------------------------------------------
// Operators

// Replaces every present cell of the hierarchy's variable by its image at
// the given level.
Microdata GlobalRecode(const Microdata& data, const GeneralizationHierarchy& hierarchy,
                       std::size_t level);

// Drops the last `digits` characters of every present value and pads with
// the same number of '*'.
Microdata ZipTruncate(const Microdata& data, std::string_view variable, std::size_t digits);

// Lower weight means the variable is suppressed first. Empty means equal
// weights for every qid variable.
using ImportanceWeights = std::map<std::string, double, std::less<>>;

// "zc=1,gender=3"
ImportanceWeights ParseImportance(std::string_view text);

struct SuppressedCell {
  RecordId record = 0;
  std::string variable;

  bool operator==(const SuppressedCell&) const = default;
};

struct SuppressionResult {
  Microdata published;
  std::vector<SuppressedCell> cells;  // in suppression order
};

// Greedy local suppression: repeatedly blanks one qid cell of the riskiest
// unsafe record until no record has risk above r_star.
SuppressionResult LocalSuppress(const Microdata& data, const QuasiIdentifier& qid,
                                double r_star, const ImportanceWeights& importance = {});

struct DeletionResult {
  Microdata survivors;
  std::vector<RecordId> deleted;  // in deletion order
};

// Removes unsafe records until the survivors contain none.
DeletionResult CasewiseDelete(const Microdata& data, const QuasiIdentifier& qid,
                              double r_star);

// ---------------------------------------------------------------------------
// Operation log. Entries are self-contained: replay needs no hierarchy files.

struct RecodeOp {
  std::string variable;
  std::size_t level = 0;
  std::size_t height = 0;
  std::vector<std::pair<std::string, std::string>> mapping;  // value -> image
};

struct TruncateOp {
  std::string variable;
  std::size_t digits = 0;
};

struct SuppressOp {
  std::string qid;  // "a+b"
  double r_star = 1.0;
  std::vector<SuppressedCell> cells;
};

struct DeleteOp {
  std::string qid;
  double r_star = 1.0;
  std::vector<RecordId> records;
};

using Operation = std::variant<RecodeOp, TruncateOp, SuppressOp, DeleteOp>;
using OpLog = std::vector<Operation>;

RecodeOp MakeRecodeOp(const GeneralizationHierarchy& hierarchy, std::size_t level);
Microdata Apply(const Microdata& data, const Operation& op);
Microdata Replay(const Microdata& original, const OpLog& log);

std::string DescribeOp(const Operation& op);
std::string OpLogToJson(const OpLog& log);
OpLog OpLogFromJson(std::string_view text);

// Single log entry, as used by the service's /ops route.
std::string OperationToJson(const Operation& op);
Operation OperationFromJson(std::string_view text);

// ---------------------------------------------------------------------------
// Recode plans and the k-anonymity driver.

struct RecodeStep {
  std::string variable;
  // Exactly one of the two is set.
  std::optional<std::size_t> level;
  std::optional<std::size_t> truncate_digits;
  std::shared_ptr<const GeneralizationHierarchy> hierarchy;  // with level
};

// Resolves the hierarchy for a level step from the variable name and the
// step's optional "hierarchy" path.
using HierarchyResolver = std::function<std::shared_ptr<const GeneralizationHierarchy>(
    const std::string& variable, const std::optional<std::string>& path)>;

class RecodePlan {
 public:
  RecodePlan() = default;
  explicit RecodePlan(std::vector<RecodeStep> steps);

  // [{"variable":..,"level":N[,"hierarchy":path]} | {"variable":..,"truncate_digits":N}]
  static RecodePlan FromJson(std::string_view text, const HierarchyResolver& resolver);

  const std::vector<RecodeStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

 private:
  std::vector<RecodeStep> steps_;
};

enum class Finisher { kLocalSuppress, kCasewiseDelete };

std::optional<Finisher> ParseFinisher(std::string_view token);  // suppress|delete

struct StepUnsafe {
  std::string label;
  std::vector<std::size_t> unsafe;  // per qid
};

struct AnonymizationResult {
  Microdata published;
  OpLog op_log;
  std::vector<QuasiIdentifier> qids;
  std::size_t k = 1;
  std::vector<StepUnsafe> steps;     // "original", each plan step, finisher
  std::vector<RiskSummary> before;   // per qid
  std::vector<RiskSummary> after;    // per qid
  std::vector<double> max_risk_before;
  std::vector<double> max_risk_after;
  LossReport loss;
};

// Applies the plan in order, then the finisher at r* = 1/k for each qid in
// turn, until the published data is k-anonymous on every qid.
AnonymizationResult AchieveKAnonymity(const Microdata& data,
                                      std::span<const QuasiIdentifier> qids, std::size_t k,
                                      const RecodePlan& plan, Finisher finisher,
                                      const ImportanceWeights& importance = {});

std::string ResultSummaryJson(const AnonymizationResult& result);

}  // namespace sdc
