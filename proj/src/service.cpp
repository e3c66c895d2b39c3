// SPDX-License-Identifier: Apache-2.0

#include "sdc/service.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <unordered_map>

#include "httplib.h"
#include "json.hpp"
#include "sdc/anonymity.hpp"
#include "sdc/anonymizer.hpp"
#include "sdc/csv.hpp"
#include "sdc/error.hpp"
#include "sdc/infoloss.hpp"
#include "sdc/report.hpp"
#include "sdc/risk.hpp"

namespace sdc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Dataset {
  std::string id;
  std::shared_ptr<const Microdata> data;
};

struct Session {
  Session(std::string session_id, std::string dataset, std::shared_ptr<const Microdata> data)
      : id(std::move(session_id)),
        dataset_id(std::move(dataset)),
        original(std::move(data)),
        current(*original) {}

  std::string id;
  std::string dataset_id;
  std::shared_ptr<const Microdata> original;
  Microdata current;
  OpLog log;
  std::string qid;  // active qid, may be empty
  std::size_t k = 2;
  std::mutex mu;    // serializes requests within the session
};

int StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kData:
      return 400;
    case ErrorKind::kNotFound:
      return 404;
    case ErrorKind::kConflict:
      return 409;
    case ErrorKind::kPrecondition:
    case ErrorKind::kUndefined:
      return 422;
  }
  return 500;
}

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Query strings decode '+' to a space; accept both as the qid separator.
std::string QidParam(std::string text) {
  for (auto& c : text)
    if (c == ' ') c = '+';
  return text;
}

json SummaryPayload(const Microdata& data, const QuasiIdentifier& qid) {
  const auto report = BuildAnonymityReport(data, std::span(&qid, 1));
  const auto& row = report.rows.front();
  json counts = json::array();
  for (const auto& c : row.counts) counts.push_back({{"bound", c.bound}, {"records", c.records}});
  json summary = nullptr;
  if (row.summary)
    summary = {{"set_count", row.summary->set_count}, {"min", row.summary->min},
               {"q1", row.summary->q1},               {"median", row.summary->median},
               {"q3", row.summary->q3},               {"max", row.summary->max}};
  return {{"qid", row.qid},
          {"record_count", row.records},
          {"excluded", row.excluded},
          {"summary", summary},
          {"threshold_counts", counts}};
}

json RiskFields(const Microdata& data, const QuasiIdentifier& qid, std::size_t k) {
  const double r_star = ThresholdForK(k);
  const auto edges = DefaultBinEdges();
  json out = {{"qid", qid.ToString()}, {"k", k}, {"r_star", r_star},
              {"record_count", data.record_count()}};
  if (data.record_count() == 0) {
    out["xi"] = nullptr;
    out["max_risk"] = nullptr;
    out["unsafe_count"] = 0;
    out["histogram"] = {{"edges", edges},
                        {"counts", std::vector<std::size_t>(edges.size() - 1, 0)}};
    return out;
  }
  const auto sizes = EffectiveSizes(data, qid);
  const auto profile = RisksFromSizes(sizes);
  out["xi"] = GlobalRisk(data, qid);
  out["max_risk"] = profile.max_risk;
  out["unsafe_count"] = CountUnsafe(sizes, r_star);
  out["histogram"] = {{"edges", edges}, {"counts", RiskHistogram(profile, edges)}};
  return out;
}

std::string NewToken(std::string_view prefix) {
  static std::mutex mu;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mu);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(prefix);
  auto x = engine();
  for (int i = 0; i < 16; ++i, x >>= 4) out += kHex[x & 0xf];
  return out;
}

const json& Field(const json& body, const char* name) {
  if (!body.contains(name)) Fail(ErrorKind::kUsage, std::string("missing field \"") + name + "\"");
  return body[name];
}

template <typename T>
T FieldAs(const json& body, const char* name) {
  try {
    return Field(body, name).get<T>();
  } catch (const json::exception&) {
    Fail(ErrorKind::kUsage, std::string("field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

struct Service::Impl {
  std::string data_dir;
  httplib::Server server;
  std::shared_mutex mu;
  std::unordered_map<std::string, Dataset> datasets;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions;

  explicit Impl(std::string dir) : data_dir(std::move(dir)) {
    Restore();
    Routes();
  }

  // ---- persistence -------------------------------------------------------

  bool persistent() const { return !data_dir.empty(); }

  void Restore() {
    if (!persistent()) return;
    fs::create_directories(fs::path(data_dir) / "datasets");
    fs::create_directories(fs::path(data_dir) / "sessions");
    for (const auto& entry : fs::directory_iterator(fs::path(data_dir) / "datasets")) {
      if (!entry.is_directory()) continue;
      try {
        const auto schema =
            DatasetSchema::FromJson(ReadFile((entry.path() / "schema.json").string()));
        auto data = std::make_shared<const Microdata>(
            LoadTable(ReadFile((entry.path() / "data.csv").string()), schema));
        const auto id = entry.path().filename().string();
        datasets.emplace(id, Dataset{id, std::move(data)});
      } catch (const std::exception& e) {
        std::cerr << "skipping dataset " << entry.path() << ": " << e.what() << "\n";
      }
    }
    for (const auto& entry : fs::directory_iterator(fs::path(data_dir) / "sessions")) {
      if (entry.path().extension() != ".json") continue;
      try {
        const json doc = json::parse(ReadFile(entry.path().string()));
        auto ds = datasets.find(doc.at("dataset_id").get<std::string>());
        if (ds == datasets.end()) continue;
        auto s = std::make_shared<Session>(entry.path().stem().string(), ds->first,
                                           ds->second.data);
        s->log = OpLogFromJson(doc.at("log").dump());
        s->current = Replay(*s->original, s->log);
        s->qid = doc.value("qid", std::string());
        s->k = doc.value("k", std::size_t{2});
        sessions.emplace(s->id, std::move(s));
      } catch (const std::exception& e) {
        std::cerr << "skipping session " << entry.path() << ": " << e.what() << "\n";
      }
    }
  }

  void PersistSession(const Session& s) {
    if (!persistent()) return;
    json doc = {{"dataset_id", s.dataset_id},
                {"qid", s.qid},
                {"k", s.k},
                {"log", json::parse(OpLogToJson(s.log))}};
    WriteFile((fs::path(data_dir) / "sessions" / (s.id + ".json")).string(), doc.dump(1));
  }

  // ---- lookup ------------------------------------------------------------

  std::shared_ptr<Session> FindSession(const std::string& id) {
    std::shared_lock lock(mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) Fail(ErrorKind::kNotFound, "unknown session '" + id + "'");
    return it->second;
  }

  QuasiIdentifier ActiveQid(const Session& s, const httplib::Request& req,
                            const char* param = "qid") {
    std::string text = req.has_param(param) ? QidParam(req.get_param_value(param)) : s.qid;
    if (text.empty()) Fail(ErrorKind::kUsage, "no quasi-identifier given");
    auto qid = QuasiIdentifier::Parse(text);
    qid.Resolve(s.current.schema());
    return qid;
  }

  static std::size_t ParseK(const std::string& text) {
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || ptr != text.data() + text.size() || k < 1)
      Fail(ErrorKind::kUsage, "k must be a positive integer, got '" + text + "'");
    return k;
  }

  json RiskPayload(const Session& s, const QuasiIdentifier& qid, std::size_t k) {
    json out = RiskFields(s.current, qid, k);
    out["original"] = RiskFields(*s.original, qid, k);
    return out;
  }

  // ---- routes ------------------------------------------------------------

  template <typename Handler>
  httplib::Server::Handler Wrap(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        SendJson(res, StatusFor(e.kind()), {{"error", e.what()}});
      } catch (const std::exception& e) {
        SendJson(res, 500, {{"error", e.what()}});
      }
    };
  }

  void Routes() {
    server.Post("/api/datasets", Wrap([this](const auto& req, auto& res) { UploadDataset(req, res); }));
    server.Post("/api/sessions", Wrap([this](const auto& req, auto& res) { CreateSession(req, res); }));
    server.Get("/api/sessions/:id/summary", Wrap([this](const auto& req, auto& res) {
      auto s = FindSession(req.path_params.at("id"));
      std::lock_guard lock(s->mu);
      SendJson(res, 200, SummaryPayload(s->current, ActiveQid(*s, req)));
    }));
    server.Get("/api/sessions/:id/risk", Wrap([this](const auto& req, auto& res) {
      auto s = FindSession(req.path_params.at("id"));
      std::lock_guard lock(s->mu);
      const auto qid = ActiveQid(*s, req);
      const auto k = req.has_param("k") ? ParseK(req.get_param_value("k")) : s->k;
      SendJson(res, 200, RiskPayload(*s, qid, k));
    }));
    server.Post("/api/sessions/:id/ops", Wrap([this](const auto& req, auto& res) { ApplyOp(req, res); }));
    server.Post("/api/sessions/:id/undo", Wrap([this](const auto& req, auto& res) { Undo(req, res); }));
    server.Get("/api/sessions/:id/export", Wrap([this](const auto& req, auto& res) {
      auto s = FindSession(req.path_params.at("id"));
      std::lock_guard lock(s->mu);
      res.status = 200;
      res.set_content(WriteCsv(s->current), "text/csv");
    }));
    server.Get("/api/sessions/:id/report", Wrap([this](const auto& req, auto& res) { Report(req, res); }));
  }

  void UploadDataset(const httplib::Request& req, httplib::Response& res) {
    if (!req.is_multipart_form_data() || !req.has_file("csv") || !req.has_file("schema"))
      Fail(ErrorKind::kUsage, "expected multipart form with parts 'csv' and 'schema'");
    const auto csv = req.get_file_value("csv").content;
    const auto schema_text = req.get_file_value("schema").content;
    const auto schema = DatasetSchema::FromJson(schema_text);
    auto data = std::make_shared<const Microdata>(LoadTable(csv, schema));
    const auto id = NewToken("ds-");
    if (persistent()) {
      const auto dir = fs::path(data_dir) / "datasets" / id;
      fs::create_directories(dir);
      WriteFile((dir / "data.csv").string(), csv);
      WriteFile((dir / "schema.json").string(), schema_text);
    }
    const auto n = data->record_count();
    {
      std::unique_lock lock(mu);
      datasets.emplace(id, Dataset{id, std::move(data)});
    }
    SendJson(res, 201, {{"dataset_id", id}, {"record_count", n}});
  }

  void CreateSession(const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      Fail(ErrorKind::kUsage, "request body must be JSON");
    }
    const auto dataset_id = FieldAs<std::string>(body, "dataset_id");
    std::shared_ptr<const Microdata> data;
    {
      std::shared_lock lock(mu);
      auto it = datasets.find(dataset_id);
      if (it == datasets.end())
        Fail(ErrorKind::kNotFound, "unknown dataset '" + dataset_id + "'");
      data = it->second.data;
    }
    auto s = std::make_shared<Session>(NewToken("s-"), dataset_id, data);
    if (body.contains("qid")) {
      s->qid = QidParam(FieldAs<std::string>(body, "qid"));
      QuasiIdentifier::Parse(s->qid).Resolve(data->schema());
    }
    if (body.contains("k")) s->k = ParseK(std::to_string(FieldAs<long long>(body, "k")));
    PersistSession(*s);
    const auto id = s->id;
    {
      std::unique_lock lock(mu);
      sessions.emplace(id, std::move(s));
    }
    SendJson(res, 201, {{"session_id", id}});
  }

  // Runs an operator from a request body, returning the log entry.
  Operation RunOperator(const Session& s, const json& body, const std::string& kind,
                        const std::optional<QuasiIdentifier>& qid, std::size_t k) {
    if (kind == "recode") {
      const auto variable = FieldAs<std::string>(body, "variable");
      const auto level = FieldAs<std::size_t>(body, "level");
      s.current.schema().IndexOf(variable);
      const auto text = FieldAs<std::string>(body, "hierarchy");
      std::optional<GeneralizationHierarchy> hierarchy;
      try {
        hierarchy.emplace(GeneralizationHierarchy::FromCsv(text, variable));
      } catch (const Error& e) {
        Fail(ErrorKind::kPrecondition, e.what());
      }
      if (level > hierarchy->height())
        Fail(ErrorKind::kUsage, "level " + std::to_string(level) + " exceeds hierarchy height " +
                                    std::to_string(hierarchy->height()));
      hierarchy->CheckCovers(s.current);
      return MakeRecodeOp(*hierarchy, level);
    }
    if (kind == "truncate") {
      const auto variable = FieldAs<std::string>(body, "variable");
      s.current.schema().IndexOf(variable);
      const auto digits = FieldAs<std::size_t>(body, "digits");
      if (digits < 1) Fail(ErrorKind::kUsage, "digits must be at least 1");
      return TruncateOp{variable, digits};
    }
    const double r_star = ThresholdForK(k);
    if (kind == "suppress") {
      ImportanceWeights importance;
      if (body.contains("importance")) {
        if (!body["importance"].is_object())
          Fail(ErrorKind::kUsage, "importance must be an object of weights");
        for (const auto& [name, w] : body["importance"].items()) {
          if (!w.is_number()) Fail(ErrorKind::kUsage, "importance of '" + name + "' is not a number");
          importance[name] = w.get<double>();
        }
      }
      auto result = LocalSuppress(s.current, *qid, r_star, importance);
      return SuppressOp{qid->ToString(), r_star, std::move(result.cells)};
    }
    if (kind == "delete") {
      auto result = CasewiseDelete(s.current, *qid, r_star);
      return DeleteOp{qid->ToString(), r_star, std::move(result.deleted)};
    }
    Fail(ErrorKind::kUsage, "unknown operation '" + kind + "'");
  }

  void ApplyOp(const httplib::Request& req, httplib::Response& res) {
    auto s = FindSession(req.path_params.at("id"));
    std::lock_guard lock(s->mu);
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      Fail(ErrorKind::kUsage, "request body must be JSON");
    }
    const auto kind = FieldAs<std::string>(body, "op");
    std::string qid_text = s->qid;
    if (body.contains("qid")) qid_text = QidParam(FieldAs<std::string>(body, "qid"));
    std::size_t k = s->k;
    if (body.contains("k")) k = ParseK(std::to_string(FieldAs<long long>(body, "k")));
    // Recode and truncate act on one variable; a qid only feeds the risk payload.
    const bool needs_qid = kind == "suppress" || kind == "delete";
    if (needs_qid && qid_text.empty()) Fail(ErrorKind::kUsage, "no quasi-identifier given");
    std::optional<QuasiIdentifier> qid;
    if (!qid_text.empty()) {
      qid = QuasiIdentifier::Parse(qid_text);
      qid->Resolve(s->current.schema());
    }

    std::optional<std::size_t> unsafe_before;
    if (qid) unsafe_before = CountUnsafe(EffectiveSizes(s->current, *qid), ThresholdForK(k));
    const auto accounting_before = AccountSuppression(*s->original, s->current);

    Operation op = RunOperator(*s, body, kind, qid, k);
    Microdata next = Apply(s->current, op);
    s->current = std::move(next);
    s->log.push_back(op);
    PersistSession(*s);

    const auto accounting_after = AccountSuppression(*s->original, s->current);
    json suppressed = json::object();
    for (std::size_t v = 0; v < accounting_after.suppressed_cells.size(); ++v)
      suppressed[accounting_after.suppressed_cells[v].first] =
          accounting_after.suppressed_cells[v].second - accounting_before.suppressed_cells[v].second;
    json out = {{"entry", json::parse(OperationToJson(op))},
                {"description", DescribeOp(op)},
                {"depth", s->log.size()},
                {"unsafe_before", nullptr},
                {"risk", nullptr},
                {"suppressed_cells", suppressed},
                {"deleted_records",
                 accounting_after.deleted_records - accounting_before.deleted_records}};
    if (qid) {
      out["unsafe_before"] = *unsafe_before;
      out["risk"] = RiskPayload(*s, *qid, k);
    }
    SendJson(res, 200, out);
  }

  void Undo(const httplib::Request& req, httplib::Response& res) {
    auto s = FindSession(req.path_params.at("id"));
    std::lock_guard lock(s->mu);
    if (s->log.empty()) Fail(ErrorKind::kConflict, "nothing to undo");
    s->log.pop_back();
    s->current = Replay(*s->original, s->log);
    PersistSession(*s);
    json out = {{"depth", s->log.size()}, {"record_count", s->current.record_count()}};
    if (!s->qid.empty()) out["risk"] = RiskPayload(*s, QuasiIdentifier::Parse(s->qid), s->k);
    SendJson(res, 200, out);
  }

  void Report(const httplib::Request& req, httplib::Response& res) {
    auto s = FindSession(req.path_params.at("id"));
    std::lock_guard lock(s->mu);
    auto list = [&](const char* param) {
      std::string text = req.has_param(param) ? QidParam(req.get_param_value(param)) : s->qid;
      auto qids = QuasiIdentifier::ParseList(text);
      for (const auto& q : qids) q.Resolve(s->original->schema());
      return qids;
    };
    const auto eval = list("eval_qid");
    const auto loss = list("loss_qid");
    const LabeledDataset published[] = {{"session", s->current}};
    const auto report = BuildComparisonReport(*s->original, published, eval, loss);
    res.status = 200;
    res.set_content(Render(report, ReportFormat::kJson), "application/json");
  }
};

Service::Service(std::string data_dir) : impl_(std::make_unique<Impl>(std::move(data_dir))) {}

Service::~Service() { Stop(); }

int Service::BindToAnyPort(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool Service::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void Service::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace sdc
