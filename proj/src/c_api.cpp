// SPDX-License-Identifier: Apache-2.0

#include "sdc/sdc.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <new>
#include <string>

#include "sdc/anonymity.hpp"
#include "sdc/anonymizer.hpp"
#include "sdc/csv.hpp"
#include "sdc/datagen.hpp"
#include "sdc/error.hpp"
#include "sdc/report.hpp"
#include "sdc/risk.hpp"
#include "sdc/service.hpp"

struct sdc_dataset {
  sdc::Microdata data;
};

struct sdc_result {
  sdc::AnonymizationResult result;
};

struct sdc_server {
  explicit sdc_server(std::string dir) : service(std::move(dir)) {}
  sdc::Service service;
};

namespace {

thread_local std::string last_error;

sdc_status Code(sdc::ErrorKind kind) {
  switch (kind) {
    case sdc::ErrorKind::kUsage:
      return SDC_E_USAGE;
    case sdc::ErrorKind::kData:
      return SDC_E_DATA;
    case sdc::ErrorKind::kPrecondition:
      return SDC_E_PRECONDITION;
    case sdc::ErrorKind::kUndefined:
      return SDC_E_UNDEFINED;
    case sdc::ErrorKind::kNotFound:
      return SDC_E_NOT_FOUND;
    case sdc::ErrorKind::kConflict:
      return SDC_E_CONFLICT;
  }
  return SDC_E_INTERNAL;
}

template <typename Body>
sdc_status Guard(Body body) {
  try {
    body();
    return SDC_OK;
  } catch (const sdc::Error& e) {
    last_error = e.what();
    return Code(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return SDC_E_INTERNAL;
}

void Require(const void* p, const char* what) {
  if (!p) sdc::Fail(sdc::ErrorKind::kUsage, std::string(what) + " is null");
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string Text(const char* s) { return s ? std::string(s) : std::string(); }

// "a=x,b=y"
std::map<std::string, std::string> ParsePairs(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const auto item = text.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      sdc::Fail(sdc::ErrorKind::kUsage, "expected var=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
    start = end + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* sdc_version(void) { return "1.0.0"; }

const char* sdc_last_error(void) { return last_error.c_str(); }

void sdc_string_free(char* s) { std::free(s); }

sdc_status sdc_dataset_load(const char* csv_text, const char* schema_json, sdc_dataset** out) {
  return Guard([&] {
    Require(csv_text, "csv text");
    Require(schema_json, "schema");
    Require(out, "output handle");
    const auto schema = sdc::DatasetSchema::FromJson(schema_json);
    *out = new sdc_dataset{sdc::LoadTable(csv_text, schema)};
  });
}

sdc_status sdc_dataset_load_files(const char* csv_path, const char* schema_path,
                                  sdc_dataset** out) {
  return Guard([&] {
    Require(csv_path, "csv path");
    Require(schema_path, "schema path");
    Require(out, "output handle");
    const auto schema = sdc::DatasetSchema::FromJson(sdc::ReadFile(schema_path));
    *out = new sdc_dataset{sdc::LoadTable(sdc::ReadFile(csv_path), schema)};
  });
}

void sdc_dataset_free(sdc_dataset* ds) { delete ds; }

size_t sdc_dataset_record_count(const sdc_dataset* ds) {
  return ds ? ds->data.record_count() : 0;
}

sdc_status sdc_dataset_to_csv(const sdc_dataset* ds, int with_record_ids, char** out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(out, "output string");
    *out = Copy(sdc::WriteCsv(ds->data, {with_record_ids != 0}));
  });
}

sdc_status sdc_dataset_schema_json(const sdc_dataset* ds, char** out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(out, "output string");
    *out = Copy(ds->data.schema().ToJson());
  });
}

sdc_status sdc_dataset_truncate_date(const sdc_dataset* ds, const char* variable,
                                     sdc_dataset** out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(variable, "variable");
    Require(out, "output handle");
    *out = new sdc_dataset{sdc::TruncateDateToYear(ds->data, variable)};
  });
}

sdc_status sdc_generate(const char* spec_json, sdc_dataset** out) {
  return Guard([&] {
    Require(spec_json, "generator spec");
    Require(out, "output handle");
    *out = new sdc_dataset{sdc::Generate(sdc::GeneratorSpec::FromJson(spec_json))};
  });
}

sdc_status sdc_risk(const sdc_dataset* ds, const char* qid, size_t k, sdc_risk_summary* out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(qid, "qid");
    Require(out, "output summary");
    const auto q = sdc::QuasiIdentifier::Parse(qid);
    const double r_star = sdc::ThresholdForK(k);
    const auto profile = sdc::RecordRisks(ds->data, q);
    out->xi = sdc::GlobalRisk(ds->data, q);
    out->max_risk = profile.max_risk;
    out->unsafe_count = sdc::UnsafeRecords(ds->data, q, r_star).size();
    out->record_count = ds->data.record_count();
  });
}

sdc_status sdc_is_k_anonymous(const sdc_dataset* ds, const char* qid, size_t k, int* out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(qid, "qid");
    Require(out, "output flag");
    *out = sdc::IsKAnonymous(ds->data, sdc::QuasiIdentifier::Parse(qid), k) ? 1 : 0;
  });
}

sdc_status sdc_analyze(const sdc_dataset* ds, const char* qids, const char* format,
                       char** out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(out, "output string");
    const auto parsed = sdc::QuasiIdentifier::ParseList(Text(qids));
    const auto fmt = sdc::ParseReportFormat(format ? format : "text");
    *out = Copy(sdc::Render(sdc::BuildAnonymityReport(ds->data, parsed), fmt));
  });
}

sdc_status sdc_compare(const sdc_dataset* original, size_t count, const char* const* labels,
                       const sdc_dataset* const* published, const char* eval_qids,
                       const char* loss_qids, const char* format, char** out) {
  return Guard([&] {
    Require(original, "original dataset");
    Require(out, "output string");
    if (count > 0) {
      Require(labels, "labels");
      Require(published, "published datasets");
    }
    std::vector<sdc::LabeledDataset> columns;
    for (size_t i = 0; i < count; ++i) {
      Require(labels[i], "label");
      Require(published[i], "published dataset");
      columns.push_back({labels[i], published[i]->data});
    }
    const auto eval = sdc::QuasiIdentifier::ParseList(Text(eval_qids));
    const auto loss = sdc::QuasiIdentifier::ParseList(Text(loss_qids));
    const auto fmt = sdc::ParseReportFormat(format ? format : "text");
    *out = Copy(sdc::Render(sdc::BuildComparisonReport(original->data, columns, eval, loss), fmt));
  });
}

sdc_status sdc_anonymize(const sdc_dataset* ds, const sdc_anonymize_options* options,
                         sdc_result** out) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(options, "options");
    Require(out, "output handle");
    const auto qids = sdc::QuasiIdentifier::ParseList(Text(options->qids));
    const auto finisher = sdc::ParseFinisher(options->finisher ? options->finisher : "suppress");
    if (!finisher)
      sdc::Fail(sdc::ErrorKind::kUsage,
                "finisher must be 'suppress' or 'delete', got '" + Text(options->finisher) + "'");
    const auto fallback = ParsePairs(Text(options->hierarchies));
    const std::filesystem::path base = Text(options->plan_base_dir);

    sdc::HierarchyResolver resolver = [&](const std::string& variable,
                                          const std::optional<std::string>& path) {
      std::string file;
      if (path) {
        std::filesystem::path p(*path);
        file = (p.is_relative() && !base.empty() ? base / p : p).string();
      } else if (auto it = fallback.find(variable); it != fallback.end()) {
        file = it->second;
      } else {
        sdc::Fail(sdc::ErrorKind::kUsage, "no hierarchy given for '" + variable + "'");
      }
      return std::make_shared<const sdc::GeneralizationHierarchy>(
          sdc::GeneralizationHierarchy::FromCsv(sdc::ReadFile(file), variable));
    };
    const std::string plan_text = Text(options->plan_json);
    const auto plan = plan_text.empty() ? sdc::RecodePlan()
                                        : sdc::RecodePlan::FromJson(plan_text, resolver);
    const auto importance = sdc::ParseImportance(Text(options->importance));
    *out = new sdc_result{
        sdc::AchieveKAnonymity(ds->data, qids, options->k, plan, *finisher, importance)};
  });
}

void sdc_result_free(sdc_result* result) { delete result; }

sdc_status sdc_result_published(const sdc_result* result, sdc_dataset** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "output handle");
    *out = new sdc_dataset{result->result.published};
  });
}

sdc_status sdc_result_log_json(const sdc_result* result, char** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "output string");
    *out = Copy(sdc::OpLogToJson(result->result.op_log));
  });
}

sdc_status sdc_result_summary_json(const sdc_result* result, char** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "output string");
    *out = Copy(sdc::ResultSummaryJson(result->result));
  });
}

sdc_status sdc_result_steps_text(const sdc_result* result, char** out) {
  return Guard([&] {
    Require(result, "result");
    Require(out, "output string");
    *out = Copy(sdc::RenderSteps(result->result));
  });
}

sdc_status sdc_replay(const sdc_dataset* original, const char* log_json, sdc_dataset** out) {
  return Guard([&] {
    Require(original, "original dataset");
    Require(log_json, "log");
    Require(out, "output handle");
    *out = new sdc_dataset{sdc::Replay(original->data, sdc::OpLogFromJson(log_json))};
  });
}

sdc_status sdc_server_create(const char* data_dir, sdc_server** out) {
  return Guard([&] {
    Require(out, "output handle");
    *out = new sdc_server(Text(data_dir));
  });
}

sdc_status sdc_server_bind(sdc_server* server, const char* host, int port, int* bound_port) {
  return Guard([&] {
    Require(server, "server");
    const std::string h = host ? host : "127.0.0.1";
    int bound = port;
    if (port == 0) {
      bound = server->service.BindToAnyPort(h);
      if (bound < 0) sdc::Fail(sdc::ErrorKind::kUsage, "cannot bind " + h);
    } else if (!server->service.Bind(h, port)) {
      sdc::Fail(sdc::ErrorKind::kUsage, "cannot bind " + h + ":" + std::to_string(port));
    }
    if (bound_port) *bound_port = bound;
  });
}

sdc_status sdc_server_listen(sdc_server* server) {
  return Guard([&] {
    Require(server, "server");
    server->service.ListenAfterBind();
  });
}

void sdc_server_stop(sdc_server* server) {
  if (server) server->service.Stop();
}

void sdc_server_free(sdc_server* server) { delete server; }

}  // extern "C"
