// SPDX-License-Identifier: Apache-2.0
//
// sdc: command-line front end over the C library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdc/sdc.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Failure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(sdc_status status) { return status == SDC_E_USAGE ? kExitUsage : kExitData; }

void Check(sdc_status status) {
  if (status != SDC_OK) throw Failure{ExitCodeFor(status), sdc_last_error()};
}

struct DatasetDeleter {
  void operator()(sdc_dataset* ds) const { sdc_dataset_free(ds); }
};
struct ResultDeleter {
  void operator()(sdc_result* r) const { sdc_result_free(r); }
};
using Dataset = std::unique_ptr<sdc_dataset, DatasetDeleter>;
using Result = std::unique_ptr<sdc_result, ResultDeleter>;

std::string Take(char* s) {
  std::string out(s);
  sdc_string_free(s);
  return out;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitData, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kExitData, "cannot write " + path};
}

Dataset Load(const std::string& csv, const std::string& schema) {
  sdc_dataset* ds = nullptr;
  Check(sdc_dataset_load_files(csv.c_str(), schema.c_str(), &ds));
  return Dataset(ds);
}

std::string CsvOf(const sdc_dataset* ds, bool with_ids) {
  char* text = nullptr;
  Check(sdc_dataset_to_csv(ds, with_ids ? 1 : 0, &text));
  return Take(text);
}

struct AnalyzeArgs {
  std::string input, schema, qids, format = "text";
};

struct AnonymizeArgs {
  std::string input, schema, qids, plan, finisher = "suppress", importance, hierarchies;
  std::string out, log, summary;
  std::size_t k = 2;
  bool record_ids = true;
};

struct CompareArgs {
  std::string original, schema, eval, loss, format = "text";
  std::vector<std::string> published;
};

struct GenerateArgs {
  std::string spec, out, schema_out;
};

struct ServeArgs {
  std::string host = "127.0.0.1", data_dir = "sdc-data";
  int port = 8080;
};

void RunAnalyze(const AnalyzeArgs& a) {
  const auto ds = Load(a.input, a.schema);
  char* text = nullptr;
  Check(sdc_analyze(ds.get(), a.qids.c_str(), a.format.c_str(), &text));
  std::cout << Take(text);
}

void RunAnonymize(const AnonymizeArgs& a) {
  const auto ds = Load(a.input, a.schema);
  std::string plan_text;
  std::string base_dir;
  if (!a.plan.empty()) {
    plan_text = Slurp(a.plan);
    base_dir = std::filesystem::path(a.plan).parent_path().string();
  }
  sdc_anonymize_options options{};
  options.qids = a.qids.c_str();
  options.k = a.k;
  options.plan_json = plan_text.c_str();
  options.plan_base_dir = base_dir.c_str();
  options.hierarchies = a.hierarchies.c_str();
  options.finisher = a.finisher.c_str();
  options.importance = a.importance.c_str();

  sdc_result* raw = nullptr;
  Check(sdc_anonymize(ds.get(), &options, &raw));
  const Result result(raw);

  sdc_dataset* published = nullptr;
  Check(sdc_result_published(result.get(), &published));
  const Dataset out(published);
  Spill(a.out, CsvOf(out.get(), a.record_ids));

  char* text = nullptr;
  Check(sdc_result_log_json(result.get(), &text));
  Spill(a.log, Take(text));
  if (!a.summary.empty()) {
    Check(sdc_result_summary_json(result.get(), &text));
    Spill(a.summary, Take(text));
  }
  Check(sdc_result_steps_text(result.get(), &text));
  std::cout << Take(text);
}

void RunReplay(const std::string& input, const std::string& schema, const std::string& log,
               const std::string& out_path, bool record_ids) {
  const auto ds = Load(input, schema);
  const auto log_text = Slurp(log);
  sdc_dataset* raw = nullptr;
  Check(sdc_replay(ds.get(), log_text.c_str(), &raw));
  const Dataset out(raw);
  Spill(out_path, CsvOf(out.get(), record_ids));
}

void RunCompare(const CompareArgs& a) {
  const auto original = Load(a.original, a.schema);
  std::vector<std::string> labels;
  std::vector<Dataset> owned;
  for (const auto& item : a.published) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw Failure{kExitUsage, "--published expects label=FILE, got '" + item + "'"};
    labels.push_back(item.substr(0, eq));
    owned.push_back(Load(item.substr(eq + 1), a.schema));
  }
  std::vector<const char*> label_ptrs;
  std::vector<const sdc_dataset*> data_ptrs;
  for (std::size_t i = 0; i < owned.size(); ++i) {
    label_ptrs.push_back(labels[i].c_str());
    data_ptrs.push_back(owned[i].get());
  }
  char* text = nullptr;
  Check(sdc_compare(original.get(), owned.size(), label_ptrs.data(), data_ptrs.data(),
                    a.eval.c_str(), a.loss.c_str(), a.format.c_str(), &text));
  std::cout << Take(text);
}

void RunGenerate(const GenerateArgs& a) {
  const auto spec = Slurp(a.spec);
  sdc_dataset* raw = nullptr;
  Check(sdc_generate(spec.c_str(), &raw));
  const Dataset ds(raw);
  Spill(a.out, CsvOf(ds.get(), false));
  if (!a.schema_out.empty()) {
    char* text = nullptr;
    Check(sdc_dataset_schema_json(ds.get(), &text));
    Spill(a.schema_out, Take(text));
  }
  std::cerr << "wrote " << sdc_dataset_record_count(ds.get()) << " records to " << a.out << "\n";
}

void RunServe(const ServeArgs& a) {
  sdc_server* server = nullptr;
  Check(sdc_server_create(a.data_dir.c_str(), &server));
  std::unique_ptr<sdc_server, void (*)(sdc_server*)> guard(server, sdc_server_free);
  int bound = 0;
  Check(sdc_server_bind(server, a.host.c_str(), a.port, &bound));
  std::cerr << "listening on http://" << a.host << ":" << bound << "\n";
  Check(sdc_server_listen(server));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical disclosure control for microdata"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sdc_version()));

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Anonymity set summary per quasi-identifier");
  cmd_analyze->add_option("--input", analyze.input, "CSV file")->required();
  cmd_analyze->add_option("--schema", analyze.schema, "Schema JSON")->required();
  cmd_analyze->add_option("--qid", analyze.qids, "Quasi-identifiers, e.g. zc+gender,pob")
      ->required();
  cmd_analyze->add_option("--format", analyze.format, "text | csv | json");

  AnonymizeArgs anon;
  auto* cmd_anon = app.add_subcommand("anonymize", "Recode, then suppress or delete to k");
  cmd_anon->add_option("--input", anon.input, "CSV file")->required();
  cmd_anon->add_option("--schema", anon.schema, "Schema JSON")->required();
  cmd_anon->add_option("--qid", anon.qids, "Quasi-identifiers to protect")->required();
  cmd_anon->add_option("--k", anon.k, "Minimum anonymity set size")->required()->check(
      CLI::PositiveNumber);
  cmd_anon->add_option("--plan", anon.plan, "Recode plan JSON");
  cmd_anon->add_option("--finisher", anon.finisher, "suppress | delete");
  cmd_anon->add_option("--importance", anon.importance, "Suppression weights, e.g. pob=1,zc=3");
  cmd_anon->add_option("--hierarchy", anon.hierarchies,
                       "Hierarchy files for plan steps without a path, e.g. yob=yob.csv");
  cmd_anon->add_option("--out", anon.out, "Published CSV")->required();
  cmd_anon->add_option("--log", anon.log, "Operation log JSON")->required();
  cmd_anon->add_option("--summary", anon.summary, "Risk and loss summary JSON");
  cmd_anon->add_flag("!--no-record-ids", anon.record_ids, "Omit the _rid column from --out");

  std::string replay_input, replay_schema, replay_log, replay_out;
  bool replay_ids = true;
  auto* cmd_replay = app.add_subcommand("replay", "Re-apply an operation log to the original");
  cmd_replay->add_option("--input", replay_input, "Original CSV")->required();
  cmd_replay->add_option("--schema", replay_schema, "Schema JSON")->required();
  cmd_replay->add_option("--log", replay_log, "Operation log JSON")->required();
  cmd_replay->add_option("--out", replay_out, "Published CSV")->required();
  cmd_replay->add_flag("!--no-record-ids", replay_ids, "Omit the _rid column");

  CompareArgs compare;
  auto* cmd_compare = app.add_subcommand("compare", "Risk and information loss side by side");
  cmd_compare->add_option("--original", compare.original, "Original CSV")->required();
  cmd_compare->add_option("--schema", compare.schema, "Schema JSON")->required();
  cmd_compare->add_option("--published", compare.published, "label=FILE, repeatable")
      ->required()
      ->delimiter(',');
  cmd_compare->add_option("--eval-qid", compare.eval, "Quasi-identifiers for risk rows");
  cmd_compare->add_option("--loss-qid", compare.loss, "Quasi-identifiers for loss rows");
  cmd_compare->add_option("--format", compare.format, "text | csv | json");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Synthesize a dataset from a generator spec");
  cmd_gen->add_option("--spec", gen.spec, "Generator spec JSON")->required();
  cmd_gen->add_option("--out", gen.out, "Output CSV")->required();
  cmd_gen->add_option("--schema-out", gen.schema_out, "Write the schema JSON here");

  ServeArgs serve;
  auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP session service");
  cmd_serve->add_option("--port", serve.port, "TCP port, 0 for any")->check(CLI::Range(0, 65535));
  cmd_serve->add_option("--host", serve.host, "Bind address");
  cmd_serve->add_option("--data-dir", serve.data_dir, "Dataset and session store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_analyze) RunAnalyze(analyze);
    if (*cmd_anon) RunAnonymize(anon);
    if (*cmd_replay) RunReplay(replay_input, replay_schema, replay_log, replay_out, replay_ids);
    if (*cmd_compare) RunCompare(compare);
    if (*cmd_gen) RunGenerate(gen);
    if (*cmd_serve) RunServe(serve);
  } catch (const Failure& f) {
    std::cerr << "sdc: " << f.message << "\n";
    return f.exit_code;
  }
  return 0;
}
