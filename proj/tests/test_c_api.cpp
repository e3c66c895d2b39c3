// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared library through its C header only, and the command
// line tool as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "sdc/sdc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Data(const std::string& relative) { return std::string(SDC_DATA_DIR) + "/" + relative; }

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library-allocated string.
std::string Take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  sdc_string_free(s);
  return out;
}

struct DatasetHandle {
  sdc_dataset* ptr = nullptr;
  ~DatasetHandle() { sdc_dataset_free(ptr); }
};

sdc_dataset* LoadCorpus() {
  sdc_dataset* ds = nullptr;
  REQUIRE(sdc_dataset_load_files(Data("kw-synth-1000.csv").c_str(),
                                 Data("kw-synth-1000.schema.json").c_str(), &ds) == SDC_OK);
  return ds;
}

fs::path Scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sdc-capi-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int Run(const std::string& args, const fs::path& stdout_file = "/dev/null") {
  const std::string cmd =
      std::string(SDC_CLI_PATH) + " " + args + " >" + stdout_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string Corpus() {
  return "--input " + Data("kw-synth-1000.csv") + " --schema " + Data("kw-synth-1000.schema.json");
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(sdc_version()) == "1.0.0");
  sdc_dataset* ds = nullptr;
  CHECK(sdc_dataset_load(nullptr, "{}", &ds) == SDC_E_USAGE);
  CHECK(std::string(sdc_last_error()).find("csv") != std::string::npos);
  CHECK(ds == nullptr);
  CHECK(sdc_dataset_load("a\n1\n", "{", &ds) == SDC_E_DATA);
  CHECK(sdc_dataset_load("a,b\n1\n", R"({"variables":[{"name":"a"},{"name":"b"}]})", &ds) ==
        SDC_E_DATA);
  CHECK(std::string(sdc_last_error()).find("row 1") != std::string::npos);
  CHECK(sdc_dataset_load_files("/nonexistent.csv", "/nonexistent.json", &ds) == SDC_E_DATA);
  // Freeing null handles is a no-op.
  sdc_dataset_free(nullptr);
  sdc_result_free(nullptr);
  sdc_server_free(nullptr);
  sdc_string_free(nullptr);
}

TEST_CASE("dataset round-trip and risk through the c interface") {
  DatasetHandle ds{LoadCorpus()};
  CHECK(sdc_dataset_record_count(ds.ptr) == 1000);

  char* csv = nullptr;
  REQUIRE(sdc_dataset_to_csv(ds.ptr, 0, &csv) == SDC_OK);
  CHECK(Take(csv) == Slurp(Data("kw-synth-1000.csv")));
  char* schema = nullptr;
  REQUIRE(sdc_dataset_schema_json(ds.ptr, &schema) == SDC_OK);
  CHECK(json::parse(Take(schema)) == json::parse(Slurp(Data("kw-synth-1000.schema.json"))));

  sdc_risk_summary risk{};
  REQUIRE(sdc_risk(ds.ptr, "zc", 2, &risk) == SDC_OK);
  CHECK(risk.xi == doctest::Approx(38.0 / 1000).epsilon(1e-15));
  CHECK(risk.unsafe_count == 0);
  CHECK(risk.record_count == 1000);
  CHECK(sdc_risk(ds.ptr, "height", 2, &risk) == SDC_E_USAGE);
  CHECK(sdc_risk(ds.ptr, "zc", 0, &risk) == SDC_E_USAGE);

  int anon = -1;
  REQUIRE(sdc_is_k_anonymous(ds.ptr, "zc", 7, &anon) == SDC_OK);
  CHECK(anon == 1);
  REQUIRE(sdc_is_k_anonymous(ds.ptr, "zc", 8, &anon) == SDC_OK);
  CHECK(anon == 0);

  char* text = nullptr;
  REQUIRE(sdc_analyze(ds.ptr, "zc,gender+pob", "json", &text) == SDC_OK);
  const auto doc = json::parse(Take(text));
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["summary"]["set_count"] == 38);
  CHECK(sdc_analyze(ds.ptr, "zc", "xml", &text) == SDC_E_USAGE);

  DatasetHandle years;
  REQUIRE(sdc_dataset_truncate_date(ds.ptr, "dob", &years.ptr) == SDC_OK);
  CHECK(sdc_dataset_record_count(years.ptr) == 1000);
}

TEST_CASE("anonymize, replay and compare through the c interface") {
  DatasetHandle ds{LoadCorpus()};
  const std::string plan = Slurp(Data("plans/recode-first.json"));
  const std::string plans = Data("plans");
  sdc_anonymize_options options{};
  options.qids = "zc+gender+yob,gender+dor+pob";
  options.k = 2;
  options.plan_json = plan.c_str();
  options.plan_base_dir = plans.c_str();
  options.finisher = "suppress";

  sdc_result* result = nullptr;
  REQUIRE(sdc_anonymize(ds.ptr, &options, &result) == SDC_OK);
  DatasetHandle published;
  REQUIRE(sdc_result_published(result, &published.ptr) == SDC_OK);
  int anon = 0;
  REQUIRE(sdc_is_k_anonymous(published.ptr, "zc+gender+yob", 2, &anon) == SDC_OK);
  CHECK(anon == 1);
  REQUIRE(sdc_is_k_anonymous(published.ptr, "gender+dor+pob", 2, &anon) == SDC_OK);
  CHECK(anon == 1);

  char* log = nullptr;
  REQUIRE(sdc_result_log_json(result, &log) == SDC_OK);
  const auto log_text = Take(log);
  DatasetHandle replayed;
  REQUIRE(sdc_replay(ds.ptr, log_text.c_str(), &replayed.ptr) == SDC_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(sdc_dataset_to_csv(published.ptr, 1, &a) == SDC_OK);
  REQUIRE(sdc_dataset_to_csv(replayed.ptr, 1, &b) == SDC_OK);
  CHECK(Take(a) == Take(b));

  char* summary = nullptr;
  REQUIRE(sdc_result_summary_json(result, &summary) == SDC_OK);
  CHECK_FALSE(json::parse(Take(summary)).empty());
  char* steps = nullptr;
  REQUIRE(sdc_result_steps_text(result, &steps) == SDC_OK);
  CHECK(Take(steps).find("original") != std::string::npos);
  sdc_result_free(result);

  const char* labels[] = {"recode-first"};
  const sdc_dataset* pubs[] = {published.ptr};
  char* report = nullptr;
  REQUIRE(sdc_compare(ds.ptr, 1, labels, pubs, "zc+gender+yob", "gender+pob", "csv", &report) ==
          SDC_OK);
  CHECK(Take(report).find("recode-first") != std::string::npos);

  options.finisher = "shred";
  CHECK(sdc_anonymize(ds.ptr, &options, &result) == SDC_E_USAGE);
  options.finisher = "delete";
  options.plan_json = "[{\"variable\":\"yob\",\"level\":1}]";
  options.plan_base_dir = nullptr;
  CHECK(sdc_anonymize(ds.ptr, &options, &result) == SDC_E_USAGE);
  const std::string hier = "yob=" + Data("hierarchies/yob.csv");
  options.hierarchies = hier.c_str();
  REQUIRE(sdc_anonymize(ds.ptr, &options, &result) == SDC_OK);
  sdc_result_free(result);
  CHECK(sdc_replay(ds.ptr, "[{\"op\":\"bogus\"}]", &replayed.ptr) == SDC_E_DATA);
}

TEST_CASE("server lifecycle through the c interface") {
  const auto dir = Scratch("server");
  sdc_server* server = nullptr;
  REQUIRE(sdc_server_create(dir.c_str(), &server) == SDC_OK);
  int port = 0;
  REQUIRE(sdc_server_bind(server, "127.0.0.1", 0, &port) == SDC_OK);
  CHECK(port > 0);
  std::thread t([&] { sdc_server_listen(server); });
  httplib::Client c("127.0.0.1", port);
  auto r = c.Get("/api/sessions/none/summary");
  REQUIRE(r);
  CHECK(r->status == 404);
  sdc_server_stop(server);
  t.join();
  sdc_server_free(server);
  fs::remove_all(dir);
}

TEST_CASE("command line exit codes") {
  const auto dir = Scratch("cli");
  CHECK(Run("") == 1);
  CHECK(Run("frobnicate") == 1);
  CHECK(Run("analyze " + Corpus() + " --qid zc") == 0);
  CHECK(Run("analyze " + Corpus() + " --qid height") == 1);
  CHECK(Run("analyze " + Corpus() + " --qid zc --format xml") == 1);
  CHECK(Run("analyze --input /nonexistent.csv --schema " + Data("kw-synth-1000.schema.json") +
            " --qid zc") == 2);
  CHECK(Run("analyze --input " + Data("kw-synth-1000.json") + " --schema " +
            Data("kw-synth-1000.schema.json") + " --qid zc") == 2);
  CHECK(Run("anonymize " + Corpus() + " --qid zc --k 0 --out x --log y") == 1);
}

TEST_CASE("command line analyze output matches the library") {
  const auto dir = Scratch("analyze");
  REQUIRE(Run("analyze " + Corpus() + " --qid zc,gender+pob --format json", dir / "a.json") == 0);
  DatasetHandle ds{LoadCorpus()};
  char* text = nullptr;
  REQUIRE(sdc_analyze(ds.ptr, "zc,gender+pob", "json", &text) == SDC_OK);
  CHECK(Slurp(dir / "a.json") == Take(text));
  fs::remove_all(dir);
}

TEST_CASE("command line anonymize, replay, generate") {
  const auto dir = Scratch("pipeline");
  const auto out = dir / "pub.csv";
  const auto log = dir / "log.json";
  REQUIRE(Run("anonymize " + Corpus() + " --qid zc+gender+yob --k 2 --plan " +
              Data("plans/zc-yob.json") + " --finisher delete --out " + out.string() +
              " --log " + log.string() + " --summary " + (dir / "s.json").string()) == 0);
  const auto replayed = dir / "replayed.csv";
  REQUIRE(Run("replay " + Corpus() + " --log " + log.string() + " --out " + replayed.string()) ==
          0);
  CHECK(Slurp(out) == Slurp(replayed));
  CHECK(Slurp(out).rfind("_rid,", 0) == 0);

  REQUIRE(Run("generate --spec " + Data("kw-synth-1000.json") + " --out " +
              (dir / "gen.csv").string()) == 0);
  CHECK(Slurp(dir / "gen.csv") == Slurp(Data("kw-synth-1000.csv")));

  REQUIRE(Run("compare --original " + Data("kw-synth-1000.csv") + " --schema " +
                  Data("kw-synth-1000.schema.json") + " --published del=" + out.string() +
                  " --eval-qid zc+gender+yob --loss-qid gender+pob --format csv",
              dir / "cmp.csv") == 0);
  CHECK(Slurp(dir / "cmp.csv").find("deleted records") != std::string::npos);
  fs::remove_all(dir);
}
