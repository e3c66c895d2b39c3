// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>

#include "doctest.h"
#include "sdc/csv.hpp"
#include "sdc/error.hpp"
#include "sdc/microdata.hpp"
#include "support.hpp"

using namespace sdc;
using sdctest::KindOf;
using sdctest::kMiss;
using sdctest::MessageOf;

namespace {

const char* kSchema = R"({"variables":[
  {"name":"zc","kind":"categorical"},
  {"name":"gender","kind":"categorical"},
  {"name":"yob","kind":"numerical"}]})";

}  // namespace

TEST_CASE("schema parses in document order") {
  const auto s = DatasetSchema::FromJson(kSchema);
  REQUIRE(s.size() == 3);
  CHECK(s.at(0).name == "zc");
  CHECK(s.at(2).kind == VariableKind::kNumerical);
  CHECK(s.at(1).missing_marker.empty());
  CHECK(DatasetSchema::FromJson(s.ToJson()) == s);
}

TEST_CASE("schema rejects duplicates, unknown kinds and empty lists") {
  CHECK(KindOf([] {
          DatasetSchema::FromJson(R"({"variables":[{"name":"zc"},{"name":"zc"}]})");
        }) == ErrorKind::kData);
  CHECK(MessageOf([] {
          DatasetSchema::FromJson(R"({"variables":[{"name":"zc"},{"name":"zc"}]})");
        }).find("duplicate") != std::string::npos);
  CHECK(MessageOf([] {
          DatasetSchema::FromJson(R"({"variables":[{"name":"a","kind":"fuzzy"}]})");
        }).find("unknown kind") != std::string::npos);
  CHECK(KindOf([] { DatasetSchema::FromJson(R"({"variables":[]})"); }) == ErrorKind::kData);
  CHECK(KindOf([] { DatasetSchema::FromJson("not json"); }) == ErrorKind::kData);
}

TEST_CASE("load_table reorders columns and maps the missing marker") {
  const auto schema = DatasetSchema::FromJson(
      R"({"variables":[{"name":"zc"},{"name":"gender"},{"name":"yob","missing":"?"}]})");
  const auto data = LoadTable("yob,zc,gender\n1960,59123,M\n?,59124,F\n", schema);
  REQUIRE(data.record_count() == 2);
  CHECK(data.cell(0, 0) == Cell("59123"));
  CHECK(data.cell(0, 2) == Cell("1960"));
  CHECK_FALSE(data.cell(1, 2).has_value());
  CHECK(data.ids()[1] == 1);
}

TEST_CASE("empty string is a value unless it is the marker") {
  const auto schema =
      DatasetSchema::FromJson(R"({"variables":[{"name":"a","missing":"NA"},{"name":"b"}]})");
  const auto data = LoadTable("a,b\n,x\nNA,\n", schema);
  CHECK(data.cell(0, 0) == Cell(""));
  CHECK_FALSE(data.cell(1, 0).has_value());
  CHECK_FALSE(data.cell(1, 1).has_value());
}

TEST_CASE("arity errors cite the data row") {
  const auto schema = DatasetSchema::FromJson(
      R"({"variables":[{"name":"a"},{"name":"b"},{"name":"c"},{"name":"d"},{"name":"e"}]})");
  std::string csv = "a,b,c,d,e\n";
  for (int r = 1; r <= 20; ++r) csv += (r == 17) ? "1,2,3,4\n" : "1,2,3,4,5\n";
  const auto msg = MessageOf([&] { LoadTable(csv, schema); });
  CHECK(msg.find("row 17") != std::string::npos);
  CHECK(msg.find("4 cells") != std::string::npos);
}

TEST_CASE("header must match the schema") {
  const auto schema = DatasetSchema::FromJson(R"({"variables":[{"name":"a"},{"name":"b"}]})");
  CHECK(KindOf([&] { LoadTable("a,c\n1,2\n", schema); }) == ErrorKind::kData);
  CHECK(KindOf([&] { LoadTable("a\n1\n", schema); }) == ErrorKind::kData);
  CHECK(KindOf([&] { LoadTable("a,b,a\n1,2,3\n", schema); }) == ErrorKind::kData);
  CHECK(KindOf([&] { LoadTable("", schema); }) == ErrorKind::kData);
}

TEST_CASE("record id column survives a round trip") {
  const auto schema = DatasetSchema::FromJson(R"({"variables":[{"name":"a"}]})");
  const auto data = LoadTable("_rid,a\n7,x\n3,y\n", schema);
  CHECK(data.id(0) == 7);
  CHECK(data.id(1) == 3);
  CHECK(WriteCsv(data, {true}) == "_rid,a\n7,x\n3,y\n");
  CHECK(WriteCsv(data) == "a\nx\ny\n");
  CHECK(KindOf([&] { LoadTable("_rid,a\n1,x\n1,y\n", schema); }) == ErrorKind::kData);
  CHECK(KindOf([&] { LoadTable("_rid,a\n-1,x\n", schema); }) == ErrorKind::kData);
}

TEST_CASE("csv parser handles quoting, CRLF and BOM") {
  const auto recs = ParseCsv("\xEF\xBB\xBF" "a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].fields[0] == "a");
  CHECK(recs[1].fields[0] == "x,1");
  CHECK(recs[1].fields[1] == "say \"hi\"");
  CHECK(recs[2].fields[0] == "multi\nline");
  CHECK(recs[2].line == 3);
  CHECK(FormatCsvField("plain") == "plain");
  CHECK(FormatCsvField("a\"b") == "\"a\"\"b\"");
  CHECK(KindOf([] { ParseCsv("a,\"open\n"); }) == ErrorKind::kData);
}

TEST_CASE("load then write round-trips every present cell byte-exactly") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto rt = sdctest::MakeRandomTable(rng, {80, 4, 5, 0.15});
    // Values that need quoting.
    std::vector<std::vector<Cell>> rows;
    for (std::size_t i = 0; i < rt.data.record_count(); ++i) {
      std::vector<Cell> row;
      for (std::size_t v = 0; v < rt.data.variable_count(); ++v) {
        auto c = rt.data.cell(i, v);
        if (c && (i + v) % 7 == 0) *c += ",\"q\"\n";
        row.push_back(c);
      }
      rows.push_back(row);
    }
    std::vector<VariableMeta> vars;
    for (std::size_t v = 0; v < rt.data.variable_count(); ++v)
      vars.push_back({rt.data.schema().at(v).name, VariableKind::kString, "<NA>"});
    const auto data = Microdata::FromRows(DatasetSchema(vars), rows);
    const auto text = WriteCsv(data, {true});
    const auto back = LoadTable(text, data.schema());
    CHECK(back.ContentEquals(data));
    CHECK(WriteCsv(back, {true}) == text);
  }
}

TEST_CASE("project_qid selects columns in qid order") {
  const auto data = sdctest::Table({"gender", "yob"}, {{"M", "1960"}, {"F", "1961"}});
  const auto one = ProjectQid(data, QuasiIdentifier::Parse("gender"));
  REQUIRE(one.size() == 2);
  CHECK(one.arity() == 1);
  CHECK(one.cell(0, 0) == Cell("M"));
  CHECK(one.cell(1, 0) == Cell("F"));
  const auto two = ProjectQid(data, QuasiIdentifier::Parse("yob+gender"));
  CHECK(two.cell(0, 0) == Cell("1960"));
  CHECK(two.cell(1, 1) == Cell("F"));
  CHECK(KindOf([&] { ProjectQid(data, QuasiIdentifier::Parse("height")); }) ==
        ErrorKind::kUsage);
}

TEST_CASE("project_qid length equals record count") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto rt = sdctest::MakeRandomTable(rng, {50, 5, 4, 0.2});
    CHECK(ProjectQid(rt.data, rt.qid).size() == rt.data.record_count());
  }
}

TEST_CASE("quasi-identifier parsing") {
  CHECK(QuasiIdentifier::Parse("zc+gender+yob").size() == 3);
  CHECK(QuasiIdentifier::Parse("zc+gender").ToString() == "zc+gender");
  CHECK(QuasiIdentifier::ParseList("zc,gender+pob").size() == 2);
  CHECK(QuasiIdentifier::ParseList("").empty());
  CHECK(KindOf([] { QuasiIdentifier::Parse("zc+zc"); }) == ErrorKind::kUsage);
  CHECK(KindOf([] { QuasiIdentifier::Parse(""); }) == ErrorKind::kUsage);
  CHECK(KindOf([] { QuasiIdentifier::Parse("a++b"); }) == ErrorKind::kUsage);
}

TEST_CASE("truncate_date_to_year") {
  const auto schema = DatasetSchema({{"dob", VariableKind::kDate, ""}});
  const auto data = Microdata::FromRows(schema, {{"1964-12-04"}, {kMiss}, {"2000-02-29"}});
  const auto out = TruncateDateToYear(data, "dob");
  CHECK(out.cell(0, 0) == Cell("1964"));
  CHECK_FALSE(out.cell(1, 0).has_value());
  CHECK(out.cell(2, 0) == Cell("2000"));
  CHECK(out.schema().at(0).kind == VariableKind::kCategorical);
  CHECK(out.record_count() == data.record_count());
  CHECK(data.cell(0, 0) == Cell("1964-12-04"));

  const auto bad = Microdata::FromRows(schema, {{"1964-12-04"}, {"64-12-04"}});
  CHECK(KindOf([&] { TruncateDateToYear(bad, "dob"); }) == ErrorKind::kData);
  CHECK(MessageOf([&] { TruncateDateToYear(bad, "dob"); }).find("row 2") != std::string::npos);
  const auto not_leap = Microdata::FromRows(schema, {{"1900-02-29"}});
  CHECK(KindOf([&] { TruncateDateToYear(not_leap, "dob"); }) == ErrorKind::kData);
  const auto cat = sdctest::Column("dob", {"1964-12-04"});
  CHECK(KindOf([&] { TruncateDateToYear(cat, "dob"); }) == ErrorKind::kUsage);
}

TEST_CASE("select rows keeps identifiers") {
  const auto data = sdctest::Column("a", {"x", "y", "z"});
  const std::size_t keep[] = {0, 2};
  const auto sub = data.SelectRows(keep);
  CHECK(sub.record_count() == 2);
  CHECK(sub.id(1) == 2);
  CHECK(sub.cell(1, 0) == Cell("z"));
}
