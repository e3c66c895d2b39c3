// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include "doctest.h"
#include "sdc/anonymity.hpp"
#include "sdc/csv.hpp"
#include "sdc/datagen.hpp"
#include "sdc/error.hpp"
#include "support.hpp"

using namespace sdc;
using sdctest::KindOf;

namespace {

std::string SkewedSpec(std::size_t n) {
  std::string values = R"([{"value":"Local","weight":90})";
  for (int i = 0; i < 21; ++i)
    values += R"(,{"value":"P)" + std::to_string(i) + R"(","weight":0.47619047619047616})";
  values += "]";
  return R"({"name":"skew","record_count":)" + std::to_string(n) +
         R"(,"seed":7,"variables":[{"name":"pob","kind":"categorical","values":)" + values +
         "}]}";
}

}  // namespace

TEST_CASE("draw source is the standard 64-bit Mersenne Twister") {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  UniformSource source(5489u);
  for (int i = 0; i < 9999; ++i) source.Next();
  const double expect = static_cast<double>(9981545732273789042ull >> 11) * 0x1.0p-53;
  CHECK(source.Next() == expect);
}

TEST_CASE("generation is deterministic and matches the shipped corpus") {
  const auto text = ReadFile(sdctest::DataPath("kw-synth-1000.json"));
  const auto a = WriteCsv(Generate(GeneratorSpec::FromJson(text)));
  const auto b = WriteCsv(Generate(GeneratorSpec::FromJson(text)));
  CHECK(a == b);
  CHECK(a == ReadFile(sdctest::DataPath("kw-synth-1000.csv")));
  const auto schema = DatasetSchema::FromJson(ReadFile(sdctest::DataPath("kw-synth-1000.schema.json")));
  CHECK(GeneratorSpec::FromJson(text).Schema() == schema);
}

TEST_CASE("corpus shape") {
  const auto& corpus = sdctest::Corpus();
  CHECK(corpus.record_count() == 1000);
  const auto& s = corpus.schema();
  CHECK(corpus.column(s.IndexOf("zc")).dictionary().size() == 38);
  CHECK(corpus.column(s.IndexOf("pob")).dictionary().size() == 22);
  CHECK(corpus.column(s.IndexOf("yob")).dictionary().size() == 35);
  for (std::size_t r = 0; r < corpus.record_count(); ++r)
    CHECK(corpus.cell(r, s.IndexOf("yob")) == corpus.cell(r, s.IndexOf("dob"))->substr(0, 4));
  // Year of birth agrees with truncating the date column.
  const auto truncated = TruncateDateToYear(corpus, "dob");
  CHECK(truncated.column(s.IndexOf("dob")).codes().size() == 1000);
}

TEST_CASE("empty record count yields an empty table with schema") {
  auto spec = GeneratorSpec::FromJson(SkewedSpec(0));
  const auto data = Generate(spec);
  CHECK(data.record_count() == 0);
  CHECK(data.schema().size() == 1);
  CHECK(WriteCsv(data) == "pob\n");
}

TEST_CASE("dominant value forms the largest set, far above the third quartile") {
  const auto data = Generate(GeneratorSpec::FromJson(SkewedSpec(1000)));
  const auto p = PartitionComplete(data, QuasiIdentifier::Parse("pob")).partition;
  const auto s = Summarize(p.profile);
  std::size_t local = 0;
  for (std::size_t r = 0; r < data.record_count(); ++r) local += data.cell(r, 0) == Cell("Local");
  CHECK(s.max == static_cast<double>(local));
  CHECK(s.max > 10 * s.q3);
}

TEST_CASE("empirical frequencies lie within three standard deviations") {
  const auto text = ReadFile(sdctest::DataPath("kw-synth-1000.json"));
  auto spec = GeneratorSpec::FromJson(text);
  spec.record_count = 5000;
  const auto data = Generate(spec);
  const double n = static_cast<double>(data.record_count());
  for (std::size_t v = 0; v < spec.variables.size(); ++v) {
    const auto& var = spec.variables[v];
    if (var.values.empty()) continue;
    double total = 0;
    for (const auto& w : var.values) total += w.weight;
    std::map<std::string, double> seen;
    for (std::size_t r = 0; r < data.record_count(); ++r) seen[*data.cell(r, v)] += 1;
    for (const auto& w : var.values) {
      const double p = w.weight / total;
      const double sd = std::sqrt(n * p * (1 - p));
      CAPTURE(var.meta.name);
      CAPTURE(w.value);
      CHECK(std::abs(seen[w.value] - n * p) <= 3 * sd + 1e-9);
    }
  }
}

TEST_CASE("invalid generator specs") {
  CHECK(KindOf([] { GeneratorSpec::FromJson("{"); }) == ErrorKind::kData);
  CHECK(KindOf([] {
          GeneratorSpec::FromJson(
              R"({"record_count":1,"seed":1,"variables":[{"name":"a","values":[{"value":"x","weight":0}]}]})");
        }) == ErrorKind::kData);
  CHECK(KindOf([] {
          GeneratorSpec::FromJson(R"({"record_count":1,"seed":1,"variables":[{"name":"a","values":[]}]})");
        }) == ErrorKind::kData);
  CHECK(KindOf([] {
          GeneratorSpec::FromJson(
              R"({"record_count":1,"seed":1,"variables":[{"name":"a","kind":"date","years":[1970,1960]}]})");
        }) == ErrorKind::kData);
  CHECK(KindOf([] {
          GeneratorSpec::FromJson(
              R"({"record_count":1,"seed":1,"variables":[{"name":"y","year_of":"dob"}]})");
        }) == ErrorKind::kData);
  CHECK(KindOf([] {
          GeneratorSpec::FromJson(R"({"record_count":1,"seed":1,"variables":[{"name":"a"}]})");
        }) == ErrorKind::kData);
}
