// SPDX-License-Identifier: Apache-2.0

#include "sdc/datagen.hpp"

#include <chrono>
#include <cstdio>

#include "json.hpp"
#include "sdc/error.hpp"

namespace sdc {

using nlohmann::json;

GeneratorSpec GeneratorSpec::FromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("generator spec is not valid JSON: ") + e.what());
  }
  GeneratorSpec spec;
  try {
    spec.name = doc.value("name", std::string());
    spec.record_count = doc.at("record_count").get<std::size_t>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& v : doc.at("variables")) {
      GeneratedVariable g;
      g.meta.name = v.at("name").get<std::string>();
      const auto kind = v.value("kind", std::string("categorical"));
      auto parsed = ParseVariableKind(kind);
      if (!parsed) Fail(ErrorKind::kData, "unknown kind '" + kind + "' in generator spec");
      g.meta.kind = *parsed;
      g.meta.missing_marker = v.value("missing", std::string());
      int sources = 0;
      if (v.contains("values")) {
        ++sources;
        for (const auto& item : v["values"])
          g.values.push_back({item.at("value").get<std::string>(), item.at("weight").get<double>()});
        if (g.values.empty())
          Fail(ErrorKind::kData, "value pool of '" + g.meta.name + "' is empty");
        for (const auto& w : g.values)
          if (!(w.weight > 0))
            Fail(ErrorKind::kData, "weight of '" + w.value + "' in '" + g.meta.name +
                                       "' must be positive");
      }
      if (v.contains("years")) {
        ++sources;
        g.first_year = v["years"].at(0).get<int>();
        g.last_year = v["years"].at(1).get<int>();
        if (g.first_year > g.last_year || g.first_year < 1 || g.last_year > 9999)
          Fail(ErrorKind::kData, "invalid year range for '" + g.meta.name + "'");
      }
      if (v.contains("year_of")) {
        ++sources;
        g.year_of = v["year_of"].get<std::string>();
        bool found = false;
        for (const auto& earlier : spec.variables)
          if (earlier.meta.name == g.year_of && earlier.first_year != 0) found = true;
        if (!found)
          Fail(ErrorKind::kData, "'" + g.meta.name + "' takes the year of '" + g.year_of +
                                     "', which is not an earlier date variable");
      }
      if (sources != 1)
        Fail(ErrorKind::kData, "variable '" + g.meta.name +
                                   "' needs exactly one of values / years / year_of");
      spec.variables.push_back(std::move(g));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kData, std::string("malformed generator spec: ") + e.what());
  }
  spec.Schema();  // validates names
  return spec;
}

DatasetSchema GeneratorSpec::Schema() const {
  std::vector<VariableMeta> vars;
  for (const auto& v : variables) vars.push_back(v.meta);
  return DatasetSchema(std::move(vars));
}

Microdata Generate(const GeneratorSpec& spec) {
  using namespace std::chrono;
  const auto schema = spec.Schema();
  UniformSource source(spec.seed);

  struct Prepared {
    std::vector<double> cumulative;
    sys_days first{};
    long days = 0;
    std::size_t year_source = 0;
  };
  std::vector<Prepared> prepared(spec.variables.size());
  for (std::size_t i = 0; i < spec.variables.size(); ++i) {
    const auto& v = spec.variables[i];
    auto& p = prepared[i];
    double total = 0;
    for (const auto& w : v.values) p.cumulative.push_back(total += w.weight);
    if (v.first_year != 0) {
      p.first = sys_days{year{v.first_year} / January / 1};
      const sys_days end{year{v.last_year + 1} / January / 1};
      p.days = (end - p.first).count();
    }
    if (!v.year_of.empty()) p.year_source = schema.IndexOf(v.year_of);
  }

  std::vector<std::vector<Cell>> rows(spec.record_count);
  for (auto& row : rows) {
    row.resize(spec.variables.size());
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
      const auto& v = spec.variables[i];
      const auto& p = prepared[i];
      if (!v.values.empty()) {
        const double target = source.Next() * p.cumulative.back();
        std::size_t pick = 0;
        while (pick + 1 < p.cumulative.size() && !(target < p.cumulative[pick])) ++pick;
        row[i] = v.values[pick].value;
      } else if (v.first_year != 0) {
        const auto offset = static_cast<long>(source.Next() * static_cast<double>(p.days));
        const year_month_day ymd{p.first + days{offset}};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        row[i] = std::string(buf);
      } else {
        row[i] = row[p.year_source]->substr(0, 4);
      }
    }
  }
  return Microdata::FromRows(schema, rows);
}

}  // namespace sdc
