/*
 * Copyright (c) 2026 The pictobridge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <doctest.h>

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "pictobridge/error.hpp"
#include "pictobridge/lexicon.hpp"
#include "testing.hpp"

using namespace pictobridge;
using nlohmann::json;

namespace {

// Independent reading of the catalog file: counts invariant breaches straight
// from the JSON without going through parse_catalog.
std::vector<std::string> oracle_problems(const json& doc) {
  std::vector<std::string> problems;
  const auto langs = doc.at("languages").get<std::vector<std::string>>();
  const std::regex id_re("^[a-z][a-z0-9-]*$");
  std::set<std::string> ids;
  std::set<long long> catalog_ids;
  for (const auto& c : doc.at("concepts")) {
    const auto id = c.at("id").get<std::string>();
    if (!std::regex_match(id, id_re)) problems.push_back("malformed " + id);
    if (!ids.insert(id).second) problems.push_back("duplicate " + id);
    for (const auto& lang : langs) {
      if (!c.at("labels").contains(lang) || c["labels"][lang].get<std::string>().empty()) {
        problems.push_back("label " + id + "/" + lang);
      }
    }
    const auto cid = c.at("pictogram").at("catalog_id").get<long long>();
    if (cid <= 0) problems.push_back("catalog id " + id);
    if (!catalog_ids.insert(cid).second) problems.push_back("duplicate catalog id " + id);
  }
  for (const auto& t : doc.value("terms", json::array())) {
    for (const auto& lang : langs) {
      if (!t.at("definition").contains(lang)) problems.push_back("definition " + t.at("term").get<std::string>());
    }
  }
  return problems;
}

json catalog_file() { return json::parse(pbtest::slurp(pbtest::source_dir() / "core/data/catalog.json")); }

std::set<std::string> kinds(const std::vector<Violation>& v) {
  std::set<std::string> out;
  for (const auto& x : v) out.insert(x.kind);
  return out;
}

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("the shipped catalog satisfies every invariant") {
    const auto doc = catalog_file();
    CHECK(oracle_problems(doc).empty());
    const auto catalog = parse_catalog(doc.dump());
    CHECK(validate_catalog(catalog).empty());
    CHECK(catalog.concepts.size() == doc["concepts"].size());
  }

  TEST_CASE("embedded catalog matches the data file") {
    const auto lexicon = Lexicon::builtin();
    const auto file = parse_catalog(catalog_file().dump());
    REQUIRE(lexicon.concepts().size() == file.concepts.size());
    for (std::size_t i = 0; i < file.concepts.size(); ++i) {
      CHECK(lexicon.concepts()[i].id == file.concepts[i].id);
      CHECK(lexicon.concepts()[i].pictogram == file.concepts[i].pictogram);
    }
  }

  TEST_CASE("label and pictogram lookup") {
    const auto lexicon = Lexicon::builtin();
    CHECK(lexicon.label("robot", "en") == "robot");
    CHECK(lexicon.label("loading-zone", "en") == "loading zone");
    CHECK(lexicon.label("charging-zone", "es") == "zona de recarga");
    CHECK(lexicon.pictogram("robot").catalog_id > 0);
    CHECK(lexicon.pictogram("robot").fallback_text == "robot");
    CHECK(lexicon.language_name("en", "en") == "English");
    CHECK(lexicon.language_name("es", "en") == "Spanish");
  }

  TEST_CASE("lookup errors") {
    const auto lexicon = Lexicon::builtin();
    CHECK_THROWS_AS(lexicon.label("unicorn", "en"), Error);
    try {
      (void)lexicon.label("unicorn", "en");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_concept);
    }
    try {
      (void)lexicon.label("robot", "fr");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_language);
    }
    try {
      (void)lexicon.define_term("FOO", "en");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_term);
    }
  }

  TEST_CASE("SLAM definition") {
    CHECK(Lexicon::builtin().define_term("SLAM", "en") == "I’m using SLAM: it means I build a map while I move.");
  }

  TEST_CASE("every concept has a label in every declared language") {
    const auto lexicon = Lexicon::builtin();
    for (const auto& c : lexicon.concepts()) {
      for (const auto& lang : lexicon.languages()) {
        CHECK_FALSE(lexicon.label(c.id, lang).empty());
      }
    }
  }

  TEST_CASE("mutations are reported by both the oracle and the validator") {
    struct Mutation {
      const char* name;
      std::string kind;
      void (*apply)(json&);
    };
    const Mutation mutations[] = {
        {"duplicate id", "duplicate-id", [](json& d) { d["concepts"][1]["id"] = d["concepts"][0]["id"]; }},
        {"missing label", "missing-label", [](json& d) { d["concepts"][0]["labels"].erase("es"); }},
        {"empty label", "empty-label", [](json& d) { d["concepts"][2]["labels"]["en"] = ""; }},
        {"duplicate catalog id", "duplicate-catalog-id",
         [](json& d) { d["concepts"][3]["pictogram"]["catalog_id"] = d["concepts"][4]["pictogram"]["catalog_id"]; }},
        {"bad catalog id", "bad-catalog-id", [](json& d) { d["concepts"][5]["pictogram"]["catalog_id"] = 0; }},
        {"malformed id", "malformed-id", [](json& d) { d["concepts"][6]["id"] = "Bad Id"; }},
        {"term without definition", "missing-definition", [](json& d) { d["terms"][0]["definition"].erase("es"); }},
    };
    for (const auto& m : mutations) {
      CAPTURE(m.name);
      auto doc = catalog_file();
      m.apply(doc);
      CHECK_FALSE(oracle_problems(doc).empty());
      const auto found = kinds(validate_catalog(parse_catalog(doc.dump())));
      CHECK(found.count(m.kind) == 1);
      CHECK_THROWS_AS((void)Lexicon(parse_catalog(doc.dump())), Error);
    }
  }

  TEST_CASE("unknown category and malformed JSON") {
    auto doc = catalog_file();
    doc["concepts"][0]["category"] = "vegetable";
    bool flagged = false;
    try {
      flagged = kinds(validate_catalog(parse_catalog(doc.dump()))).count("bad-category") == 1;
    } catch (const Error& e) {
      flagged = e.code() == Errc::parse_error;
    }
    CHECK(flagged);
    CHECK_THROWS_AS(parse_catalog("{not json"), Error);
  }

  TEST_CASE("serialize round trip") {
    const auto lexicon = Lexicon::builtin();
    const auto text = serialize_catalog(lexicon.catalog());
    const auto back = parse_catalog(text);
    CHECK(serialize_catalog(back) == text);
    CHECK(validate_catalog(back).empty());
  }

  TEST_CASE("is_concept_id") {
    CHECK(is_concept_id("charging-zone"));
    CHECK(is_concept_id("a1"));
    CHECK_FALSE(is_concept_id(""));
    CHECK_FALSE(is_concept_id("1a"));
    CHECK_FALSE(is_concept_id("Robot"));
    CHECK_FALSE(is_concept_id("two words"));
  }
}
