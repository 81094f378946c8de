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

#include "pictobridge/lexicon.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

#include "fsio.hpp"
#include "pictobridge/data.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kRequiredLanguages[] = {"en", "es"};

LangText parse_lang_text(const json& j, std::string_view what) {
  if (!j.is_object()) throw Error(Errc::parse_error, std::string(what) + " must be an object");
  LangText out;
  for (const auto& [lang, text] : j.items()) {
    if (!text.is_string()) throw Error(Errc::parse_error, std::string(what) + "." + lang + " must be a string");
    out.emplace(lang, text.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view to_string(Category category) noexcept {
  switch (category) {
    case Category::action: return "action";
    case Category::agent: return "agent";
    case Category::object: return "object";
    case Category::goal: return "goal";
    case Category::cue: return "cue";
    case Category::quality: return "quality";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view text) noexcept {
  for (auto c : {Category::action, Category::agent, Category::object, Category::goal, Category::cue,
                 Category::quality}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

bool is_concept_id(std::string_view id) noexcept {
  if (id.empty() || id.front() < 'a' || id.front() > 'z') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  });
}

std::vector<Violation> validate_catalog(const Catalog& catalog) {
  std::vector<Violation> out;
  auto report = [&out](std::string kind, std::string subject, std::string detail) {
    out.push_back({std::move(kind), std::move(subject), std::move(detail)});
  };

  if (catalog.version != 1) {
    report("unsupported-version", "catalog", "version " + std::to_string(catalog.version));
  }
  std::set<std::string> langs;
  for (const auto& lang : catalog.languages) {
    if (!langs.insert(lang).second) report("duplicate-language", lang, "declared twice");
  }
  for (auto required : kRequiredLanguages) {
    if (!langs.contains(std::string(required))) {
      report("missing-language", std::string(required), "catalog must declare it");
    }
  }

  std::set<std::string> ids;
  std::map<std::int64_t, std::string> pictogram_owner;
  for (const auto& c : catalog.concepts) {
    if (!is_concept_id(c.id)) report("malformed-id", c.id, "must match [a-z][a-z0-9-]*");
    if (!ids.insert(c.id).second) report("duplicate-id", c.id, "concept id declared twice");
    if (to_string(c.category) == "?") report("bad-category", c.id, "unknown category");
    for (const auto& lang : catalog.languages) {
      auto it = c.labels.find(lang);
      if (it == c.labels.end()) {
        report("missing-label", c.id, "no label for " + lang);
      } else if (it->second.empty()) {
        report("empty-label", c.id, "empty label for " + lang);
      }
    }
    if (c.pictogram.catalog_id <= 0) {
      report("bad-catalog-id", c.id, "catalog_id must be positive");
    } else if (auto [it, fresh] = pictogram_owner.emplace(c.pictogram.catalog_id, c.id); !fresh) {
      report("duplicate-catalog-id", c.id,
             "catalog_id " + std::to_string(c.pictogram.catalog_id) + " already used by " + it->second);
    }
    if (c.pictogram.fallback_text.empty()) report("empty-fallback", c.id, "fallback_text must not be empty");
  }

  std::set<std::string> terms;
  for (const auto& t : catalog.terms) {
    if (t.term.empty()) report("empty-term", "(term)", "term text is empty");
    if (!terms.insert(t.term).second) report("duplicate-term", t.term, "term defined twice");
    for (const auto& lang : catalog.languages) {
      auto it = t.definition.find(lang);
      if (it == t.definition.end() || it->second.empty()) {
        report("missing-definition", t.term, "no definition for " + lang);
      }
    }
    for (const auto& cid : t.concepts) {
      if (!ids.contains(cid)) report("unknown-term-concept", t.term, "concept " + cid + " is not in the catalog");
    }
  }
  return out;
}

Catalog parse_catalog(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse_error, "catalog must be a JSON object");

  Catalog catalog;
  try {
    catalog.version = j.at("version").get<int>();
    catalog.languages = j.at("languages").get<std::vector<std::string>>();
    if (auto it = j.find("language_names"); it != j.end()) {
      for (const auto& [of, names] : it->items()) {
        catalog.language_names.emplace(of, parse_lang_text(names, "language_names." + of));
      }
    }
    for (const auto& jc : j.at("concepts")) {
      Concept c;
      c.id = jc.at("id").get<std::string>();
      auto category = jc.at("category").get<std::string>();
      auto parsed = parse_category(category);
      if (!parsed) throw Error(Errc::parse_error, "concept " + c.id + ": unknown category '" + category + "'");
      c.category = *parsed;
      c.labels = parse_lang_text(jc.at("labels"), "concept " + c.id + " labels");
      const auto& jp = jc.at("pictogram");
      c.pictogram.catalog_id = jp.at("catalog_id").get<std::int64_t>();
      c.pictogram.fallback_text = jp.at("fallback_text").get<std::string>();
      catalog.concepts.push_back(std::move(c));
    }
    if (auto it = j.find("terms"); it != j.end()) {
      for (const auto& jt : *it) {
        TermDefinition t;
        t.term = jt.at("term").get<std::string>();
        t.definition = parse_lang_text(jt.at("definition"), "term " + t.term);
        if (auto ci = jt.find("concepts"); ci != jt.end()) t.concepts = ci->get<std::vector<std::string>>();
        catalog.terms.push_back(std::move(t));
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("catalog structure: ") + e.what());
  }
  return catalog;
}

std::string serialize_catalog(const Catalog& catalog) {
  ordered_json j;
  j["version"] = catalog.version;
  j["languages"] = catalog.languages;
  if (!catalog.language_names.empty()) {
    ordered_json names = ordered_json::object();
    for (const auto& [of, text] : catalog.language_names) names[of] = text;
    j["language_names"] = names;
  }
  ordered_json concepts = ordered_json::array();
  for (const auto& c : catalog.concepts) {
    ordered_json jc;
    jc["id"] = c.id;
    jc["category"] = std::string(to_string(c.category));
    jc["labels"] = c.labels;
    jc["pictogram"] = {{"catalog_id", c.pictogram.catalog_id}, {"fallback_text", c.pictogram.fallback_text}};
    concepts.push_back(std::move(jc));
  }
  j["concepts"] = std::move(concepts);
  ordered_json terms = ordered_json::array();
  for (const auto& t : catalog.terms) {
    ordered_json jt;
    jt["term"] = t.term;
    jt["definition"] = t.definition;
    if (!t.concepts.empty()) jt["concepts"] = t.concepts;
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j.dump(2) + "\n";
}

Lexicon::Lexicon(Catalog catalog) : catalog_(std::move(catalog)) {
  if (auto violations = validate_catalog(catalog_); !violations.empty()) {
    std::string detail = "catalog has " + std::to_string(violations.size()) + " violation(s); first: " +
                         violations.front().kind + " " + violations.front().subject;
    throw Error(Errc::parse_error, detail);
  }
  for (std::size_t i = 0; i < catalog_.concepts.size(); ++i) concept_index_.emplace(catalog_.concepts[i].id, i);
  for (std::size_t i = 0; i < catalog_.terms.size(); ++i) term_index_.emplace(catalog_.terms[i].term, i);
}

Lexicon Lexicon::builtin() { return Lexicon(parse_catalog(data::catalog_json())); }

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
  return Lexicon(parse_catalog(detail::read_file(path)));
}

void Lexicon::require_language(std::string_view lang) const {
  if (!declares(lang)) throw Error(Errc::unknown_language, std::string(lang));
}

const Concept& Lexicon::concept_of(std::string_view concept_id) const {
  auto it = concept_index_.find(std::string(concept_id));
  if (it == concept_index_.end()) throw Error(Errc::unknown_concept, std::string(concept_id));
  return catalog_.concepts[it->second];
}

const std::string& Lexicon::label(std::string_view concept_id, std::string_view lang) const {
  const auto& c = concept_of(concept_id);
  require_language(lang);
  return c.labels.at(std::string(lang));
}

const PictogramRef& Lexicon::pictogram(std::string_view concept_id) const {
  return concept_of(concept_id).pictogram;
}

const TermDefinition& Lexicon::term(std::string_view term) const {
  auto it = term_index_.find(std::string(term));
  if (it == term_index_.end()) throw Error(Errc::unknown_term, std::string(term));
  return catalog_.terms[it->second];
}

const std::string& Lexicon::define_term(std::string_view term_text, std::string_view lang) const {
  const auto& t = term(term_text);
  require_language(lang);
  return t.definition.at(std::string(lang));
}

bool Lexicon::contains(std::string_view concept_id) const noexcept {
  return concept_index_.contains(std::string(concept_id));
}

bool Lexicon::declares(std::string_view lang) const noexcept {
  return std::find(catalog_.languages.begin(), catalog_.languages.end(), lang) != catalog_.languages.end();
}

std::string Lexicon::language_name(std::string_view of, std::string_view in) const {
  if (auto it = catalog_.language_names.find(std::string(of)); it != catalog_.language_names.end()) {
    if (auto name = it->second.find(std::string(in)); name != it->second.end()) return name->second;
  }
  return std::string(of);
}

}  // namespace pictobridge
