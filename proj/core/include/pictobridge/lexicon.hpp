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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pictobridge {

using LanguageCode = std::string;
using ConceptId = std::string;
/// Text keyed by language code.
using LangText = std::map<LanguageCode, std::string>;

enum class Category { action, agent, object, goal, cue, quality };

std::string_view to_string(Category category) noexcept;
std::optional<Category> parse_category(std::string_view text) noexcept;

/// Opaque reference into an external pictogram catalog.
struct PictogramRef {
  std::int64_t catalog_id = 0;
  std::string fallback_text;

  friend bool operator==(const PictogramRef&, const PictogramRef&) = default;
};

struct Concept {
  ConceptId id;
  Category category = Category::object;
  LangText labels;
  PictogramRef pictogram;
};

struct TermDefinition {
  std::string term;
  LangText definition;
  /// Concepts shown alongside the definition; empty means just `robot`.
  std::vector<ConceptId> concepts;
};

/// Raw catalog contents as stored on disk; may violate invariants.
struct Catalog {
  int version = 1;
  std::vector<LanguageCode> languages;
  /// language_names[of][in]: the name of language `of` written in `in`.
  std::map<LanguageCode, LangText> language_names;
  std::vector<Concept> concepts;
  std::vector<TermDefinition> terms;
};

struct Violation {
  std::string kind;
  std::string subject;
  std::string detail;
};

/// True when `id` matches [a-z][a-z0-9-]*.
bool is_concept_id(std::string_view id) noexcept;

/// Checks every catalog invariant; problems are returned, never thrown.
std::vector<Violation> validate_catalog(const Catalog& catalog);

/// Throws Error(parse_error) on malformed JSON or structurally wrong fields.
Catalog parse_catalog(std::string_view json_text);
std::string serialize_catalog(const Catalog& catalog);

/// Immutable, validated concept catalog. Share it through LexiconPtr; a reload
/// builds a new Lexicon and swaps the pointer.
class Lexicon {
 public:
  /// Throws Error(parse_error) listing the violations if the catalog is invalid.
  explicit Lexicon(Catalog catalog);

  static Lexicon builtin();
  static Lexicon from_file(const std::filesystem::path& path);

  const std::string& label(std::string_view concept_id, std::string_view lang) const;
  const PictogramRef& pictogram(std::string_view concept_id) const;
  const std::string& define_term(std::string_view term, std::string_view lang) const;

  const Concept& concept_of(std::string_view concept_id) const;
  const TermDefinition& term(std::string_view term) const;
  bool contains(std::string_view concept_id) const noexcept;
  bool declares(std::string_view lang) const noexcept;
  /// Name of language `of` in language `in`; falls back to the code itself.
  std::string language_name(std::string_view of, std::string_view in) const;

  const std::vector<LanguageCode>& languages() const noexcept { return catalog_.languages; }
  const std::vector<Concept>& concepts() const noexcept { return catalog_.concepts; }
  const std::vector<TermDefinition>& terms() const noexcept { return catalog_.terms; }
  const Catalog& catalog() const noexcept { return catalog_; }

 private:
  void require_language(std::string_view lang) const;

  Catalog catalog_;
  std::unordered_map<std::string, std::size_t> concept_index_;
  std::unordered_map<std::string, std::size_t> term_index_;
};

using LexiconPtr = std::shared_ptr<const Lexicon>;

}  // namespace pictobridge
