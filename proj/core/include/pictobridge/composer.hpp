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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pictobridge/lexicon.hpp"
#include "pictobridge/mapper.hpp"

namespace pictobridge {

enum class Detail { basic, standard, expert };

std::string_view to_string(Detail detail) noexcept;
std::optional<Detail> parse_detail(std::string_view text) noexcept;
/// One step down, flooring at basic.
Detail lower(Detail detail) noexcept;

enum class Modality { visual, audio_script, pictogram_only };

std::string_view to_string(Modality modality) noexcept;
std::optional<Modality> parse_modality(std::string_view text) noexcept;

/// Non-empty set of presentation channels.
using ModalityHint = std::set<Modality>;

enum class Source { robot_initiated, user_initiated, system };

std::string_view to_string(Source source) noexcept;
std::optional<Source> parse_source(std::string_view text) noexcept;

/// Effective rendering policy derived from a user profile.
struct Policy {
  Detail detail = Detail::standard;
  LanguageCode language = "en";
  ModalityHint modality{Modality::visual};
  std::int64_t pace_ms = 0;

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Template slot values: concepts render as their label, text slots verbatim.
struct Slots {
  ConceptSlots concepts;
  std::map<std::string, LangText> text;

  friend bool operator==(const Slots&, const Slots&) = default;
};

struct ExplanationMessage {
  std::string id;
  Source source = Source::system;
  ConceptSequence concepts;
  LangText text;
  std::vector<PictogramRef> pictograms;
  ModalityHint modality{Modality::visual};
  Detail detail = Detail::standard;
  /// Presentation language chosen by the policy; text still carries every language.
  LanguageCode language = "en";
  std::optional<std::int64_t> provenance;
  /// Most specific template key; `:`-suffixes are dropped to find fallbacks.
  std::string template_key;
  Slots slots;
  std::optional<LangText> relevance_note;
  std::optional<LangText> recall_note;
  /// Follow-up question shown under the message (feedback, detail, mode).
  std::optional<LangText> prompt;

  friend bool operator==(const ExplanationMessage&, const ExplanationMessage&) = default;
};

/// `"<KEY>/<detail>/<lang>"` → template text with `{slot}` placeholders and
/// `[...]` segments that are dropped when any slot inside them is unbound.
class TemplateTable {
 public:
  TemplateTable() = default;
  explicit TemplateTable(std::map<std::string, std::string> entries) : entries_(std::move(entries)) {}

  static TemplateTable parse(std::string_view json_text);
  static TemplateTable builtin();

  const std::string* find(std::string_view key, Detail detail, std::string_view lang) const;
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

using TemplateTablePtr = std::shared_ptr<const TemplateTable>;

/// Expands one template string. Unbound slots outside `[...]` throw
/// Error(missing_template).
std::string expand_template(std::string_view text, const std::map<std::string, std::string>& values);

std::size_t word_count(std::string_view text) noexcept;

enum class Reformulation { simpler, images };

/// A clause rendered from a named template (relevance, recall).
struct RenderedClause {
  std::string template_id;
  Slots slots;
  std::string text;
};

/// Layer two of the pipeline: concept sequences to per-language text plus
/// pictograms, shaped by the policy.
class Composer {
 public:
  Composer(LexiconPtr lexicon, MapperPtr mapper, TemplateTablePtr templates);

  static Composer builtin();

  /// Robot-event rendering keyed by event type (and cause). Without an event
  /// the concept labels are glossed. Throws Error(missing_template).
  ExplanationMessage compose(const ConceptSequence& seq, const std::optional<RobotEvent>& event,
                             const Policy& policy) const;

  /// Rendering for a dialogue reply keyed by `key` (e.g. "why:STOP:person").
  ExplanationMessage compose_reply(std::string_view key, ConceptSequence seq, Slots slots, const Policy& policy,
                                   Source source) const;

  /// Throws Error(unknown_language) if `lang` is not declared.
  ExplanationMessage confirm_language(std::string_view lang, const Policy& policy = {}) const;

  /// Throws Error(unknown_concept) / Error(unknown_language).
  RenderedClause relevance_clause(std::string_view goal, std::string_view lang) const;

  ExplanationMessage reformulate(const ExplanationMessage& msg, Reformulation mode) const;

  /// Renders `key` in every declared language.
  LangText render(std::string_view key, Detail detail, const Slots& slots) const;
  std::string render_one(std::string_view key, Detail detail, std::string_view lang, const Slots& slots) const;

  /// Template key an event renders with before fallbacks.
  static std::string event_key(const RobotEvent& event);

  const Lexicon& lexicon() const noexcept { return *lexicon_; }
  const Mapper& mapper() const noexcept { return *mapper_; }
  const TemplateTable& templates() const noexcept { return *templates_; }
  const LexiconPtr& lexicon_ptr() const noexcept { return lexicon_; }

 private:
  std::vector<PictogramRef> pictograms_for(const ConceptSequence& seq) const;

  LexiconPtr lexicon_;
  MapperPtr mapper_;
  TemplateTablePtr templates_;
};

using ComposerPtr = std::shared_ptr<const Composer>;

}  // namespace pictobridge
