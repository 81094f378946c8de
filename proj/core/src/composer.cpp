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

#include "pictobridge/composer.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "pictobridge/data.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

bool is_event_key(std::string_view key) {
  return !key.empty() && std::isupper(static_cast<unsigned char>(key.front()));
}

std::string entry_key(std::string_view key, Detail detail, std::string_view lang) {
  std::string out(key);
  out += '/';
  out += to_string(detail);
  out += '/';
  out += lang;
  return out;
}

}  // namespace

std::string_view to_string(Detail detail) noexcept {
  switch (detail) {
    case Detail::basic: return "basic";
    case Detail::standard: return "standard";
    case Detail::expert: return "expert";
  }
  return "standard";
}

std::optional<Detail> parse_detail(std::string_view text) noexcept {
  if (text == "basic") return Detail::basic;
  if (text == "standard") return Detail::standard;
  if (text == "expert") return Detail::expert;
  return std::nullopt;
}

Detail lower(Detail detail) noexcept {
  return detail == Detail::expert ? Detail::standard : Detail::basic;
}

std::string_view to_string(Modality modality) noexcept {
  switch (modality) {
    case Modality::visual: return "visual";
    case Modality::audio_script: return "audio-script";
    case Modality::pictogram_only: return "pictogram-only";
  }
  return "visual";
}

std::optional<Modality> parse_modality(std::string_view text) noexcept {
  if (text == "visual") return Modality::visual;
  if (text == "audio-script") return Modality::audio_script;
  if (text == "pictogram-only") return Modality::pictogram_only;
  return std::nullopt;
}

std::string_view to_string(Source source) noexcept {
  switch (source) {
    case Source::robot_initiated: return "robot-initiated";
    case Source::user_initiated: return "user-initiated";
    case Source::system: return "system";
  }
  return "system";
}

std::optional<Source> parse_source(std::string_view text) noexcept {
  if (text == "robot-initiated") return Source::robot_initiated;
  if (text == "user-initiated") return Source::user_initiated;
  if (text == "system") return Source::system;
  return std::nullopt;
}

TemplateTable TemplateTable::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("templates: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::parse_error, "templates: expected an object");
  std::map<std::string, std::string> entries;
  for (const auto& [key, value] : doc.items()) {
    auto first = key.find('/');
    auto last = key.rfind('/');
    if (first == std::string::npos || first == last || first == 0 || last + 1 == key.size()) {
      throw Error(Errc::parse_error, "templates: malformed key " + key);
    }
    if (!parse_detail(std::string_view(key).substr(first + 1, last - first - 1))) {
      throw Error(Errc::parse_error, "templates: bad detail in " + key);
    }
    if (!value.is_string()) throw Error(Errc::parse_error, "templates: non-string value for " + key);
    entries.emplace(key, value.get<std::string>());
  }
  return TemplateTable(std::move(entries));
}

TemplateTable TemplateTable::builtin() { return parse(data::templates_json()); }

const std::string* TemplateTable::find(std::string_view key, Detail detail, std::string_view lang) const {
  auto walk = [&](Detail d) -> const std::string* {
    std::string_view k = key;
    while (true) {
      if (auto it = entries_.find(entry_key(k, d, lang)); it != entries_.end()) return &it->second;
      auto colon = k.rfind(':');
      if (colon == std::string_view::npos) return nullptr;
      k = k.substr(0, colon);
    }
  };
  if (const auto* hit = walk(detail)) return hit;
  // Event templates are complete per detail level; dialogue templates may
  // exist only at standard.
  if (!is_event_key(key) && detail != Detail::standard) return walk(Detail::standard);
  return nullptr;
}

std::string expand_template(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size() + 32);
  std::string segment;
  bool in_optional = false;
  bool segment_ok = true;

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    std::string& sink = in_optional ? segment : out;
    if (c == '{') {
      auto close = text.find('}', i);
      if (close == std::string_view::npos) throw Error(Errc::missing_template, "unterminated slot in template");
      std::string name(text.substr(i + 1, close - i - 1));
      i = close;
      if (auto it = values.find(name); it != values.end()) {
        sink += it->second;
      } else if (in_optional) {
        segment_ok = false;
      } else {
        throw Error(Errc::missing_template, "slot {" + name + "} has no value");
      }
    } else if (c == '[' && !in_optional) {
      in_optional = true;
      segment_ok = true;
      segment.clear();
    } else if (c == ']' && in_optional) {
      in_optional = false;
      if (segment_ok) out += segment;
    } else {
      sink += c;
    }
  }
  if (in_optional) throw Error(Errc::missing_template, "unterminated optional segment in template");
  return out;
}

std::size_t word_count(std::string_view text) noexcept {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

Composer::Composer(LexiconPtr lexicon, MapperPtr mapper, TemplateTablePtr templates)
    : lexicon_(std::move(lexicon)), mapper_(std::move(mapper)), templates_(std::move(templates)) {
  if (!lexicon_ || !mapper_ || !templates_) throw Error(Errc::parse_error, "composer: null component");
}

Composer Composer::builtin() {
  auto lexicon = std::make_shared<const Lexicon>(Lexicon::builtin());
  auto mapper = std::make_shared<const Mapper>(Mapper::builtin(lexicon));
  return Composer(lexicon, mapper, std::make_shared<const TemplateTable>(TemplateTable::builtin()));
}

std::string Composer::event_key(const RobotEvent& event) {
  std::string key(to_string(event.type));
  if (event.cause) {
    key += ':';
    key += to_string(*event.cause);
  }
  return key;
}

std::string Composer::render_one(std::string_view key, Detail detail, std::string_view lang,
                                 const Slots& slots) const {
  const std::string* text = templates_->find(key, detail, lang);
  if (!text) throw Error(Errc::missing_template, entry_key(key, detail, lang));
  std::map<std::string, std::string> values;
  for (const auto& [name, id] : slots.concepts) values[name] = lexicon_->label(id, lang);
  for (const auto& [name, per_lang] : slots.text) {
    if (auto it = per_lang.find(std::string(lang)); it != per_lang.end()) values[name] = it->second;
  }
  try {
    return expand_template(*text, values);
  } catch (const Error& e) {
    throw Error(Errc::missing_template, entry_key(key, detail, lang) + ": " + e.what());
  }
}

LangText Composer::render(std::string_view key, Detail detail, const Slots& slots) const {
  LangText out;
  for (const auto& lang : lexicon_->languages()) out[lang] = render_one(key, detail, lang, slots);
  return out;
}

std::vector<PictogramRef> Composer::pictograms_for(const ConceptSequence& seq) const {
  std::vector<PictogramRef> out;
  out.reserve(seq.concepts.size());
  for (const auto& id : seq.concepts) out.push_back(lexicon_->pictogram(id));
  return out;
}

ExplanationMessage Composer::compose(const ConceptSequence& seq, const std::optional<RobotEvent>& event,
                                     const Policy& policy) const {
  if (!event) {
    Slots slots;
    auto& gloss = slots.text["gloss"];
    for (const auto& lang : lexicon_->languages()) {
      std::string joined;
      for (const auto& id : seq.concepts) {
        if (!joined.empty()) joined += ' ';
        joined += lexicon_->label(id, lang);
      }
      gloss[lang] = joined;
    }
    return compose_reply("gloss", seq, std::move(slots), policy, Source::robot_initiated);
  }
  Slots slots;
  slots.concepts = mapper_->slots_for(*event);
  auto msg = compose_reply(event_key(*event), seq, std::move(slots), policy, Source::robot_initiated);
  msg.provenance = event->seq;
  return msg;
}

ExplanationMessage Composer::compose_reply(std::string_view key, ConceptSequence seq, Slots slots,
                                           const Policy& policy, Source source) const {
  if (!lexicon_->declares(policy.language)) throw Error(Errc::unknown_language, policy.language);
  ExplanationMessage msg;
  msg.source = source;
  msg.text = render(key, policy.detail, slots);
  msg.pictograms = pictograms_for(seq);
  msg.concepts = std::move(seq);
  msg.modality = policy.modality;
  msg.detail = policy.detail;
  msg.language = policy.language;
  msg.template_key = std::string(key);
  msg.slots = std::move(slots);
  return msg;
}

ExplanationMessage Composer::confirm_language(std::string_view lang, const Policy& policy) const {
  if (!lexicon_->declares(lang)) throw Error(Errc::unknown_language, std::string(lang));
  Slots slots;
  auto& names = slots.text["language"];
  for (const auto& in : lexicon_->languages()) names[in] = lexicon_->language_name(lang, in);
  Policy p = policy;
  p.language = std::string(lang);
  return compose_reply("language", mapper_->reply("language", {}), std::move(slots), p, Source::system);
}

RenderedClause Composer::relevance_clause(std::string_view goal, std::string_view lang) const {
  if (!lexicon_->contains(goal)) throw Error(Errc::unknown_concept, std::string(goal));
  if (!lexicon_->declares(lang)) throw Error(Errc::unknown_language, std::string(lang));
  RenderedClause clause;
  clause.template_id = "relevance";
  clause.slots.concepts["goal"] = std::string(goal);
  clause.text = render_one(clause.template_id, Detail::standard, lang, clause.slots);
  return clause;
}

ExplanationMessage Composer::reformulate(const ExplanationMessage& msg, Reformulation mode) const {
  ExplanationMessage out = msg;
  if (mode == Reformulation::images) {
    out.modality = {Modality::pictogram_only};
    return out;
  }
  if (msg.detail == Detail::basic) return out;
  out.detail = lower(msg.detail);
  out.text = render(msg.template_key, out.detail, msg.slots);
  if (out.detail == Detail::basic) {
    out.relevance_note.reset();
    out.recall_note.reset();
  }
  return out;
}

}  // namespace pictobridge
