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

#include "pictobridge/serialize.hpp"

#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T, typename Parse>
T parse_enum(const json& j, std::string_view what, Parse parse) {
  auto v = parse(j.get<std::string>());
  if (!v) throw Error(Errc::parse_error, std::string(what) + " '" + j.get<std::string>() + "'");
  return *v;
}

Cell cell_from_json(const json& j) {
  return {j.at("row").get<int>(), j.at("col").get<int>()};
}

LangText langtext_from_json(const json& j) { return j.get<LangText>(); }

template <typename F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string(what) + ": " + e.what());
  }
}

}  // namespace

ordered_json to_json(const LangText& text) {
  ordered_json j = ordered_json::object();
  for (const auto& [lang, s] : text) j[lang] = s;
  return j;
}

ordered_json to_json(const Cell& cell) {
  ordered_json j;
  j["row"] = cell.row;
  j["col"] = cell.col;
  return j;
}

ordered_json to_json(const RobotEvent& e) {
  ordered_json j;
  j["seq"] = e.seq;
  j["sim_time"] = e.sim_time;
  j["type"] = to_string(e.type);
  if (e.cause) j["cause"] = to_string(*e.cause);
  if (e.object) j["object"] = *e.object;
  if (e.goal) j["goal"] = *e.goal;
  if (e.location) j["location"] = to_json(*e.location);
  return j;
}

RobotEvent event_from_json(const json& j) {
  return guarded("robot event", [&] {
    RobotEvent e;
    e.seq = j.at("seq").get<std::int64_t>();
    e.sim_time = j.at("sim_time").get<std::int64_t>();
    e.type = parse_enum<EventType>(j.at("type"), "event type", parse_event_type);
    if (j.contains("cause")) e.cause = parse_enum<Cause>(j["cause"], "cause", parse_cause);
    if (j.contains("object")) e.object = j["object"].get<std::string>();
    if (j.contains("goal")) e.goal = j["goal"].get<std::string>();
    if (j.contains("location")) e.location = cell_from_json(j["location"]);
    return e;
  });
}

ordered_json to_json(const ExplanationMessage& m) {
  ordered_json j;
  j["id"] = m.id;
  j["source"] = to_string(m.source);
  auto& concepts = j["concepts"] = ordered_json::array();
  for (const auto& c : m.concepts.concepts) concepts.push_back(c);
  if (m.concepts.cause_concept) j["cause_concept"] = *m.concepts.cause_concept;
  j["text"] = to_json(m.text);
  auto& pictos = j["pictograms"] = ordered_json::array();
  for (const auto& p : m.pictograms) {
    ordered_json pj;
    pj["catalog_id"] = p.catalog_id;
    pj["fallback_text"] = p.fallback_text;
    pictos.push_back(std::move(pj));
  }
  auto& modes = j["modality"] = ordered_json::array();
  for (auto mod : m.modality) modes.push_back(to_string(mod));
  j["detail"] = to_string(m.detail);
  j["language"] = m.language;
  if (m.provenance) j["provenance"] = *m.provenance;
  j["template_key"] = m.template_key;
  ordered_json slots = ordered_json::object();
  for (const auto& [name, id] : m.slots.concepts) slots[name] = id;
  j["slots"] = std::move(slots);
  if (!m.slots.text.empty()) {
    ordered_json text_slots = ordered_json::object();
    for (const auto& [name, per_lang] : m.slots.text) text_slots[name] = to_json(per_lang);
    j["text_slots"] = std::move(text_slots);
  }
  if (m.relevance_note) j["relevance_note"] = to_json(*m.relevance_note);
  if (m.recall_note) j["recall_note"] = to_json(*m.recall_note);
  if (m.prompt) j["prompt"] = to_json(*m.prompt);
  return j;
}

ExplanationMessage message_from_json(const json& j) {
  return guarded("explanation message", [&] {
    ExplanationMessage m;
    m.id = j.at("id").get<std::string>();
    m.source = parse_enum<Source>(j.at("source"), "source", parse_source);
    m.concepts.concepts = j.at("concepts").get<std::vector<std::string>>();
    if (j.contains("cause_concept")) m.concepts.cause_concept = j["cause_concept"].get<std::string>();
    m.text = langtext_from_json(j.at("text"));
    for (const auto& p : j.at("pictograms")) {
      m.pictograms.push_back({p.at("catalog_id").get<std::int64_t>(), p.at("fallback_text").get<std::string>()});
    }
    m.modality.clear();
    for (const auto& mod : j.at("modality")) m.modality.insert(parse_enum<Modality>(mod, "modality", parse_modality));
    m.detail = parse_enum<Detail>(j.at("detail"), "detail", parse_detail);
    m.language = j.at("language").get<std::string>();
    if (j.contains("provenance")) m.provenance = j["provenance"].get<std::int64_t>();
    m.template_key = j.at("template_key").get<std::string>();
    m.slots.concepts = j.at("slots").get<ConceptSlots>();
    if (j.contains("text_slots")) {
      for (const auto& [name, per_lang] : j["text_slots"].items()) m.slots.text[name] = langtext_from_json(per_lang);
    }
    if (j.contains("relevance_note")) m.relevance_note = langtext_from_json(j["relevance_note"]);
    if (j.contains("recall_note")) m.recall_note = langtext_from_json(j["recall_note"]);
    if (j.contains("prompt")) m.prompt = langtext_from_json(j["prompt"]);
    return m;
  });
}

ordered_json to_json(const RobotCommand& cmd) {
  ordered_json j;
  j["command"] = to_string(cmd.kind);
  if (cmd.station) j["station"] = *cmd.station;
  return j;
}

RobotCommand command_from_json(const json& j) {
  return guarded("robot command", [&] {
    RobotCommand cmd;
    cmd.kind = parse_enum<CommandKind>(j.at("command"), "command", parse_command_kind);
    if (j.contains("station")) cmd.station = j["station"].get<std::string>();
    return cmd;
  });
}

ordered_json status_json(const World& w) {
  ordered_json j;
  j["tick"] = w.tick;
  j["robot"] = to_json(w.robot);
  j["heading"] = to_string(w.heading);
  j["battery"] = w.battery;
  j["goal"] = w.goal ? ordered_json(*w.goal) : ordered_json(nullptr);
  j["carrying"] = w.carried ? ordered_json(*w.carried) : ordered_json(nullptr);
  j["frozen"] = w.frozen;
  if (auto p = w.person()) j["person"] = to_json(*p);
  return j;
}

}  // namespace pictobridge
