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

#include "pictobridge/mapper.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "pictobridge/data.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;

constexpr std::array kEventTypes = {
    EventType::TURN,  EventType::STOP,         EventType::WAIT,  EventType::RESUME,
    EventType::GOAL_SET, EventType::GOAL_REACHED, EventType::PICK, EventType::PLACE,
    EventType::PLAN_CHANGED, EventType::BATTERY_LOW,
};

constexpr std::array kCauses = {Cause::obstacle, Cause::person, Cause::command, Cause::battery, Cause::replan};

constexpr std::string_view kSlotNames[] = {"cause", "goal", "object"};

std::optional<std::string> slot_name(std::string_view entry) {
  if (entry.size() >= 3 && entry.front() == '{' && entry.back() == '}') {
    return std::string(entry.substr(1, entry.size() - 2));
  }
  return std::nullopt;
}

std::vector<ConceptId> substitute(const std::vector<std::string>& pattern, const ConceptSlots& slots) {
  std::vector<ConceptId> out;
  out.reserve(pattern.size());
  for (const auto& entry : pattern) {
    if (auto name = slot_name(entry)) {
      if (auto it = slots.find(*name); it != slots.end()) out.push_back(it->second);
    } else {
      out.push_back(entry);
    }
  }
  return out;
}

void check_pattern(const std::vector<std::string>& pattern, const Lexicon& lexicon, const std::string& where) {
  if (pattern.empty()) throw Error(Errc::parse_error, where + ": empty concept pattern");
  for (const auto& entry : pattern) {
    if (auto name = slot_name(entry)) {
      if (std::find(std::begin(kSlotNames), std::end(kSlotNames), *name) == std::end(kSlotNames)) {
        throw Error(Errc::parse_error, where + ": unknown slot " + entry);
      }
    } else if (!lexicon.contains(entry)) {
      throw Error(Errc::parse_error, where + ": concept '" + entry + "' is not in the lexicon");
    }
  }
}

}  // namespace

std::string_view to_string(EventType type) noexcept {
  switch (type) {
    case EventType::TURN: return "TURN";
    case EventType::STOP: return "STOP";
    case EventType::WAIT: return "WAIT";
    case EventType::RESUME: return "RESUME";
    case EventType::GOAL_SET: return "GOAL_SET";
    case EventType::GOAL_REACHED: return "GOAL_REACHED";
    case EventType::PICK: return "PICK";
    case EventType::PLACE: return "PLACE";
    case EventType::PLAN_CHANGED: return "PLAN_CHANGED";
    case EventType::BATTERY_LOW: return "BATTERY_LOW";
  }
  return "?";
}

std::optional<EventType> parse_event_type(std::string_view text) noexcept {
  for (auto t : kEventTypes) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Cause cause) noexcept {
  switch (cause) {
    case Cause::obstacle: return "obstacle";
    case Cause::person: return "person";
    case Cause::command: return "command";
    case Cause::battery: return "battery";
    case Cause::replan: return "replan";
  }
  return "?";
}

std::optional<Cause> parse_cause(std::string_view text) noexcept {
  for (auto c : kCauses) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::span<const EventType> known_event_types() noexcept { return kEventTypes; }
std::span<const Cause> known_causes() noexcept { return kCauses; }

std::vector<std::string> check_event(const RobotEvent& event) {
  std::vector<std::string> problems;
  const auto type = to_string(event.type);
  if (type == "?") problems.emplace_back("unknown event type");
  if ((event.type == EventType::TURN || event.type == EventType::PLAN_CHANGED) && !event.cause) {
    problems.push_back(std::string(type) + " without cause");
  }
  if ((event.type == EventType::PICK || event.type == EventType::PLACE) && !event.object) {
    problems.push_back(std::string(type) + " without object");
  }
  if (event.type == EventType::GOAL_SET && !event.goal) problems.emplace_back("GOAL_SET without goal");
  return problems;
}

MappingTable parse_mapping_table(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("mapping table is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse_error, "mapping table must be a JSON object");

  MappingTable table;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "causes") {
        for (const auto& [cause, concept_id] : value.items()) {
          auto parsed = parse_cause(cause);
          if (!parsed) throw Error(Errc::parse_error, "unknown cause '" + cause + "'");
          table.causes.emplace(*parsed, concept_id.get<std::string>());
        }
      } else if (key == "replies") {
        for (const auto& [reply, pattern] : value.items()) {
          table.replies.emplace(reply, pattern.get<std::vector<std::string>>());
        }
      } else {
        auto type = parse_event_type(key);
        if (!type) throw Error(Errc::parse_error, "unknown event type '" + key + "'");
        MappingRow row;
        row.pattern = value.at("concepts").get<std::vector<std::string>>();
        const auto& slot = value.at("cause_slot");
        if (slot.is_boolean()) {
          if (!slot.get<bool>()) throw Error(Errc::parse_error, key + ": cause_slot must name a slot");
          row.cause_slot = "cause";
        } else {
          row.cause_slot = slot.get<std::string>();
        }
        table.events.emplace(*type, std::move(row));
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("mapping table structure: ") + e.what());
  }
  return table;
}

Mapper::Mapper(MappingTable table, LexiconPtr lexicon) : table_(std::move(table)), lexicon_(std::move(lexicon)) {
  for (const auto& [type, row] : table_.events) {
    const std::string where(to_string(type));
    check_pattern(row.pattern, *lexicon_, where);
    if (std::find(row.pattern.begin(), row.pattern.end(), "{" + row.cause_slot + "}") == row.pattern.end()) {
      throw Error(Errc::parse_error, where + ": cause_slot {" + row.cause_slot + "} is not in the pattern");
    }
    // The action concept is positional, so it must be a literal.
    if (row.pattern.size() < 2 || slot_name(row.pattern[1])) {
      throw Error(Errc::parse_error, where + ": second pattern entry must be a literal action concept");
    }
  }
  for (const auto& [cause, concept_id] : table_.causes) {
    if (!lexicon_->contains(concept_id)) {
      throw Error(Errc::parse_error, "cause concept '" + concept_id + "' is not in the lexicon");
    }
  }
  for (const auto& [key, pattern] : table_.replies) check_pattern(pattern, *lexicon_, "reply " + key);
}

Mapper Mapper::builtin(LexiconPtr lexicon) {
  return Mapper(parse_mapping_table(data::mapping_json()), std::move(lexicon));
}

std::optional<ConceptId> Mapper::cause_concept(Cause cause) const {
  if (auto it = table_.causes.find(cause); it != table_.causes.end()) return it->second;
  return std::nullopt;
}

ConceptSlots Mapper::slots_for(const RobotEvent& event) const {
  ConceptSlots slots;
  if (event.cause) {
    if (auto c = cause_concept(*event.cause)) slots.emplace("cause", *c);
  }
  if (event.object && lexicon_->contains(*event.object)) slots.emplace("object", *event.object);
  if (event.goal && lexicon_->contains(*event.goal)) slots.emplace("goal", *event.goal);
  return slots;
}

ConceptSequence Mapper::map_event(const RobotEvent& event) const {
  auto it = table_.events.find(event.type);
  if (it == table_.events.end()) {
    throw Error(Errc::unmappable_event, "no mapping row for event type " + std::string(to_string(event.type)));
  }
  const auto& row = it->second;
  const auto slots = slots_for(event);
  ConceptSequence seq{substitute(row.pattern, slots), std::nullopt};
  if (event.cause) {
    if (auto s = slots.find(row.cause_slot); s != slots.end()) seq.cause_concept = s->second;
  }
  return seq;
}

ConceptSequence Mapper::reply(std::string_view key, const ConceptSlots& slots) const {
  auto it = table_.replies.find(std::string(key));
  if (it == table_.replies.end()) throw Error(Errc::missing_template, "no reply concepts for " + std::string(key));
  return ConceptSequence{substitute(it->second, slots), std::nullopt};
}

ConceptId Mapper::action_concept(EventType type) const {
  auto it = table_.events.find(type);
  if (it == table_.events.end()) {
    throw Error(Errc::unmappable_event, "no mapping row for event type " + std::string(to_string(type)));
  }
  return it->second.pattern[1];
}

}  // namespace pictobridge
