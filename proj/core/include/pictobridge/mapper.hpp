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

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pictobridge/lexicon.hpp"

namespace pictobridge {

enum class EventType {
  TURN,
  STOP,
  WAIT,
  RESUME,
  GOAL_SET,
  GOAL_REACHED,
  PICK,
  PLACE,
  PLAN_CHANGED,
  BATTERY_LOW,
};

enum class Cause { obstacle, person, command, battery, replan };

std::string_view to_string(EventType type) noexcept;
std::optional<EventType> parse_event_type(std::string_view text) noexcept;
std::string_view to_string(Cause cause) noexcept;
std::optional<Cause> parse_cause(std::string_view text) noexcept;

/// The fixed event-type domain, in declaration order.
std::span<const EventType> known_event_types() noexcept;
std::span<const Cause> known_causes() noexcept;

struct Cell {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A timestamped occurrence inside the robot.
struct RobotEvent {
  std::int64_t seq = 0;
  std::int64_t sim_time = 0;
  EventType type = EventType::STOP;
  std::optional<Cause> cause;
  std::optional<ConceptId> object;
  std::optional<ConceptId> goal;
  std::optional<Cell> location;

  friend bool operator==(const RobotEvent&, const RobotEvent&) = default;
};

/// Field-level invariant problems (required slots per type); empty when well-formed.
std::vector<std::string> check_event(const RobotEvent& event);

struct ConceptSequence {
  std::vector<ConceptId> concepts;
  std::optional<ConceptId> cause_concept;

  friend bool operator==(const ConceptSequence&, const ConceptSequence&) = default;
};

/// Concept ids bound to template slot names ({cause}, {goal}, {object}, ...).
using ConceptSlots = std::map<std::string, ConceptId>;

/// One row of the event table: a concept pattern whose `{slot}` entries are
/// substituted from the event, plus which slot provides the cause concept.
struct MappingRow {
  std::vector<std::string> pattern;
  std::string cause_slot = "cause";
};

struct MappingTable {
  std::map<EventType, MappingRow> events;
  std::map<Cause, ConceptId> causes;
  /// Concept patterns for dialogue replies, keyed like templates.
  std::map<std::string, std::vector<std::string>> replies;
};

/// Throws Error(parse_error) on malformed input.
MappingTable parse_mapping_table(std::string_view json_text);

/// Layer one of the explanation pipeline: robot events to concept sequences.
class Mapper {
 public:
  /// Throws Error(parse_error) if a row references a concept the lexicon lacks
  /// or a cause_slot that its pattern cannot fill.
  Mapper(MappingTable table, LexiconPtr lexicon);

  static Mapper builtin(LexiconPtr lexicon);

  /// Throws Error(unmappable_event) if the table has no row for the type.
  ConceptSequence map_event(const RobotEvent& event) const;

  /// Slot bindings an event contributes to templates.
  ConceptSlots slots_for(const RobotEvent& event) const;

  std::optional<ConceptId> cause_concept(Cause cause) const;

  /// Substitutes slots into a reply pattern; slots without a value are dropped.
  /// Throws Error(missing_template) for an unknown reply key.
  ConceptSequence reply(std::string_view key, const ConceptSlots& slots) const;

  /// The action concept (second pattern entry) for an event type.
  ConceptId action_concept(EventType type) const;

  const MappingTable& table() const noexcept { return table_; }
  const LexiconPtr& lexicon() const noexcept { return lexicon_; }

 private:
  MappingTable table_;
  LexiconPtr lexicon_;
};

using MapperPtr = std::shared_ptr<const Mapper>;

}  // namespace pictobridge
