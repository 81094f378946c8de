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
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pictobridge/adapt.hpp"
#include "pictobridge/composer.hpp"
#include "pictobridge/simrobot.hpp"

namespace pictobridge {

struct Intent {
  std::string token;
  std::optional<std::string> arg;

  friend bool operator==(const Intent&, const Intent&) = default;
};

/// The closed intent vocabulary.
std::span<const std::string_view> intent_tokens() noexcept;
bool is_intent_token(std::string_view token) noexcept;
bool intent_requires_arg(std::string_view token) noexcept;

/// Bus payloads are `token` or `token<space>arg`.
Intent parse_payload(std::string_view payload);
std::string format_payload(const Intent& intent);

enum class Mode { step_by_step, summary_on_demand };

std::string_view to_string(Mode mode) noexcept;

struct Episode {
  RobotEvent event;
  /// Composed for every event; `id` stays empty when the mode suppressed it.
  ExplanationMessage message;
  std::optional<ConceptId> goal_at_time;
};

struct DialogueState {
  std::vector<Episode> history;
  std::optional<ExplanationMessage> last_message;
  std::optional<ConceptId> current_goal;
  std::optional<ConceptId> carrying;
  UserProfile profile;
  FeedbackLedger ledger;
  Mode mode = Mode::step_by_step;
};

struct DialogueOptions {
  bool auto_adjust = true;
  /// Wall-clock length of one simulator tick, used for pacing.
  std::int64_t tick_ms = 500;
  std::size_t summary_k = 5;
};

/// Everything one input caused, in emission order.
struct Reaction {
  std::vector<ExplanationMessage> messages;
  std::vector<RobotCommand> commands;
  std::vector<FeedbackEntry> feedback;
  std::optional<UserProfile> profile;
};

/// The explanation state machine. Not thread-safe; DialogueLoop serializes access.
class Dialogue {
 public:
  explicit Dialogue(ComposerPtr composer, UserProfile profile = {}, DialogueOptions options = {},
                    FeedbackLedger ledger = {});

  /// Throws Error(stale_event) unless event.seq exceeds every seq seen so far.
  Reaction on_robot_event(const RobotEvent& event);

  /// Throws Error(unknown_token) for tokens outside the vocabulary.
  Reaction handle_intent(const Intent& intent);

  /// Bus entry point: unknown tokens and missing arguments become
  /// clarification messages instead of errors.
  Reaction handle_payload(std::string_view payload);

  /// Validates every field before applying any. Throws Error(illegal_value).
  Reaction apply_profile(const nlohmann::json& patch);

  /// Throws Error(unknown_message). Emits no message.
  Reaction submit_feedback(std::string_view message_id, bool helpful);

  /// Takes the goal and carried object of a world the dialogue starts alongside.
  void observe(const World& world);

  /// Moves the clock forward (in ticks) and releases paced messages that are due.
  Reaction advance_to(std::int64_t tick);

  ExplanationMessage summarize(std::size_t k) const;
  std::optional<LangText> recall_similar(const RobotEvent& event) const;

  const DialogueState& state() const noexcept { return state_; }
  Policy policy() const { return effective_policy(state_.profile); }
  std::int64_t now_ms() const noexcept { return tick_ * options_.tick_ms; }
  std::int64_t tick() const noexcept { return tick_; }
  /// Robot-initiated messages held back by pace_ms.
  std::size_t deferred() const noexcept { return pending_.size(); }
  bool knows_message(std::string_view id) const { return known_ids_.count(std::string(id)) > 0; }

  /// Processing-order log: accepted intents, emitted messages, profile changes.
  const std::vector<nlohmann::ordered_json>& transcript() const noexcept { return transcript_; }
  const Composer& composer() const noexcept { return *composer_; }
  const DialogueOptions& options() const noexcept { return options_; }

 private:
  ExplanationMessage system(std::string_view key, Slots slots = {}) const;
  ExplanationMessage reply(std::string_view key, Slots slots, Source source) const;
  LangText prompt(std::string_view key) const;
  ExplanationMessage no_context() const { return system("nocontext"); }

  void emit(Reaction& out, ExplanationMessage msg);
  void emit_robot(Reaction& out, ExplanationMessage msg);
  void flush(Reaction& out);
  void log_intent(const Intent& intent);
  void log_profile();
  void set_profile(Reaction& out, UserProfile profile);

  Reaction why();
  Reaction feedback(bool helpful);

  ComposerPtr composer_;
  DialogueOptions options_;
  DialogueState state_;
  std::int64_t tick_ = 0;
  std::int64_t last_seq_ = 0;
  std::int64_t next_id_ = 1;
  std::set<std::string> known_ids_;
  std::deque<ExplanationMessage> pending_;
  std::optional<std::int64_t> last_robot_emit_ms_;
  std::vector<nlohmann::ordered_json> transcript_;
};

}  // namespace pictobridge
