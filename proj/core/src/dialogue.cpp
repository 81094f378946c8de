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

#include "pictobridge/dialogue.hpp"

#include <algorithm>
#include <array>

#include "pictobridge/error.hpp"
#include "pictobridge/serialize.hpp"

namespace pictobridge {

namespace {

using nlohmann::ordered_json;

constexpr std::array<std::string_view, 15> kTokens = {
    "why",    "stop",         "go",     "wait",    "goal", "set-goal", "repeat",   "summary",
    "step-by-step", "images", "simpler", "yes",    "no",   "define",   "language",
};

bool emitted_in_summary_mode(EventType type) {
  return type == EventType::PLAN_CHANGED || type == EventType::GOAL_SET || type == EventType::BATTERY_LOW;
}

LangText same_in_all(const Lexicon& lexicon, const std::string& text) {
  LangText out;
  for (const auto& lang : lexicon.languages()) out[lang] = text;
  return out;
}

bool is_station(const Lexicon& lexicon, std::string_view id) {
  return id != "goal" && lexicon.contains(id) && lexicon.concept_of(id).category == Category::goal;
}

}  // namespace

std::span<const std::string_view> intent_tokens() noexcept { return kTokens; }

bool is_intent_token(std::string_view token) noexcept {
  return std::find(kTokens.begin(), kTokens.end(), token) != kTokens.end();
}

bool intent_requires_arg(std::string_view token) noexcept {
  return token == "set-goal" || token == "define" || token == "language";
}

Intent parse_payload(std::string_view payload) {
  Intent intent;
  auto space = payload.find(' ');
  intent.token = std::string(payload.substr(0, space));
  if (space != std::string_view::npos && space + 1 < payload.size()) intent.arg = std::string(payload.substr(space + 1));
  return intent;
}

std::string format_payload(const Intent& intent) {
  return intent.arg ? intent.token + " " + *intent.arg : intent.token;
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::step_by_step ? "step-by-step" : "summary-on-demand";
}

Dialogue::Dialogue(ComposerPtr composer, UserProfile profile, DialogueOptions options, FeedbackLedger ledger)
    : composer_(std::move(composer)), options_(options) {
  if (!composer_) throw Error(Errc::parse_error, "dialogue: null composer");
  if (!composer_->lexicon().declares(profile.language)) throw Error(Errc::illegal_value, "language=" + profile.language);
  state_.profile = std::move(profile);
  state_.ledger = std::move(ledger);
  if (options_.tick_ms <= 0) options_.tick_ms = 1;
  if (options_.summary_k == 0) options_.summary_k = 1;
}

ExplanationMessage Dialogue::reply(std::string_view key, Slots slots, Source source) const {
  auto seq = composer_->mapper().reply(key, slots.concepts);
  return composer_->compose_reply(key, std::move(seq), std::move(slots), policy(), source);
}

ExplanationMessage Dialogue::system(std::string_view key, Slots slots) const {
  return reply(key, std::move(slots), Source::system);
}

LangText Dialogue::prompt(std::string_view key) const {
  return composer_->render(std::string("prompt:") + std::string(key), Detail::standard, {});
}

void Dialogue::emit(Reaction& out, ExplanationMessage msg) {
  msg.id = "m" + std::to_string(next_id_++);
  known_ids_.insert(msg.id);
  ordered_json line;
  line["kind"] = "explanation";
  const auto body = to_json(msg);
  for (const auto& [k, v] : body.items()) line[k] = v;
  transcript_.push_back(std::move(line));
  if (msg.source != Source::system) state_.last_message = msg;
  out.messages.push_back(std::move(msg));
}

void Dialogue::emit_robot(Reaction& out, ExplanationMessage msg) {
  const auto pace = state_.profile.pace_ms;
  const bool due = !last_robot_emit_ms_ || now_ms() - *last_robot_emit_ms_ >= pace;
  if (pace == 0 || (pending_.empty() && due)) {
    last_robot_emit_ms_ = now_ms();
    emit(out, std::move(msg));
  } else {
    pending_.push_back(std::move(msg));
  }
}

void Dialogue::flush(Reaction& out) {
  while (!pending_.empty()) {
    const auto pace = state_.profile.pace_ms;
    if (pace != 0 && last_robot_emit_ms_ && now_ms() - *last_robot_emit_ms_ < pace) break;
    last_robot_emit_ms_ = now_ms();
    emit(out, std::move(pending_.front()));
    pending_.pop_front();
  }
}

void Dialogue::log_intent(const Intent& intent) {
  ordered_json line;
  line["kind"] = "intent";
  line["tick"] = tick_;
  line["token"] = intent.token;
  if (intent.arg) line["arg"] = *intent.arg;
  transcript_.push_back(std::move(line));
}

void Dialogue::log_profile() {
  ordered_json line;
  line["kind"] = "profile";
  line["tick"] = tick_;
  line["profile"] = profile_to_json(state_.profile);
  transcript_.push_back(std::move(line));
}

void Dialogue::set_profile(Reaction& out, UserProfile profile) {
  state_.profile = std::move(profile);
  out.profile = state_.profile;
  log_profile();
}

void Dialogue::observe(const World& world) {
  state_.current_goal = world.goal;
  state_.carrying = world.carried;
}

Reaction Dialogue::advance_to(std::int64_t tick) {
  Reaction out;
  tick_ = std::max(tick_, tick);
  flush(out);
  return out;
}

std::optional<LangText> Dialogue::recall_similar(const RobotEvent& event) const {
  for (auto it = state_.history.rbegin(); it != state_.history.rend(); ++it) {
    if (it->event.type != event.type || it->event.seq >= event.seq) continue;
    Slots slots;
    slots.text["time"] = same_in_all(composer_->lexicon(), std::to_string(it->event.sim_time));
    if (it->event.goal && composer_->lexicon().contains(*it->event.goal)) slots.concepts["goal"] = *it->event.goal;
    return composer_->render("recall:" + std::string(to_string(event.type)), Detail::standard, slots);
  }
  return std::nullopt;
}

Reaction Dialogue::on_robot_event(const RobotEvent& event) {
  if (event.seq <= last_seq_) {
    throw Error(Errc::stale_event, "seq " + std::to_string(event.seq) + " after " + std::to_string(last_seq_));
  }
  Reaction out;
  tick_ = std::max(tick_, event.sim_time);
  flush(out);

  const auto p = policy();
  auto msg = composer_->compose(composer_->mapper().map_event(event), event, p);
  if (p.detail != Detail::basic) {
    msg.recall_note = recall_similar(event);
    if (state_.current_goal && (event.type == EventType::TURN || event.type == EventType::PLAN_CHANGED)) {
      LangText note;
      for (const auto& lang : composer_->lexicon().languages()) {
        note[lang] = composer_->relevance_clause(*state_.current_goal, lang).text;
      }
      msg.relevance_note = std::move(note);
    }
  }
  last_seq_ = event.seq;
  state_.history.push_back({event, msg, state_.current_goal});

  switch (event.type) {
    case EventType::GOAL_SET: state_.current_goal = event.goal; break;
    case EventType::GOAL_REACHED: state_.current_goal.reset(); break;
    case EventType::PICK: state_.carrying = event.object; break;
    case EventType::PLACE: state_.carrying.reset(); break;
    default: break;
  }

  if (state_.mode == Mode::step_by_step || emitted_in_summary_mode(event.type)) {
    emit_robot(out, std::move(msg));
    if (!out.messages.empty() && out.messages.back().provenance == event.seq) {
      state_.history.back().message.id = out.messages.back().id;
    }
  }
  return out;
}

ExplanationMessage Dialogue::summarize(std::size_t k) const {
  if (state_.history.empty() || k == 0) return no_context();
  const auto n = std::min(k, state_.history.size());
  const auto first = state_.history.end() - static_cast<std::ptrdiff_t>(n);
  const auto& lexicon = composer_->lexicon();

  ConceptSequence seq;
  Slots slots;
  slots.text["count"] = same_in_all(lexicon, std::to_string(n));
  auto& items = slots.text["items"];
  for (auto it = first; it != state_.history.end(); ++it) {
    seq.concepts.push_back(composer_->mapper().action_concept(it->event.type));
    Slots event_slots;
    event_slots.concepts = composer_->mapper().slots_for(it->event);
    for (const auto& lang : lexicon.languages()) {
      auto& joined = items[lang];
      if (!joined.empty()) joined += ' ';
      joined += composer_->render_one(Composer::event_key(it->event), Detail::basic, lang, event_slots);
    }
  }
  auto msg = composer_->compose_reply("summary", std::move(seq), std::move(slots), policy(), Source::user_initiated);
  msg.prompt = prompt("mode");
  return msg;
}

Reaction Dialogue::why() {
  Reaction out;
  if (state_.history.empty()) {
    emit(out, no_context());
    return out;
  }
  const Episode& ep = state_.history.back();
  const RobotEvent& e = ep.event;
  const Mapper& mapper = composer_->mapper();

  auto seq = mapper.map_event(e);
  if (e.cause) {
    if (auto c = mapper.cause_concept(*e.cause)) {
      seq.cause_concept = c;
      if (std::find(seq.concepts.begin(), seq.concepts.end(), *c) == seq.concepts.end()) seq.concepts.push_back(*c);
    }
  }
  Slots slots;
  slots.concepts = mapper.slots_for(e);
  if (!slots.concepts.count("goal") && ep.goal_at_time) slots.concepts["goal"] = *ep.goal_at_time;
  auto msg = composer_->compose_reply("why:" + Composer::event_key(e), std::move(seq), std::move(slots), policy(),
                                      Source::user_initiated);
  msg.provenance = e.seq;
  msg.prompt = prompt("feedback");
  emit(out, std::move(msg));
  return out;
}

Reaction Dialogue::feedback(bool helpful) {
  Reaction out;
  if (!state_.last_message) {
    emit(out, no_context());
    return out;
  }
  FeedbackEntry entry{state_.last_message->id, helpful, now_ms()};
  state_.ledger.append(entry);
  out.feedback.push_back(entry);
  if (helpful) {
    emit(out, system("ack:yes"));
    return out;
  }
  if (options_.auto_adjust) {
    auto adjusted = auto_adjust(state_.ledger, state_.profile);
    if (adjusted.detail != state_.profile.detail) {
      set_profile(out, std::move(adjusted));
      auto msg = system("ack:no-adjusted");
      msg.prompt = prompt("detail");
      emit(out, std::move(msg));
      return out;
    }
  }
  auto msg = system("ack:no");
  msg.prompt = prompt("images");
  emit(out, std::move(msg));
  return out;
}

Reaction Dialogue::handle_intent(const Intent& intent) {
  const auto& t = intent.token;
  if (!is_intent_token(t)) throw Error(Errc::unknown_token, t);
  log_intent(intent);
  const Lexicon& lexicon = composer_->lexicon();
  Reaction out;

  if (intent_requires_arg(t) && !intent.arg) {
    Slots slots;
    if (t == "define") slots.text["term"] = same_in_all(lexicon, "");
    if (t == "language") slots.text["token"] = same_in_all(lexicon, "");
    emit(out, system("clarify:" + t, std::move(slots)));
    return out;
  }

  if (t == "why") return why();
  if (t == "yes" || t == "no") return feedback(t == "yes");

  if (t == "stop" || t == "go" || t == "wait") {
    out.commands.push_back({*parse_command_kind(t), std::nullopt});
    emit(out, system("ack:" + t));
  } else if (t == "set-goal") {
    if (!is_station(lexicon, *intent.arg)) {
      emit(out, system("clarify:set-goal"));
    } else {
      out.commands.push_back({CommandKind::set_goal, *intent.arg});
      Slots slots;
      slots.concepts["goal"] = *intent.arg;
      emit(out, system("ack:set-goal", std::move(slots)));
    }
  } else if (t == "goal") {
    Slots slots;
    std::string key = "goal:none";
    if (state_.current_goal) {
      slots.concepts["goal"] = *state_.current_goal;
      key = "goal:moving";
      if (state_.carrying) {
        slots.concepts["object"] = *state_.carrying;
        key = "goal:carrying";
      }
    }
    emit(out, reply(key, std::move(slots), Source::user_initiated));
  } else if (t == "repeat") {
    if (!state_.last_message) {
      emit(out, no_context());
    } else {
      auto copy = *state_.last_message;
      copy.source = Source::user_initiated;
      emit(out, std::move(copy));
    }
  } else if (t == "summary") {
    state_.mode = Mode::summary_on_demand;
    emit(out, summarize(options_.summary_k));
  } else if (t == "step-by-step") {
    state_.mode = Mode::step_by_step;
    emit(out, system("ack:step-by-step"));
  } else if (t == "simpler" || t == "images") {
    if (!state_.last_message) {
      emit(out, no_context());
    } else {
      auto msg = composer_->reformulate(*state_.last_message,
                                        t == "simpler" ? Reformulation::simpler : Reformulation::images);
      msg.source = Source::user_initiated;
      emit(out, std::move(msg));
    }
  } else if (t == "define") {
    const auto& terms = lexicon.terms();
    auto it = std::find_if(terms.begin(), terms.end(), [&](const TermDefinition& d) { return d.term == *intent.arg; });
    if (it == terms.end()) {
      Slots slots;
      slots.text["term"] = same_in_all(lexicon, *intent.arg);
      emit(out, system("clarify:define", std::move(slots)));
    } else {
      Slots slots;
      slots.text["definition"] = it->definition;
      ConceptSequence seq = it->concepts.empty() ? composer_->mapper().reply("define", {})
                                                 : ConceptSequence{it->concepts, std::nullopt};
      emit(out, composer_->compose_reply("define", std::move(seq), std::move(slots), policy(), Source::user_initiated));
    }
  } else if (t == "language") {
    if (!lexicon.declares(*intent.arg)) {
      Slots slots;
      slots.text["token"] = same_in_all(lexicon, *intent.arg);
      emit(out, system("clarify:language", std::move(slots)));
    } else {
      set_profile(out, set_preference(state_.profile, "language", *intent.arg, lexicon));
      emit(out, composer_->confirm_language(*intent.arg, policy()));
    }
  }
  return out;
}

Reaction Dialogue::handle_payload(std::string_view payload) {
  auto intent = parse_payload(payload);
  if (!is_intent_token(intent.token)) {
    Reaction out;
    Slots slots;
    slots.text["token"] = same_in_all(composer_->lexicon(), std::string(payload));
    emit(out, system("clarify", std::move(slots)));
    return out;
  }
  return handle_intent(intent);
}

Reaction Dialogue::apply_profile(const nlohmann::json& patch) {
  if (!patch.is_object()) throw Error(Errc::illegal_value, "profile patch must be an object");
  const Lexicon& lexicon = composer_->lexicon();
  UserProfile next = state_.profile;
  for (const auto& [field, value] : patch.items()) {
    if (field == "user_id") {
      if (value != next.user_id) throw Error(Errc::illegal_value, "user_id cannot be changed");
      continue;
    }
    next = set_preference(std::move(next), field, value, lexicon);
  }
  Reaction out;
  set_profile(out, std::move(next));
  if (patch.contains("language")) emit(out, composer_->confirm_language(state_.profile.language, policy()));
  if (state_.profile.pace_ms == 0) flush(out);
  return out;
}

Reaction Dialogue::submit_feedback(std::string_view message_id, bool helpful) {
  state_.ledger = record_feedback(std::move(state_.ledger), known_ids_, message_id, helpful, now_ms());
  Reaction out;
  out.feedback.push_back(state_.ledger.entries().back());
  ordered_json line;
  line["kind"] = "feedback";
  line["tick"] = tick_;
  line["message_id"] = std::string(message_id);
  line["helpful"] = helpful;
  transcript_.push_back(std::move(line));
  if (!helpful && options_.auto_adjust) {
    auto adjusted = auto_adjust(state_.ledger, state_.profile);
    if (adjusted != state_.profile) set_profile(out, std::move(adjusted));
  }
  return out;
}

}  // namespace pictobridge
