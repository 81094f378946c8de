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

#include "pictobridge/runner.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "fsio.hpp"
#include "pictobridge/bus.hpp"
#include "pictobridge/error.hpp"
#include "pictobridge/serialize.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;

[[noreturn]] void bad_line(int n, const std::string& why) {
  throw Error(Errc::parse_error, "line " + std::to_string(n) + ": " + why);
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

json directive_value(const std::string& text) {
  auto parsed = json::parse(text, nullptr, false);
  return parsed.is_discarded() ? json(text) : parsed;
}

}  // namespace

Script parse_script(std::string_view text) {
  Script script;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;
    if (words.size() < 2) bad_line(n, "expected '<tick> <intent> [arg]'");

    ScriptLine entry;
    entry.line_no = n;
    const auto& tick = words[0];
    auto [end, ec] = std::from_chars(tick.data(), tick.data() + tick.size(), entry.tick);
    if (ec != std::errc{} || end != tick.data() + tick.size() || entry.tick < 0) {
      bad_line(n, "bad tick '" + tick + "'");
    }
    entry.token = words[1];
    if (entry.is_profile()) {
      if (words.size() != 4) bad_line(n, "expected '<tick> profile <field> <value>'");
      entry.arg = words[2] + " " + words[3];
    } else {
      if (!is_intent_token(entry.token)) bad_line(n, "unknown intent '" + entry.token + "'");
      if (words.size() > 3) bad_line(n, "too many fields");
      if (words.size() == 3) entry.arg = words[2];
    }
    script.push_back(std::move(entry));
  }
  std::stable_sort(script.begin(), script.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });
  return script;
}

Script load_script(const std::filesystem::path& path) { return parse_script(detail::read_file(path)); }

RunResult run_script(const World& initial, const Script& script, std::int64_t ticks, const ComposerPtr& composer,
                     const RunOptions& options) {
  Bus bus;
  auto commands = bus.subscribe(topics::commands);
  auto robot_cmd = bus.subscribe(topics::robot_cmd);
  auto robot_events = bus.subscribe(topics::robot_events);

  Dialogue dialogue(composer, options.profile, options.dialogue);
  RunResult result;
  World world = initial;
  dialogue.observe(world);

  auto publish_messages = [&](const Reaction& r) {
    for (const auto& m : r.messages) bus.publish(topics::explanations, to_json(m).dump());
    for (const auto& c : r.commands) bus.publish(topics::robot_cmd, to_json(c).dump());
  };
  auto deliver_events = [&](const std::vector<RobotEvent>& events) {
    for (const auto& e : events) bus.publish(topics::robot_events, to_json(e).dump());
    while (auto msg = robot_events.try_pop()) {
      auto e = event_from_json(json::parse(msg->payload));
      result.events.push_back(e);
      publish_messages(dialogue.on_robot_event(e));
    }
  };
  auto drain_commands = [&] {
    while (auto msg = robot_cmd.try_pop()) {
      auto applied = apply_command(std::move(world), command_from_json(json::parse(msg->payload)));
      world = std::move(applied.world);
      deliver_events(applied.events);
    }
  };
  auto run_line = [&](const ScriptLine& line) {
    if (line.is_profile()) {
      auto space = line.arg->find(' ');
      json patch;
      patch[line.arg->substr(0, space)] = directive_value(line.arg->substr(space + 1));
      publish_messages(dialogue.apply_profile(patch));
    } else {
      bus.publish(topics::commands, format_payload({line.token, line.arg}));
      while (auto msg = commands.try_pop()) publish_messages(dialogue.handle_payload(msg->payload));
    }
    drain_commands();
  };

  auto next = script.begin();
  for (std::int64_t t = 0; t <= ticks; ++t) {
    publish_messages(dialogue.advance_to(t));
    for (; next != script.end() && next->tick == t; ++next) run_line(*next);
    if (t == 0) continue;
    auto stepped = step(std::move(world));
    world = std::move(stepped.world);
    deliver_events(stepped.events);
  }

  result.transcript = dialogue.transcript();
  result.world = std::move(world);
  result.history = dialogue.state().history.size();
  return result;
}

RunResult run_script(std::string_view scenario, std::int64_t seed, const Script& script, std::int64_t ticks,
                     const RunOptions& options) {
  static const ComposerPtr composer = std::make_shared<const Composer>(Composer::builtin());
  return run_script(load_scenario(scenario, seed), script, ticks, composer, options);
}

std::string transcript_text(const std::vector<nlohmann::ordered_json>& transcript) {
  std::string out;
  for (const auto& line : transcript) {
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pictobridge
