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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pictobridge/dialogue.hpp"
#include "pictobridge/simrobot.hpp"

namespace pictobridge {

/// One script line: `<tick> <token> [arg]`, or `<tick> profile <field> <value>`.
struct ScriptLine {
  std::int64_t tick = 0;
  std::string token;
  std::optional<std::string> arg;
  int line_no = 0;

  bool is_profile() const noexcept { return token == "profile"; }
  friend bool operator==(const ScriptLine&, const ScriptLine&) = default;
};

/// Ordered by tick; lines sharing a tick keep file order.
using Script = std::vector<ScriptLine>;

/// Blank lines and `#` comments are skipped. Throws Error(parse_error) whose
/// message starts with "line <n>:".
Script parse_script(std::string_view text);
Script load_script(const std::filesystem::path& path);

struct RunOptions {
  UserProfile profile;
  DialogueOptions dialogue;
};

struct RunResult {
  std::vector<nlohmann::ordered_json> transcript;
  World world;
  std::vector<RobotEvent> events;
  std::size_t history = 0;
};

/// Headless loop. Intents at tick 0 run before the first step; for each later
/// tick the scheduled intents run before the world steps. Lines past `ticks`
/// are not reached.
RunResult run_script(const World& initial, const Script& script, std::int64_t ticks, const ComposerPtr& composer,
                     const RunOptions& options = {});
RunResult run_script(std::string_view scenario, std::int64_t seed, const Script& script, std::int64_t ticks,
                     const RunOptions& options = {});

/// One compact JSON object per line, newline-terminated.
std::string transcript_text(const std::vector<nlohmann::ordered_json>& transcript);

}  // namespace pictobridge
