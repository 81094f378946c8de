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

#include <string>

#include <nlohmann/json.hpp>

#include "pictobridge/composer.hpp"
#include "pictobridge/mapper.hpp"
#include "pictobridge/simrobot.hpp"

namespace pictobridge {

// Wire formats for the JSON topics and the transcript. Field order is fixed;
// absent optionals are omitted. The *_from_json functions throw
// Error(parse_error).

nlohmann::ordered_json to_json(const RobotEvent& event);
RobotEvent event_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ExplanationMessage& msg);
ExplanationMessage message_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RobotCommand& cmd);
RobotCommand command_from_json(const nlohmann::json& j);

/// Robot pose, goal and load as shown on the status stream.
nlohmann::ordered_json status_json(const World& world);

nlohmann::ordered_json to_json(const LangText& text);
nlohmann::ordered_json to_json(const Cell& cell);

}  // namespace pictobridge
