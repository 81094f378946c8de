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

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pictobridge {

struct FeedbackCounts {
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t total = 0;
};

/// What the HTTP layer may ask of the running dialogue. Implementations
/// serialize these calls with bus traffic.
class Session {
 public:
  virtual ~Session() = default;

  /// Returns the updated profile. Throws Error(illegal_value).
  virtual nlohmann::ordered_json patch_profile(const nlohmann::json& patch) = 0;
  /// Throws Error(unknown_message).
  virtual FeedbackCounts submit_feedback(const std::string& message_id, bool helpful) = 0;
  /// Last `limit` transcript entries, newest last.
  virtual std::vector<nlohmann::ordered_json> history(std::size_t limit) = 0;
  virtual nlohmann::ordered_json status() = 0;
};

}  // namespace pictobridge
