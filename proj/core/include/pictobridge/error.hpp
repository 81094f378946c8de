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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pictobridge {

enum class Errc {
  unknown_concept,
  unknown_language,
  unknown_term,
  unmappable_event,
  missing_template,
  illegal_value,
  unknown_message,
  stale_event,
  unknown_token,
  malformed_topic,
  malformed_body,
  unknown_scenario,
  invalid_target,
  unknown_station,
  unknown_kind,
  unknown_board,
  io_failure,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying
/// one of the codes above; what() holds a human-readable detail line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pictobridge
