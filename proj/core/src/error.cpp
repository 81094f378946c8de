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

#include "pictobridge/error.hpp"

namespace pictobridge {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_concept: return "UnknownConcept";
    case Errc::unknown_language: return "UnknownLanguage";
    case Errc::unknown_term: return "UnknownTerm";
    case Errc::unmappable_event: return "UnmappableEvent";
    case Errc::missing_template: return "MissingTemplate";
    case Errc::illegal_value: return "IllegalValue";
    case Errc::unknown_message: return "UnknownMessage";
    case Errc::stale_event: return "StaleEvent";
    case Errc::unknown_token: return "UnknownToken";
    case Errc::malformed_topic: return "MalformedTopic";
    case Errc::malformed_body: return "MalformedBody";
    case Errc::unknown_scenario: return "UnknownScenario";
    case Errc::invalid_target: return "InvalidTarget";
    case Errc::unknown_station: return "UnknownStation";
    case Errc::unknown_kind: return "UnknownKind";
    case Errc::unknown_board: return "UnknownBoard";
    case Errc::io_failure: return "IOFailure";
    case Errc::parse_error: return "ParseError";
  }
  return "Error";
}

}  // namespace pictobridge
