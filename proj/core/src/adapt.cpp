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

#include "pictobridge/adapt.hpp"

#include <algorithm>
#include <sstream>

#include "fsio.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool valid_user_id(std::string_view id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

[[noreturn]] void illegal(std::string_view field, const json& value) {
  throw Error(Errc::illegal_value, std::string(field) + "=" + value.dump());
}

}  // namespace

std::vector<std::string> profile_fields() {
  return {"detail", "language", "modality_pref", "noisy_env", "low_vision", "pace_ms"};
}

UserProfile set_preference(UserProfile p, std::string_view field, const json& value, const Lexicon& lexicon) {
  if (field == "detail") {
    auto d = value.is_string() ? parse_detail(value.get<std::string>()) : std::nullopt;
    if (!d) illegal(field, value);
    p.detail = *d;
  } else if (field == "language") {
    if (!value.is_string() || !lexicon.declares(value.get<std::string>())) illegal(field, value);
    p.language = value.get<std::string>();
  } else if (field == "modality_pref") {
    if (!value.is_array() || value.empty()) illegal(field, value);
    ModalityHint hint;
    for (const auto& m : value) {
      auto parsed = m.is_string() ? parse_modality(m.get<std::string>()) : std::nullopt;
      if (!parsed) illegal(field, value);
      hint.insert(*parsed);
    }
    p.modality_pref = std::move(hint);
  } else if (field == "noisy_env" || field == "low_vision") {
    if (!value.is_boolean()) illegal(field, value);
    (field == "noisy_env" ? p.noisy_env : p.low_vision) = value.get<bool>();
  } else if (field == "pace_ms") {
    if (!value.is_number_integer()) illegal(field, value);
    auto pace = value.get<std::int64_t>();
    if (pace < 0 || pace > kMaxPaceMs) illegal(field, value);
    p.pace_ms = pace;
  } else {
    throw Error(Errc::illegal_value, "unknown profile field " + std::string(field));
  }
  return p;
}

Policy effective_policy(const UserProfile& profile) {
  Policy policy;
  policy.detail = profile.detail;
  policy.language = profile.language;
  policy.pace_ms = profile.pace_ms;
  if (profile.noisy_env) {
    policy.modality = {Modality::visual};
    if (profile.modality_pref.count(Modality::pictogram_only)) policy.modality.insert(Modality::pictogram_only);
  } else {
    policy.modality = profile.modality_pref;
    if (profile.low_vision) policy.modality.insert(Modality::audio_script);
  }
  return policy;
}

void FeedbackLedger::append(FeedbackEntry entry) {
  if (entry.helpful) ++yes_;
  entries_.push_back(std::move(entry));
}

FeedbackLedger record_feedback(FeedbackLedger ledger, const std::set<std::string>& known,
                               std::string_view message_id, bool helpful, std::int64_t timestamp) {
  if (!known.count(std::string(message_id))) throw Error(Errc::unknown_message, std::string(message_id));
  ledger.append({std::string(message_id), helpful, timestamp});
  return ledger;
}

UserProfile auto_adjust(const FeedbackLedger& ledger, UserProfile profile) {
  const auto& e = ledger.entries();
  if (e.size() < kAdjustWindow) return profile;
  if (std::all_of(e.end() - kAdjustWindow, e.end(), [](const FeedbackEntry& f) { return !f.helpful; })) {
    profile.detail = lower(profile.detail);
  }
  return profile;
}

ordered_json profile_to_json(const UserProfile& p) {
  ordered_json j;
  j["user_id"] = p.user_id;
  j["detail"] = to_string(p.detail);
  j["language"] = p.language;
  auto& modes = j["modality_pref"] = ordered_json::array();
  for (auto m : p.modality_pref) modes.push_back(to_string(m));
  j["noisy_env"] = p.noisy_env;
  j["low_vision"] = p.low_vision;
  j["pace_ms"] = p.pace_ms;
  return j;
}

UserProfile profile_from_json(const json& j, const Lexicon& lexicon) {
  if (!j.is_object()) throw Error(Errc::illegal_value, "profile must be an object");
  UserProfile p;
  for (const auto& [field, value] : j.items()) {
    if (field == "user_id") {
      if (!value.is_string() || !valid_user_id(value.get<std::string>())) illegal(field, value);
      p.user_id = value.get<std::string>();
    } else {
      p = set_preference(std::move(p), field, value, lexicon);
    }
  }
  return p;
}

ordered_json feedback_to_json(const FeedbackEntry& entry) {
  ordered_json j;
  j["message_id"] = entry.message_id;
  j["helpful"] = entry.helpful;
  j["timestamp"] = entry.timestamp;
  return j;
}

FeedbackEntry feedback_from_json(const json& j) {
  try {
    return {j.at("message_id").get<std::string>(), j.at("helpful").get<bool>(), j.value("timestamp", std::int64_t{0})};
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("feedback entry: ") + e.what());
  }
}

std::optional<UserProfile> ProfileStore::load(std::string_view user_id, const Lexicon& lexicon) const {
  if (!valid_user_id(user_id)) throw Error(Errc::illegal_value, "user_id=" + std::string(user_id));
  const auto path = dir_ / "profiles" / (std::string(user_id) + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j;
  try {
    j = json::parse(detail::read_file(path));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, path.string() + ": " + e.what());
  }
  return profile_from_json(j, lexicon);
}

void ProfileStore::save(const UserProfile& profile) const {
  if (!valid_user_id(profile.user_id)) throw Error(Errc::illegal_value, "user_id=" + profile.user_id);
  detail::write_file_atomic(dir_ / "profiles" / (profile.user_id + ".json"), profile_to_json(profile).dump(2) + "\n");
}

void ProfileStore::append_feedback(const FeedbackEntry& entry) const {
  detail::append_line(dir_ / "feedback.jsonl", feedback_to_json(entry).dump());
}

FeedbackLedger ProfileStore::load_ledger() const {
  FeedbackLedger ledger;
  const auto path = dir_ / "feedback.jsonl";
  if (!std::filesystem::exists(path)) return ledger;
  std::istringstream in(detail::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      ledger.append(feedback_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(Errc::parse_error, path.string() + ": " + e.what());
    }
  }
  return ledger;
}

}  // namespace pictobridge
