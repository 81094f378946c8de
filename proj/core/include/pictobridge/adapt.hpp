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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pictobridge/composer.hpp"

namespace pictobridge {

inline constexpr std::int64_t kMaxPaceMs = 60000;

struct UserProfile {
  std::string user_id = "default";
  Detail detail = Detail::standard;
  LanguageCode language = "en";
  ModalityHint modality_pref{Modality::visual};
  bool noisy_env = false;
  bool low_vision = false;
  std::int64_t pace_ms = 0;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

/// Field names accepted by set_preference.
std::vector<std::string> profile_fields();

/// Returns the profile with one field replaced. Throws Error(illegal_value)
/// for an unknown field, a value of the wrong type, an undeclared language,
/// an empty modality set or a pace outside [0, 60000].
UserProfile set_preference(UserProfile profile, std::string_view field, const nlohmann::json& value,
                           const Lexicon& lexicon);

/// Noisy environments force visual output and drop audio; low vision adds
/// an audio script otherwise.
Policy effective_policy(const UserProfile& profile);

struct FeedbackEntry {
  std::string message_id;
  bool helpful = false;
  std::int64_t timestamp = 0;

  friend bool operator==(const FeedbackEntry&, const FeedbackEntry&) = default;
};

class FeedbackLedger {
 public:
  const std::vector<FeedbackEntry>& entries() const noexcept { return entries_; }
  std::size_t yes_count() const noexcept { return yes_; }
  std::size_t no_count() const noexcept { return entries_.size() - yes_; }
  std::size_t size() const noexcept { return entries_.size(); }

  void append(FeedbackEntry entry);

  friend bool operator==(const FeedbackLedger&, const FeedbackLedger&) = default;

 private:
  std::vector<FeedbackEntry> entries_;
  std::size_t yes_ = 0;
};

/// Throws Error(unknown_message) if `message_id` is not in `known`.
FeedbackLedger record_feedback(FeedbackLedger ledger, const std::set<std::string>& known,
                               std::string_view message_id, bool helpful, std::int64_t timestamp);

inline constexpr std::size_t kAdjustWindow = 3;

/// Three negative entries in a row at the tail lower detail by one step.
UserProfile auto_adjust(const FeedbackLedger& ledger, UserProfile profile);

nlohmann::ordered_json profile_to_json(const UserProfile& profile);
/// Throws Error(illegal_value) through set_preference semantics.
UserProfile profile_from_json(const nlohmann::json& j, const Lexicon& lexicon);

nlohmann::ordered_json feedback_to_json(const FeedbackEntry& entry);
FeedbackEntry feedback_from_json(const nlohmann::json& j);

/// On-disk layout below a data directory: profiles/<user>.json, feedback.jsonl.
class ProfileStore {
 public:
  explicit ProfileStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<UserProfile> load(std::string_view user_id, const Lexicon& lexicon) const;
  void save(const UserProfile& profile) const;
  void append_feedback(const FeedbackEntry& entry) const;
  FeedbackLedger load_ledger() const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace pictobridge
