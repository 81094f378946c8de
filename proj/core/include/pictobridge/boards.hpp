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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pictobridge/lexicon.hpp"

namespace pictobridge {

enum class ActionKind { command, display };

struct BoardAction {
  ActionKind kind = ActionKind::display;
  std::string token;
  /// Sent as `token<space>arg` (set-goal cells carry their station).
  std::optional<std::string> arg;

  friend bool operator==(const BoardAction&, const BoardAction&) = default;
};

struct BoardCell {
  std::string id;
  int row = 0;
  int col = 0;
  ConceptId concept_id;
  LangText labels;
  PictogramRef pictogram;
  BoardAction action;

  friend bool operator==(const BoardCell&, const BoardCell&) = default;
};

struct Board {
  std::string id;
  int rows = 0;
  int cols = 0;
  LangText name;
  std::vector<BoardCell> cells;

  friend bool operator==(const Board&, const Board&) = default;
};

const std::vector<std::string>& board_kinds();

/// Throws Error(unknown_kind) or Error(unknown_language).
Board generate_board(std::string_view kind, const std::vector<LanguageCode>& langs, const Lexicon& lexicon);

/// Empty iff positions are in range and unique, ids are unique, every concept
/// is in the lexicon and every command token is part of the intent vocabulary.
std::vector<Violation> validate_board(const Board& board, const Lexicon& lexicon);

nlohmann::ordered_json board_to_json(const Board& board);
/// Throws Error(parse_error).
Board board_from_json(const nlohmann::json& j);
/// Exported form: two-space indent, trailing newline.
std::string board_text(const Board& board);

/// Writes `<id>.json` for every kind. Throws Error(io_failure).
std::vector<std::filesystem::path> export_boards(const std::filesystem::path& dir,
                                                 const std::vector<LanguageCode>& langs, const Lexicon& lexicon);

}  // namespace pictobridge
