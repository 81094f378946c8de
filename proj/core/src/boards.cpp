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

#include "pictobridge/boards.hpp"

#include <map>
#include <set>

#include "fsio.hpp"
#include "pictobridge/dialogue.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Layout {
  int rows;
  int cols;
  LangText name;
  // Row-major concept ids; commands are looked up in kCommands.
  std::vector<std::vector<std::string>> grid;
};

const std::map<std::string, Layout>& layouts() {
  static const std::map<std::string, Layout> table{
      {"interaction",
       {3, 4, {{"en", "Interaction panel"}, {"es", "Panel de interacción"}},
        {{"why", "stop", "wait", "go"}, {"yes", "no", "repeat", "images"}, {"robot", "person", "object", "goal"}}}},
      {"explanation",
       {2, 4, {{"en", "Explanation board"}, {"es", "Tablero de explicación"}},
        {{"robot", "turn", "object", "path"}, {"why", "yes", "no", "repeat"}}}},
      {"full",
       {4, 6, {{"en", "Full board"}, {"es", "Tablero completo"}},
        {{"robot", "person", "want", "why", "goal", "summary"},
         {"take", "carry", "go", "stop", "wait", "turn"},
         {"box", "object", "obstacle", "path", "left", "safety"},
         {"charging-zone", "loading-zone", "warehouse", "simpler", "yes", "no"}}}},
  };
  return table;
}

std::optional<BoardAction> command_for(std::string_view concept_id) {
  static const std::set<std::string_view> direct{"why",    "stop",  "wait",    "go",  "yes", "no",
                                                 "repeat", "images", "goal", "summary", "simpler"};
  static const std::set<std::string_view> stations{"charging-zone", "loading-zone", "warehouse"};
  if (direct.count(concept_id)) return BoardAction{ActionKind::command, std::string(concept_id), std::nullopt};
  if (stations.count(concept_id)) return BoardAction{ActionKind::command, "set-goal", std::string(concept_id)};
  return std::nullopt;
}

LangText restrict(const LangText& text, const std::vector<LanguageCode>& langs) {
  LangText out;
  for (const auto& lang : langs) {
    if (auto it = text.find(lang); it != text.end()) out[lang] = it->second;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& board_kinds() {
  static const std::vector<std::string> kinds{"interaction", "explanation", "full"};
  return kinds;
}

Board generate_board(std::string_view kind, const std::vector<LanguageCode>& langs, const Lexicon& lexicon) {
  auto it = layouts().find(std::string(kind));
  if (it == layouts().end()) throw Error(Errc::unknown_kind, std::string(kind));
  for (const auto& lang : langs) {
    if (!lexicon.declares(lang)) throw Error(Errc::unknown_language, lang);
  }
  const Layout& layout = it->second;
  Board board;
  board.id = it->first;
  board.rows = layout.rows;
  board.cols = layout.cols;
  board.name = restrict(layout.name, langs);
  for (int r = 0; r < static_cast<int>(layout.grid.size()); ++r) {
    for (int c = 0; c < static_cast<int>(layout.grid[r].size()); ++c) {
      const auto& id = layout.grid[r][c];
      const Concept& concept_entry = lexicon.concept_of(id);
      BoardCell cell;
      cell.id = "c-" + id;
      cell.row = r;
      cell.col = c;
      cell.concept_id = id;
      cell.labels = restrict(concept_entry.labels, langs);
      cell.pictogram = concept_entry.pictogram;
      cell.action = command_for(id).value_or(BoardAction{});
      board.cells.push_back(std::move(cell));
    }
  }
  return board;
}

std::vector<Violation> validate_board(const Board& board, const Lexicon& lexicon) {
  std::vector<Violation> out;
  if (board.rows <= 0 || board.cols <= 0) out.push_back({"bad-dimensions", board.id, "rows and cols must be positive"});
  std::set<std::pair<int, int>> positions;
  std::set<std::string> ids;
  for (const auto& cell : board.cells) {
    if (cell.row < 0 || cell.col < 0 || cell.row >= board.rows || cell.col >= board.cols) {
      out.push_back({"position-out-of-range", cell.id, std::to_string(cell.row) + "," + std::to_string(cell.col)});
    }
    if (!positions.insert({cell.row, cell.col}).second) {
      out.push_back({"duplicate-position", cell.id, std::to_string(cell.row) + "," + std::to_string(cell.col)});
    }
    if (!ids.insert(cell.id).second) out.push_back({"duplicate-id", cell.id, ""});
    if (!lexicon.contains(cell.concept_id)) out.push_back({"unknown-concept", cell.id, cell.concept_id});
    if (cell.action.kind == ActionKind::command) {
      if (!is_intent_token(cell.action.token)) out.push_back({"bad-token", cell.id, cell.action.token});
      if (intent_requires_arg(cell.action.token) && !cell.action.arg) {
        out.push_back({"missing-arg", cell.id, cell.action.token});
      }
    }
  }
  return out;
}

ordered_json board_to_json(const Board& board) {
  ordered_json j;
  j["id"] = board.id;
  j["rows"] = board.rows;
  j["cols"] = board.cols;
  j["name"] = ordered_json::object();
  for (const auto& [lang, text] : board.name) j["name"][lang] = text;
  auto& cells = j["cells"] = ordered_json::array();
  for (const auto& cell : board.cells) {
    ordered_json c;
    c["id"] = cell.id;
    c["row"] = cell.row;
    c["col"] = cell.col;
    c["concept"] = cell.concept_id;
    c["labels"] = ordered_json::object();
    for (const auto& [lang, text] : cell.labels) c["labels"][lang] = text;
    c["pictogram"] = {{"catalog_id", cell.pictogram.catalog_id}, {"fallback_text", cell.pictogram.fallback_text}};
    ordered_json action;
    action["kind"] = cell.action.kind == ActionKind::command ? "command" : "display";
    if (cell.action.kind == ActionKind::command) {
      action["token"] = cell.action.token;
      if (cell.action.arg) action["arg"] = *cell.action.arg;
    }
    c["action"] = std::move(action);
    cells.push_back(std::move(c));
  }
  return j;
}

Board board_from_json(const json& j) {
  try {
    Board board;
    board.id = j.at("id").get<std::string>();
    board.rows = j.at("rows").get<int>();
    board.cols = j.at("cols").get<int>();
    board.name = j.at("name").get<LangText>();
    for (const auto& c : j.at("cells")) {
      BoardCell cell;
      cell.id = c.at("id").get<std::string>();
      cell.row = c.at("row").get<int>();
      cell.col = c.at("col").get<int>();
      cell.concept_id = c.at("concept").get<std::string>();
      cell.labels = c.value("labels", LangText{});
      if (c.contains("pictogram")) {
        cell.pictogram = {c["pictogram"].at("catalog_id").get<std::int64_t>(),
                          c["pictogram"].at("fallback_text").get<std::string>()};
      }
      const auto& a = c.at("action");
      const auto kind = a.at("kind").get<std::string>();
      if (kind == "command") {
        cell.action.kind = ActionKind::command;
        cell.action.token = a.at("token").get<std::string>();
        if (a.contains("arg")) cell.action.arg = a["arg"].get<std::string>();
      } else if (kind != "display") {
        throw Error(Errc::parse_error, "board cell " + cell.id + ": unknown action kind " + kind);
      }
      board.cells.push_back(std::move(cell));
    }
    return board;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("board: ") + e.what());
  }
}

std::string board_text(const Board& board) { return board_to_json(board).dump(2) + "\n"; }

std::vector<std::filesystem::path> export_boards(const std::filesystem::path& dir,
                                                 const std::vector<LanguageCode>& langs, const Lexicon& lexicon) {
  std::vector<std::filesystem::path> written;
  for (const auto& kind : board_kinds()) {
    auto path = dir / (kind + ".json");
    detail::write_file_atomic(path, board_text(generate_board(kind, langs, lexicon)));
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace pictobridge
