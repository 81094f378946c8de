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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pictobridge/mapper.hpp"

namespace pictobridge {

enum class Heading { N, E, S, W };

std::string_view to_string(Heading heading) noexcept;
std::optional<Heading> parse_heading(std::string_view text) noexcept;

struct Task {
  ConceptId object;
  ConceptId from;
  ConceptId to;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Grid world stepped one tick at a time. Rows grow southwards, columns eastwards.
struct World {
  std::string scenario;
  int width = 0;
  int height = 0;
  std::set<Cell> obstacles;
  std::vector<Cell> person_path;
  int person_period = 1;
  std::size_t person_index = 0;
  std::map<ConceptId, Cell> stations;
  /// Objects lying at a station, by object id.
  std::map<ConceptId, ConceptId> objects;
  std::optional<Task> task;

  Cell robot;
  Heading heading = Heading::E;
  std::optional<ConceptId> carried;
  int battery = 100;
  std::optional<ConceptId> goal;
  std::int64_t tick = 0;

  bool frozen = false;
  std::optional<std::int64_t> wait_until;
  /// Goal to resume after a battery detour.
  std::optional<ConceptId> pending_goal;
  bool charging = false;
  int blocked_ticks = 0;
  bool halted_by_person = false;
  bool detour = false;
  bool empty_reported = false;
  bool unreachable_reported = false;
  std::int64_t next_seq = 1;

  std::optional<Cell> person() const;
  bool in_bounds(Cell c) const noexcept { return c.row >= 0 && c.col >= 0 && c.row < height && c.col < width; }

  friend bool operator==(const World&, const World&) = default;
};

inline constexpr int kLowBattery = 20;
inline constexpr int kWaitTicks = 5;
inline constexpr int kChargePerTick = 10;
inline constexpr int kDetourAfter = 3;

/// Throws Error(parse_error) on structural problems or violated world invariants.
World parse_scenario(std::string_view json_text, std::int64_t seed);
/// Built-in scenarios by name. Throws Error(unknown_scenario).
World load_scenario(std::string_view name, std::int64_t seed);
std::vector<std::string> scenario_names();

/// Invariant problems; empty when the world is consistent.
std::vector<std::string> check_world(const World& world);

/// Shortest 4-connected path from the robot to `target`, excluding the start
/// cell. Among equal-length paths the robot keeps its heading where it can,
/// then prefers N, E, S, W. `blocked` cells are treated as obstacles.
/// Throws Error(invalid_target).
std::vector<Cell> plan_path(const World& world, Cell target, const std::set<Cell>& blocked = {});

struct StepResult {
  World world;
  std::vector<RobotEvent> events;
};

StepResult step(World world);

enum class CommandKind { stop, go, wait, set_goal };

std::string_view to_string(CommandKind kind) noexcept;
std::optional<CommandKind> parse_command_kind(std::string_view text) noexcept;

struct RobotCommand {
  CommandKind kind = CommandKind::stop;
  std::optional<ConceptId> station;

  friend bool operator==(const RobotCommand&, const RobotCommand&) = default;
};

/// Throws Error(unknown_station) when set-goal names no station of the world.
StepResult apply_command(World world, const RobotCommand& cmd);

Heading heading_between(Cell from, Cell to) noexcept;

}  // namespace pictobridge
