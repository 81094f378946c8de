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

#include "pictobridge/simrobot.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <random>
#include <utility>

#include <nlohmann/json.hpp>

#include "pictobridge/data.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;

constexpr std::array kOrder = {Heading::N, Heading::E, Heading::S, Heading::W};
constexpr std::string_view kCharging = "charging-zone";

Cell offset(Cell c, Heading h) noexcept {
  switch (h) {
    case Heading::N: return {c.row - 1, c.col};
    case Heading::E: return {c.row, c.col + 1};
    case Heading::S: return {c.row + 1, c.col};
    case Heading::W: return {c.row, c.col - 1};
  }
  return c;
}

Cell parse_cell(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::parse_error, "scenario: a cell is [row, col]");
  return {j[0].get<int>(), j[1].get<int>()};
}

bool next_to_obstacle(const World& w, Cell c) {
  return std::any_of(kOrder.begin(), kOrder.end(), [&](Heading h) { return w.obstacles.count(offset(c, h)) > 0; });
}

class Emitter {
 public:
  explicit Emitter(World& w) : w_(w) {}

  RobotEvent& emit(EventType type, std::optional<Cause> cause = std::nullopt) {
    RobotEvent e;
    e.seq = w_.next_seq++;
    e.sim_time = w_.tick;
    e.type = type;
    e.cause = cause;
    e.location = w_.robot;
    events.push_back(std::move(e));
    return events.back();
  }

  std::vector<RobotEvent> events;

 private:
  World& w_;
};

void send_to_charger(World& w, Emitter& out) {
  if (!w.stations.count(std::string(kCharging))) return;
  if (w.goal != kCharging) w.pending_goal = w.goal;
  w.goal = std::string(kCharging);
  w.unreachable_reported = false;
  w.detour = false;
  out.emit(EventType::GOAL_SET, Cause::battery).goal = w.goal;
}

void arrive(World& w, Emitter& out) {
  const ConceptId station = *w.goal;
  out.emit(EventType::GOAL_REACHED).goal = station;
  w.goal.reset();
  w.detour = false;

  if (w.task && !w.carried && station == w.task->from) {
    auto it = w.objects.find(w.task->object);
    if (it != w.objects.end() && it->second == station) {
      w.objects.erase(it);
      w.carried = w.task->object;
      out.emit(EventType::PICK).object = w.carried;
      w.goal = w.task->to;
      w.unreachable_reported = false;
      out.emit(EventType::GOAL_SET).goal = w.goal;
    }
  } else if (w.task && w.carried == w.task->object && station == w.task->to) {
    w.objects[*w.carried] = station;
    out.emit(EventType::PLACE).object = w.carried;
    w.carried.reset();
    w.task.reset();
  }

  if (station == kCharging) {
    if (w.battery < 100) {
      w.charging = true;
    } else if (!w.goal && w.pending_goal) {
      w.goal = std::exchange(w.pending_goal, std::nullopt);
      w.unreachable_reported = false;
      out.emit(EventType::GOAL_SET).goal = w.goal;
    }
  } else if (w.battery <= kLowBattery) {
    send_to_charger(w, out);
  }
}

}  // namespace

std::string_view to_string(Heading heading) noexcept {
  switch (heading) {
    case Heading::N: return "N";
    case Heading::E: return "E";
    case Heading::S: return "S";
    case Heading::W: return "W";
  }
  return "N";
}

std::optional<Heading> parse_heading(std::string_view text) noexcept {
  for (auto h : kOrder) {
    if (to_string(h) == text) return h;
  }
  return std::nullopt;
}

std::string_view to_string(CommandKind kind) noexcept {
  switch (kind) {
    case CommandKind::stop: return "stop";
    case CommandKind::go: return "go";
    case CommandKind::wait: return "wait";
    case CommandKind::set_goal: return "set-goal";
  }
  return "stop";
}

std::optional<CommandKind> parse_command_kind(std::string_view text) noexcept {
  if (text == "stop") return CommandKind::stop;
  if (text == "go") return CommandKind::go;
  if (text == "wait") return CommandKind::wait;
  if (text == "set-goal") return CommandKind::set_goal;
  return std::nullopt;
}

Heading heading_between(Cell from, Cell to) noexcept {
  if (to.row < from.row) return Heading::N;
  if (to.col > from.col) return Heading::E;
  if (to.row > from.row) return Heading::S;
  return Heading::W;
}

std::optional<Cell> World::person() const {
  if (person_path.empty()) return std::nullopt;
  return person_path[person_index % person_path.size()];
}

World parse_scenario(std::string_view json_text, std::int64_t seed) {
  World w;
  try {
    const json doc = json::parse(json_text);
    w.scenario = doc.at("name").get<std::string>();
    w.width = doc.at("width").get<int>();
    w.height = doc.at("height").get<int>();
    for (const auto& c : doc.value("obstacles", json::array())) w.obstacles.insert(parse_cell(c));
    for (const auto& [id, cell] : doc.at("stations").items()) w.stations.emplace(id, parse_cell(cell));
    const json objects = doc.value("objects", json::object());
    for (const auto& [id, station] : objects.items()) {
      w.objects.emplace(id, station.get<std::string>());
    }
    if (doc.contains("task")) {
      const auto& t = doc["task"];
      w.task = Task{t.at("object").get<std::string>(), t.at("from").get<std::string>(), t.at("to").get<std::string>()};
    }
    const auto& robot = doc.at("robot");
    w.robot = parse_cell(robot.at("cell"));
    auto heading = parse_heading(robot.value("heading", "E"));
    if (!heading) throw Error(Errc::parse_error, "scenario: bad heading");
    w.heading = *heading;
    w.battery = robot.value("battery", 100);
    if (doc.contains("goal") && !doc["goal"].is_null()) w.goal = doc["goal"].get<std::string>();

    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    const auto candidates = doc.value("obstacle_candidates", json::array());
    if (!candidates.empty()) w.obstacles.insert(parse_cell(candidates[rng() % candidates.size()]));
    if (doc.contains("person")) {
      const auto& p = doc["person"];
      for (const auto& c : p.at("path")) w.person_path.push_back(parse_cell(c));
      w.person_period = p.value("period", 1);
      if (!w.person_path.empty()) w.person_index = rng() % w.person_path.size();
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("scenario: ") + e.what());
  }
  if (auto problems = check_world(w); !problems.empty()) {
    throw Error(Errc::parse_error, "scenario: " + problems.front());
  }
  return w;
}

World load_scenario(std::string_view name, std::int64_t seed) {
  if (name == "warehouse") return parse_scenario(data::warehouse_scenario_json(), seed);
  throw Error(Errc::unknown_scenario, std::string(name));
}

std::vector<std::string> scenario_names() { return {"warehouse"}; }

std::vector<std::string> check_world(const World& w) {
  std::vector<std::string> problems;
  if (w.width <= 0 || w.height <= 0) problems.emplace_back("dimensions must be positive");
  if (!w.in_bounds(w.robot)) problems.emplace_back("robot out of bounds");
  if (w.obstacles.count(w.robot)) problems.emplace_back("robot on an obstacle");
  for (const auto& c : w.obstacles) {
    if (!w.in_bounds(c)) problems.emplace_back("obstacle out of bounds");
  }
  for (const auto& [id, c] : w.stations) {
    if (!w.in_bounds(c)) problems.push_back("station " + id + " out of bounds");
    if (w.obstacles.count(c)) problems.push_back("station " + id + " on an obstacle");
  }
  for (const auto& [id, station] : w.objects) {
    if (!w.stations.count(station)) problems.push_back("object " + id + " at unknown station " + station);
  }
  for (const auto& c : w.person_path) {
    if (!w.in_bounds(c) || w.obstacles.count(c)) problems.emplace_back("person path crosses an obstacle or the border");
  }
  if (w.person_period <= 0) problems.emplace_back("person period must be positive");
  if (auto p = w.person(); p && *p == w.robot) problems.emplace_back("robot on the person");
  if (w.battery < 0 || w.battery > 100) problems.emplace_back("battery outside [0,100]");
  if (w.goal && !w.stations.count(*w.goal)) problems.push_back("goal " + *w.goal + " is not a station");
  if (w.task && (!w.stations.count(w.task->from) || !w.stations.count(w.task->to))) {
    problems.emplace_back("task references an unknown station");
  }
  return problems;
}

std::vector<Cell> plan_path(const World& w, Cell target, const std::set<Cell>& blocked) {
  if (!w.in_bounds(target) || w.obstacles.count(target)) {
    throw Error(Errc::invalid_target, "(" + std::to_string(target.row) + "," + std::to_string(target.col) + ")");
  }
  if (target == w.robot) return {};
  auto free = [&](Cell c) { return w.in_bounds(c) && !w.obstacles.count(c) && !blocked.count(c); };

  // Distance field from the target, then greedy descent from the robot.
  const auto idx = [&](Cell c) { return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(w.width) + static_cast<std::size_t>(c.col); };
  std::vector<int> dist(static_cast<std::size_t>(w.width) * static_cast<std::size_t>(w.height), -1);
  std::deque<Cell> frontier{target};
  dist[idx(target)] = 0;
  while (!frontier.empty()) {
    Cell c = frontier.front();
    frontier.pop_front();
    for (auto h : kOrder) {
      Cell n = offset(c, h);
      if (free(n) && dist[idx(n)] < 0) {
        dist[idx(n)] = dist[idx(c)] + 1;
        frontier.push_back(n);
      }
    }
  }
  if (dist[idx(w.robot)] < 0) return {};

  std::vector<Cell> path;
  Cell at = w.robot;
  Heading facing = w.heading;
  while (at != target) {
    std::array<Heading, 5> prefs{facing, Heading::N, Heading::E, Heading::S, Heading::W};
    for (auto h : prefs) {
      Cell n = offset(at, h);
      if (w.in_bounds(n) && dist[idx(n)] == dist[idx(at)] - 1 && free(n)) {
        at = n;
        facing = h;
        break;
      }
    }
    path.push_back(at);
  }
  return path;
}

StepResult step(World w) {
  Emitter out(w);
  ++w.tick;

  if (!w.person_path.empty() && w.tick % w.person_period == 0) {
    std::size_t next = (w.person_index + 1) % w.person_path.size();
    if (w.person_path[next] != w.robot) w.person_index = next;
  }

  if (w.wait_until && w.tick >= *w.wait_until) {
    w.wait_until.reset();
    w.frozen = false;
    out.emit(EventType::RESUME, Cause::command);
  }
  if (w.frozen) return {std::move(w), std::move(out.events)};

  if (w.charging) {
    w.battery = std::min(100, w.battery + kChargePerTick);
    if (w.battery == 100) {
      w.charging = false;
      if (w.pending_goal) {
        w.goal = std::exchange(w.pending_goal, std::nullopt);
        w.unreachable_reported = false;
        out.emit(EventType::GOAL_SET).goal = w.goal;
      }
    }
    return {std::move(w), std::move(out.events)};
  }

  if (!w.goal) return {std::move(w), std::move(out.events)};
  const Cell target = w.stations.at(*w.goal);
  if (w.robot == target) {
    arrive(w, out);
    return {std::move(w), std::move(out.events)};
  }
  if (w.battery == 0) {
    if (!w.empty_reported) {
      w.empty_reported = true;
      out.emit(EventType::STOP, Cause::battery);
    }
    return {std::move(w), std::move(out.events)};
  }

  const auto person = w.person();
  std::set<Cell> avoid;
  if (w.detour && person) avoid.insert(*person);
  auto path = plan_path(w, target, avoid);
  if (path.empty() && !avoid.empty()) {
    w.detour = false;
    path = plan_path(w, target);
  }
  if (path.empty()) {
    if (!w.unreachable_reported) {
      w.unreachable_reported = true;
      out.emit(EventType::PLAN_CHANGED, Cause::replan).goal = w.goal;
    }
    return {std::move(w), std::move(out.events)};
  }

  Cell next = path.front();
  if (person && next == *person) {
    ++w.blocked_ticks;
    if (!w.halted_by_person) {
      w.halted_by_person = true;
      out.emit(EventType::STOP, Cause::person);
    }
    if (w.blocked_ticks < kDetourAfter) return {std::move(w), std::move(out.events)};
    auto around = plan_path(w, target, {*person});
    if (around.empty()) return {std::move(w), std::move(out.events)};
    w.detour = true;
    w.halted_by_person = false;
    w.blocked_ticks = 0;
    out.emit(EventType::PLAN_CHANGED, Cause::person).goal = w.goal;
    next = around.front();
  }
  if (w.halted_by_person) {
    w.halted_by_person = false;
    w.blocked_ticks = 0;
    out.emit(EventType::RESUME);
  }

  const Heading h = heading_between(w.robot, next);
  if (h != w.heading && next_to_obstacle(w, w.robot)) out.emit(EventType::TURN, Cause::obstacle);
  w.heading = h;
  w.robot = next;
  const bool crossed = w.battery > kLowBattery && w.battery - 1 <= kLowBattery;
  --w.battery;
  if (crossed) out.emit(EventType::BATTERY_LOW);

  if (w.robot == target) {
    arrive(w, out);
  } else if (crossed && w.goal != kCharging) {
    send_to_charger(w, out);
  }
  return {std::move(w), std::move(out.events)};
}

StepResult apply_command(World w, const RobotCommand& cmd) {
  Emitter out(w);
  switch (cmd.kind) {
    case CommandKind::stop:
      if (!w.frozen || w.wait_until) {
        w.frozen = true;
        w.wait_until.reset();
        out.emit(EventType::STOP, Cause::command);
      }
      break;
    case CommandKind::wait:
      w.frozen = true;
      w.wait_until = w.tick + kWaitTicks;
      out.emit(EventType::WAIT, Cause::command);
      break;
    case CommandKind::go:
      if (w.frozen) {
        w.frozen = false;
        w.wait_until.reset();
        out.emit(EventType::RESUME, Cause::command);
      }
      break;
    case CommandKind::set_goal: {
      if (!cmd.station || !w.stations.count(*cmd.station)) {
        throw Error(Errc::unknown_station, cmd.station.value_or(""));
      }
      const Cell target = w.stations.at(*cmd.station);
      const bool reachable = target == w.robot || !plan_path(w, target).empty();
      if (!reachable) {
        out.emit(EventType::PLAN_CHANGED, Cause::replan).goal = cmd.station;
        break;
      }
      w.goal = cmd.station;
      w.unreachable_reported = false;
      w.pending_goal.reset();
      w.charging = false;
      w.detour = false;
      w.blocked_ticks = 0;
      w.halted_by_person = false;
      out.emit(EventType::GOAL_SET, Cause::command).goal = w.goal;
      break;
    }
  }
  return {std::move(w), std::move(out.events)};
}

}  // namespace pictobridge
