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

#include <doctest.h>

#include <deque>
#include <random>

#include "pictobridge/error.hpp"
#include "pictobridge/simrobot.hpp"
#include "testing.hpp"

using namespace pictobridge;

namespace {

World open_world(int w, int h) {
  World world;
  world.scenario = "test";
  world.width = w;
  world.height = h;
  world.stations = {{"warehouse", {0, w - 1}}, {"loading-zone", {h - 1, 0}}, {"charging-zone", {h - 1, w - 1}}};
  world.robot = {0, 0};
  return world;
}

// Textbook BFS distance field from the target, written independently of the
// planner, and the documented tie-break: heading first, then N, E, S, W.
std::vector<Cell> oracle_path(const World& w, Cell target) {
  std::vector<std::vector<int>> dist(w.height, std::vector<int>(w.width, -1));
  std::deque<Cell> q{target};
  dist[target.row][target.col] = 0;
  const Cell dirs[4] = {{-1, 0}, {0, 1}, {1, 0}, {0, -1}};
  while (!q.empty()) {
    auto c = q.front();
    q.pop_front();
    for (auto d : dirs) {
      Cell n{c.row + d.row, c.col + d.col};
      if (n.row < 0 || n.col < 0 || n.row >= w.height || n.col >= w.width) continue;
      if (w.obstacles.count(n) || dist[n.row][n.col] >= 0) continue;
      dist[n.row][n.col] = dist[c.row][c.col] + 1;
      q.push_back(n);
    }
  }
  std::vector<Cell> path;
  Cell cur = w.robot;
  if (dist[cur.row][cur.col] <= 0) return path;
  int heading = static_cast<int>(w.heading);
  while (!(cur == target)) {
    std::vector<int> order{heading, 0, 1, 2, 3};
    for (int k : order) {
      Cell n{cur.row + dirs[k].row, cur.col + dirs[k].col};
      if (n.row < 0 || n.col < 0 || n.row >= w.height || n.col >= w.width) continue;
      if (dist[n.row][n.col] == dist[cur.row][cur.col] - 1) {
        cur = n;
        heading = k;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

std::vector<RobotEvent> run(World w, int ticks) {
  std::vector<RobotEvent> all;
  for (int i = 0; i < ticks; ++i) {
    auto r = step(std::move(w));
    w = std::move(r.world);
    all.insert(all.end(), r.events.begin(), r.events.end());
  }
  return all;
}

std::string describe(const RobotEvent& e) {
  std::string s = std::to_string(e.sim_time) + " " + std::string(to_string(e.type));
  if (e.cause) s += "(" + std::string(to_string(*e.cause)) + ")";
  return s;
}

}  // namespace

TEST_SUITE("simrobot") {
  TEST_CASE("planner matches the BFS oracle on every 4x4 obstacle layout") {
    const int n = 4;
    int checked = 0;
    for (unsigned mask = 0; mask < (1u << (n * n)); mask += 7) {
      World w = open_world(n, n);
      w.stations.clear();
      for (int i = 0; i < n * n; ++i) {
        if (mask & (1u << i)) w.obstacles.insert({i / n, i % n});
      }
      w.obstacles.erase({0, 0});
      const Cell target{n - 1, n - 1};
      if (w.obstacles.count(target)) continue;
      for (auto h : {Heading::N, Heading::E, Heading::S, Heading::W}) {
        w.heading = h;
        const auto got = plan_path(w, target);
        const auto want = oracle_path(w, target);
        REQUIRE(got == want);
        ++checked;
      }
    }
    CHECK(checked > 1000);
  }

  TEST_CASE("planner on random 5x5 worlds with blocked cells") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      World w = open_world(5, 5);
      w.stations.clear();
      w.robot = {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
      w.heading = static_cast<Heading>(rng() % 4);
      Cell target{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
      std::set<Cell> blocked;
      for (int k = 0; k < 6; ++k) {
        Cell c{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
        if (c == w.robot || c == target) continue;
        (k % 2 ? blocked : w.obstacles).insert(c);
      }
      World merged = w;
      merged.obstacles.insert(blocked.begin(), blocked.end());
      CHECK(plan_path(w, target, blocked) == oracle_path(merged, target));
    }
  }

  TEST_CASE("planner edge cases") {
    World w = open_world(3, 3);
    CHECK(plan_path(w, {0, 0}).empty());
    w.obstacles = {{0, 1}, {1, 0}, {1, 1}};
    CHECK(plan_path(w, {2, 2}).empty());
    CHECK_THROWS_AS((void)plan_path(w, {1, 1}), Error);
    CHECK_THROWS_AS((void)plan_path(w, {5, 0}), Error);
  }

  TEST_CASE("heading_between") {
    CHECK(heading_between({1, 1}, {0, 1}) == Heading::N);
    CHECK(heading_between({1, 1}, {1, 2}) == Heading::E);
    CHECK(heading_between({1, 1}, {2, 1}) == Heading::S);
    CHECK(heading_between({1, 1}, {1, 0}) == Heading::W);
  }

  TEST_CASE("warehouse seed 42 event timeline") {
    const auto events = run(load_scenario("warehouse", 42), 30);
    std::vector<std::string> got;
    for (const auto& e : events) got.push_back(describe(e));
    const std::vector<std::string> want{
        "5 TURN(obstacle)", "8 STOP(person)", "10 RESUME",   "13 GOAL_REACHED", "13 PICK",
        "13 GOAL_SET",      "16 STOP(person)", "18 RESUME", "26 GOAL_REACHED", "26 PLACE",
    };
    CHECK(got == want);
    for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].seq == static_cast<std::int64_t>(i + 1));
  }

  TEST_CASE("same seed, same world; seeds vary the layout") {
    CHECK(load_scenario("warehouse", 42) == load_scenario("warehouse", 42));
    std::set<std::set<Cell>> layouts;
    for (int s = 0; s < 20; ++s) layouts.insert(load_scenario("warehouse", s).obstacles);
    CHECK(layouts.size() > 1);
    CHECK_THROWS_AS((void)load_scenario("moon", 1), Error);
  }

  TEST_CASE("stop, go and wait") {
    World w = load_scenario("warehouse", 42);
    auto r = apply_command(w, {CommandKind::stop, std::nullopt});
    REQUIRE(r.events.size() == 1);
    CHECK(describe(r.events[0]) == "0 STOP(command)");
    CHECK(r.world.frozen);
    const Cell before = r.world.robot;
    auto frozen = r.world;
    for (int i = 0; i < 10; ++i) frozen = step(frozen).world;
    CHECK(frozen.robot == before);
    CHECK(apply_command(r.world, {CommandKind::stop, std::nullopt}).events.empty());

    auto go = apply_command(r.world, {CommandKind::go, std::nullopt});
    REQUIRE(go.events.size() == 1);
    CHECK(describe(go.events[0]) == "0 RESUME(command)");
    CHECK_FALSE(go.world.frozen);
    CHECK(apply_command(go.world, {CommandKind::go, std::nullopt}).events.empty());

    auto wait = apply_command(w, {CommandKind::wait, std::nullopt});
    REQUIRE(wait.events.size() == 1);
    CHECK(describe(wait.events[0]) == "0 WAIT(command)");
    World ww = wait.world;
    std::vector<RobotEvent> after;
    for (int i = 0; i < kWaitTicks; ++i) {
      auto s = step(ww);
      ww = s.world;
      after.insert(after.end(), s.events.begin(), s.events.end());
      if (i < kWaitTicks - 1) CHECK(ww.robot == w.robot);
    }
    REQUIRE_FALSE(after.empty());
    CHECK(describe(after.front()) == "5 RESUME(command)");
  }

  TEST_CASE("set-goal") {
    World w = load_scenario("warehouse", 42);
    auto r = apply_command(w, {CommandKind::set_goal, std::string("charging-zone")});
    REQUIRE(r.events.size() == 1);
    CHECK(describe(r.events[0]) == "0 GOAL_SET(command)");
    CHECK(r.events[0].goal == "charging-zone");
    CHECK(r.world.goal == "charging-zone");
    try {
      (void)apply_command(w, {CommandKind::set_goal, std::string("moon")});
      FAIL("expected UnknownStation");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_station);
    }
  }

  TEST_CASE("unreachable goal is reported once and the goal kept") {
    World w = open_world(4, 4);
    w.obstacles = {{0, 2}, {1, 2}, {2, 2}, {3, 2}};
    w.goal = "warehouse";
    const auto events = run(w, 5);
    REQUIRE(events.size() == 1);
    CHECK(describe(events[0]) == "1 PLAN_CHANGED(replan)");
  }

  TEST_CASE("low battery sends the robot to charge and back") {
    World w = open_world(8, 1);
    w.stations = {{"warehouse", {0, 7}}, {"charging-zone", {0, 0}}};
    w.battery = 22;
    w.goal = "warehouse";
    const auto events = run(w, 40);
    std::vector<std::string> got;
    for (const auto& e : events) got.push_back(describe(e));
    REQUIRE(got.size() >= 4);
    CHECK(got[0] == "2 BATTERY_LOW");
    CHECK(got[1] == "2 GOAL_SET(battery)");
    CHECK(events[1].goal == "charging-zone");
    bool resumed = false;
    for (const auto& e : events) {
      if (e.type == EventType::GOAL_SET && !e.cause && e.goal == "warehouse") resumed = true;
    }
    CHECK(resumed);
  }

  TEST_CASE("empty battery stops the robot once") {
    World w = open_world(8, 8);
    w.stations = {{"warehouse", {7, 7}}};
    w.battery = 2;
    w.goal = "warehouse";
    const auto events = run(w, 20);
    int stops = 0;
    for (const auto& e : events) stops += e.type == EventType::STOP && e.cause == Cause::battery;
    CHECK(stops == 1);
  }

  TEST_CASE("invariants hold on random command sequences") {
    std::mt19937 rng(3);
    for (int seed = 0; seed < 5; ++seed) {
      World w = load_scenario("warehouse", seed);
      std::int64_t last_seq = 0;
      for (int t = 0; t < 2000; ++t) {
        StepResult r{w, {}};
        switch (rng() % 40) {
          case 0: r = apply_command(w, {CommandKind::stop, std::nullopt}); break;
          case 1: r = apply_command(w, {CommandKind::go, std::nullopt}); break;
          case 2: r = apply_command(w, {CommandKind::wait, std::nullopt}); break;
          case 3: r = apply_command(w, {CommandKind::set_goal, std::string("charging-zone")}); break;
          case 4: r = apply_command(w, {CommandKind::set_goal, std::string("warehouse")}); break;
          default: r = step(w); break;
        }
        w = r.world;
        for (const auto& e : r.events) {
          CHECK(e.seq == last_seq + 1);
          last_seq = e.seq;
          CHECK(check_event(e).empty());
        }
        REQUIRE(check_world(w).empty());
        CHECK(w.obstacles.count(w.robot) == 0);
        CHECK(w.person() != w.robot);
        CHECK(w.battery >= 0);
        CHECK(w.battery <= 100);
      }
    }
  }
}
