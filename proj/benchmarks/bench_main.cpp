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

#include <benchmark/benchmark.h>

#include <set>

#include "pictobridge/bus.hpp"
#include "pictobridge/composer.hpp"
#include "pictobridge/dialogue.hpp"
#include "pictobridge/runner.hpp"
#include "pictobridge/simrobot.hpp"

namespace pb = pictobridge;

namespace {

const pb::ComposerPtr& composer() {
  static const pb::ComposerPtr c = std::make_shared<const pb::Composer>(pb::Composer::builtin());
  return c;
}

void BM_ComposeEvent(benchmark::State& state) {
  const auto& c = *composer();
  pb::RobotEvent e;
  e.seq = 1;
  e.type = pb::EventType::TURN;
  e.cause = pb::Cause::obstacle;
  pb::Policy p;
  p.detail = static_cast<pb::Detail>(state.range(0));
  for (auto _ : state) {
    auto msg = c.compose(c.mapper().map_event(e), e, p);
    benchmark::DoNotOptimize(msg);
  }
}
BENCHMARK(BM_ComposeEvent)->DenseRange(0, 2);

void BM_DialogueWhy(benchmark::State& state) {
  pb::Dialogue d(composer());
  pb::RobotEvent e;
  e.seq = 1;
  e.type = pb::EventType::STOP;
  e.cause = pb::Cause::person;
  d.on_robot_event(e);
  for (auto _ : state) {
    auto r = d.handle_payload("why");
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_DialogueWhy);

void BM_BusRoundTrip(benchmark::State& state) {
  pb::Bus bus;
  auto sub = bus.subscribe(pb::topics::commands);
  for (auto _ : state) {
    bus.publish(pb::topics::commands, "set-goal warehouse");
    auto m = sub.try_pop();
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_BusRoundTrip);

void BM_PlanPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pb::World w;
  w.width = n;
  w.height = n;
  for (int r = 1; r < n - 1; r += 2) {
    for (int c = (r / 2) % 2; c < n - 1; ++c) w.obstacles.insert({r, c});
  }
  for (auto _ : state) {
    auto path = pb::plan_path(w, {n - 1, n - 1});
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_PlanPath)->Arg(10)->Arg(40)->Arg(160);

void BM_SimStep(benchmark::State& state) {
  auto w = pb::load_scenario("warehouse", 42);
  for (auto _ : state) {
    auto r = pb::step(w);
    w = r.world.task || r.world.goal ? std::move(r.world) : pb::load_scenario("warehouse", 42);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_SimStep);

void BM_GoldenRun(benchmark::State& state) {
  const auto script = pb::load_script(PB_GOLDEN_SCRIPT);
  for (auto _ : state) {
    auto r = pb::run_script("warehouse", 42, script, 120);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_GoldenRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
