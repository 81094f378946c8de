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

#include <atomic>
#include <map>
#include <thread>

#include "pictobridge/bus.hpp"
#include "pictobridge/error.hpp"

using namespace pictobridge;
using namespace std::chrono_literals;

TEST_SUITE("bus") {
  TEST_CASE("declared topics") {
    const auto& t = Bus::declared_topics();
    CHECK(std::find(t.begin(), t.end(), "/asterics_commands") != t.end());
    CHECK(std::find(t.begin(), t.end(), "/robot_events") != t.end());
    CHECK(std::find(t.begin(), t.end(), "/explanations") != t.end());
    CHECK(Bus::well_formed("/asterics_commands"));
    CHECK_FALSE(Bus::well_formed(""));
    CHECK_FALSE(Bus::well_formed("/"));
    CHECK_FALSE(Bus::well_formed("no_slash"));
    CHECK_FALSE(Bus::well_formed("/has space"));
  }

  TEST_CASE("payloads arrive byte for byte in publish order") {
    Bus bus;
    auto a = bus.subscribe(topics::commands);
    auto b = bus.subscribe(topics::commands);
    const std::vector<std::string> sent{"why", "set-goal warehouse", "", "ü\n\t\x01", std::string(3000, 'x')};
    for (const auto& p : sent) bus.publish(topics::commands, p);
    for (auto* s : {&a, &b}) {
      for (std::size_t i = 0; i < sent.size(); ++i) {
        auto m = s->try_pop();
        REQUIRE(m.has_value());
        CHECK(m->payload == sent[i]);
        CHECK(m->topic == "/asterics_commands");
        CHECK(m->seq == static_cast<std::int64_t>(i + 1));
      }
      CHECK_FALSE(s->try_pop().has_value());
    }
  }

  TEST_CASE("late subscribers and other topics see nothing old") {
    Bus bus;
    bus.publish(topics::commands, "early");
    auto s = bus.subscribe(topics::commands);
    auto other = bus.subscribe(topics::explanations);
    bus.publish(topics::commands, "late");
    CHECK(s.try_pop()->payload == "late");
    CHECK(other.pending() == 0);
  }

  TEST_CASE("malformed topics are rejected") {
    Bus bus;
    try {
      bus.publish("nope", "x");
      FAIL("expected MalformedTopic");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::malformed_topic);
    }
    CHECK_THROWS_AS(bus.subscribe("bad topic"), Error);
  }

  TEST_CASE("unsubscribing stops delivery") {
    Bus bus;
    auto s = bus.subscribe(topics::commands);
    s.unsubscribe();
    CHECK_FALSE(s.active());
    bus.publish(topics::commands, "x");
    auto t = bus.subscribe(topics::commands);
    { auto scoped = bus.subscribe(topics::commands); }
    bus.publish(topics::commands, "y");
    CHECK(t.try_pop()->payload == "y");
  }

  TEST_CASE("a full queue blocks the publisher instead of dropping") {
    Bus bus(2);
    auto s = bus.subscribe(topics::commands);
    std::atomic<int> published{0};
    std::thread pub([&] {
      for (int i = 0; i < 5; ++i) {
        bus.publish(topics::commands, std::to_string(i));
        ++published;
      }
    });
    std::this_thread::sleep_for(100ms);
    CHECK(published.load() == 2);
    for (int i = 0; i < 5; ++i) {
      auto m = s.pop_for(2s);
      REQUIRE(m.has_value());
      CHECK(m->payload == std::to_string(i));
    }
    pub.join();
    CHECK(published.load() == 5);
  }

  TEST_CASE("concurrent publishers keep per-topic order") {
    Bus bus;
    const std::vector<std::string> names{"/t0", "/t1", "/t2", "/t3"};
    auto s = bus.subscribe(names);
    const int n = 500;
    std::vector<std::thread> threads;
    for (const auto& name : names) {
      threads.emplace_back([&bus, name] {
        for (int i = 0; i < n; ++i) bus.publish(name, std::to_string(i));
      });
    }
    std::map<std::string, int> next;
    for (int i = 0; i < n * static_cast<int>(names.size()); ++i) {
      auto m = s.pop_for(5s);
      REQUIRE(m.has_value());
      CHECK(m->payload == std::to_string(next[m->topic]));
      ++next[m->topic];
    }
    for (auto& t : threads) t.join();
    for (const auto& name : names) CHECK(next[name] == n);
  }

  TEST_CASE("close wakes blocked consumers") {
    Bus bus;
    auto s = bus.subscribe(topics::commands);
    std::atomic<bool> woke{false};
    std::thread consumer([&] {
      auto m = s.pop();
      CHECK_FALSE(m.has_value());
      woke = true;
    });
    std::this_thread::sleep_for(50ms);
    bus.close();
    consumer.join();
    CHECK(woke.load());
    CHECK(bus.closed());
    bus.publish(topics::commands, "ignored");
  }

  TEST_CASE("subscription close wakes its own consumer") {
    Bus bus;
    auto s = bus.subscribe(topics::commands);
    std::thread consumer([&] { CHECK_FALSE(s.pop().has_value()); });
    std::this_thread::sleep_for(50ms);
    s.close();
    consumer.join();
  }
}
