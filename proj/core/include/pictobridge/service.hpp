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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "pictobridge/adapt.hpp"
#include "pictobridge/bus.hpp"
#include "pictobridge/dialogue.hpp"
#include "pictobridge/session.hpp"
#include "pictobridge/simrobot.hpp"

namespace pictobridge {

struct ServiceConfig {
  std::string scenario = "warehouse";
  std::int64_t seed = 42;
  /// Empty disables persistence.
  std::filesystem::path data_dir;
  bool auto_adjust = true;
  std::chrono::milliseconds tick_period{500};
  /// When false the world only advances through tick_now().
  bool ticking = true;
};

/// Live composition of simulator and dialogue. One worker thread owns the
/// world and the dialogue and runs every job in arrival order: bus traffic
/// (intent payloads, robot commands, robot events), ticks and HTTP calls.
class Service final : public Session {
 public:
  /// Throws Error(unknown_scenario) and persistence errors.
  Service(Bus& bus, ComposerPtr composer, ServiceConfig config);
  ~Service() override;
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  void start();
  void stop();

  /// Receives the robot status after every tick, on the worker thread.
  void on_status(std::function<void(const nlohmann::ordered_json&)> sink);

  void tick_now();
  /// Blocks until every job queued before the call has run.
  void sync();

  nlohmann::ordered_json patch_profile(const nlohmann::json& patch) override;
  FeedbackCounts submit_feedback(const std::string& message_id, bool helpful) override;
  std::vector<nlohmann::ordered_json> history(std::size_t limit) override;
  nlohmann::ordered_json status() override;

  World world();
  std::size_t accepted_events();
  std::size_t history_size();

 private:
  template <typename F>
  auto call(F&& f) -> decltype(f());

  void post(std::function<void()> job);
  void worker();
  void reader();
  void ticker();
  void on_bus(const BusMessage& msg);
  void react(const Reaction& r);
  void do_tick();

  Bus& bus_;
  ComposerPtr composer_;
  ServiceConfig config_;
  std::optional<ProfileStore> store_;
  World world_;
  std::unique_ptr<Dialogue> dialogue_;
  std::size_t accepted_events_ = 0;
  std::size_t logged_ = 0;
  std::function<void(const nlohmann::ordered_json&)> status_sink_;

  Subscription inbox_;
  std::mutex m_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> jobs_;
  bool stopping_ = false;
  bool started_ = false;
  std::thread worker_;
  std::thread reader_;
  std::thread ticker_;
  std::mutex tick_m_;
  std::condition_variable tick_cv_;
};

}  // namespace pictobridge
