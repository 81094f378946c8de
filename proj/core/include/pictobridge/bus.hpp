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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pictobridge {

namespace topics {
inline constexpr std::string_view commands = "/asterics_commands";
inline constexpr std::string_view robot_events = "/robot_events";
inline constexpr std::string_view explanations = "/explanations";
inline constexpr std::string_view robot_cmd = "/robot_cmd";
}  // namespace topics

struct BusMessage {
  std::string topic;
  std::string payload;
  std::int64_t seq = 0;

  friend bool operator==(const BusMessage&, const BusMessage&) = default;
};

inline constexpr std::size_t kSubscriberCapacity = 1024;

namespace detail {
struct BusCore;
struct SubscriberQueue;
}  // namespace detail

/// Handle to one subscriber queue. Messages published after creation arrive
/// in per-topic order; destroying the handle unsubscribes.
class Subscription {
 public:
  Subscription() = default;
  Subscription(Subscription&&) noexcept = default;
  Subscription& operator=(Subscription&& other) noexcept;
  Subscription(const Subscription&) = delete;
  Subscription& operator=(const Subscription&) = delete;
  ~Subscription();

  /// Blocks until a message arrives; nullopt once the subscription or bus is closed.
  std::optional<BusMessage> pop();
  std::optional<BusMessage> try_pop();
  std::optional<BusMessage> pop_for(std::chrono::milliseconds timeout);

  std::size_t pending() const;
  bool active() const noexcept { return queue_ != nullptr; }
  /// Wakes a consumer blocked in pop(); safe to call from another thread.
  void close();
  /// Not safe while another thread is inside pop().
  void unsubscribe();

 private:
  friend class Bus;
  Subscription(std::weak_ptr<detail::BusCore> core, std::shared_ptr<detail::SubscriberQueue> queue,
               std::vector<std::string> topics);

  std::weak_ptr<detail::BusCore> core_;
  std::shared_ptr<detail::SubscriberQueue> queue_;
  std::vector<std::string> topics_;
};

/// In-process topic fabric. Thread-safe. A full subscriber queue blocks the
/// publisher until space frees up; nothing is dropped.
class Bus {
 public:
  explicit Bus(std::size_t capacity = kSubscriberCapacity);
  ~Bus();
  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  static const std::vector<std::string>& declared_topics();
  static bool well_formed(std::string_view topic) noexcept;

  /// Returns the per-topic sequence number. Throws Error(malformed_topic).
  std::int64_t publish(std::string_view topic, std::string payload);

  /// Throws Error(malformed_topic).
  Subscription subscribe(std::string_view topic);
  Subscription subscribe(const std::vector<std::string>& topics);

  /// Wakes every blocked publisher and subscriber; later publishes are ignored.
  void close();
  bool closed() const noexcept;

 private:
  std::shared_ptr<detail::BusCore> core_;
};

}  // namespace pictobridge
