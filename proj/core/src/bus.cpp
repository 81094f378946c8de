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

#include "pictobridge/bus.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>

#include "pictobridge/error.hpp"

namespace pictobridge {

namespace detail {

struct SubscriberQueue {
  explicit SubscriberQueue(std::size_t cap) : capacity(cap) {}

  bool push(BusMessage msg) {
    std::unique_lock lock(m);
    not_full.wait(lock, [&] { return closed || items.size() < capacity; });
    if (closed) return false;
    items.push_back(std::move(msg));
    not_empty.notify_one();
    return true;
  }

  template <typename Wait>
  std::optional<BusMessage> take(Wait&& wait) {
    std::unique_lock lock(m);
    if (!wait(lock) || items.empty()) return std::nullopt;
    BusMessage msg = std::move(items.front());
    items.pop_front();
    not_full.notify_one();
    return msg;
  }

  void close() {
    std::lock_guard lock(m);
    closed = true;
    not_full.notify_all();
    not_empty.notify_all();
  }

  const std::size_t capacity;
  mutable std::mutex m;
  std::condition_variable not_full;
  std::condition_variable not_empty;
  std::deque<BusMessage> items;
  bool closed = false;
};

struct TopicState {
  std::mutex m;
  std::int64_t seq = 0;
  std::vector<std::shared_ptr<SubscriberQueue>> subscribers;
};

struct BusCore {
  explicit BusCore(std::size_t cap) : capacity(cap) {}

  TopicState& topic(const std::string& name) {
    std::lock_guard lock(m);
    auto& slot = topics[name];
    if (!slot) slot = std::make_unique<TopicState>();
    return *slot;
  }

  void detach(const std::vector<std::string>& names, const std::shared_ptr<SubscriberQueue>& q) {
    for (const auto& name : names) {
      auto& t = topic(name);
      std::lock_guard lock(t.m);
      std::erase(t.subscribers, q);
    }
  }

  const std::size_t capacity;
  std::mutex m;
  std::map<std::string, std::unique_ptr<TopicState>> topics;
  std::atomic<bool> closed{false};
  // Every queue ever created, so close() never needs a topic lock that a
  // blocked publisher may hold.
  std::mutex registry_m;
  std::vector<std::weak_ptr<SubscriberQueue>> registry;
};

}  // namespace detail

Subscription::Subscription(std::weak_ptr<detail::BusCore> core, std::shared_ptr<detail::SubscriberQueue> queue,
                           std::vector<std::string> topics)
    : core_(std::move(core)), queue_(std::move(queue)), topics_(std::move(topics)) {}

Subscription& Subscription::operator=(Subscription&& other) noexcept {
  if (this != &other) {
    unsubscribe();
    core_ = std::move(other.core_);
    queue_ = std::move(other.queue_);
    topics_ = std::move(other.topics_);
  }
  return *this;
}

Subscription::~Subscription() { unsubscribe(); }

void Subscription::close() {
  if (queue_) queue_->close();
}

void Subscription::unsubscribe() {
  if (!queue_) return;
  // Close first so a publisher blocked on this queue lets go of the topic lock.
  queue_->close();
  if (auto core = core_.lock()) core->detach(topics_, queue_);
  queue_.reset();
}

std::optional<BusMessage> Subscription::pop() {
  if (!queue_) return std::nullopt;
  auto& q = *queue_;
  return q.take([&](std::unique_lock<std::mutex>& lock) {
    q.not_empty.wait(lock, [&] { return q.closed || !q.items.empty(); });
    return true;
  });
}

std::optional<BusMessage> Subscription::try_pop() {
  if (!queue_) return std::nullopt;
  return queue_->take([](std::unique_lock<std::mutex>&) { return true; });
}

std::optional<BusMessage> Subscription::pop_for(std::chrono::milliseconds timeout) {
  if (!queue_) return std::nullopt;
  auto& q = *queue_;
  return q.take([&](std::unique_lock<std::mutex>& lock) {
    return q.not_empty.wait_for(lock, timeout, [&] { return q.closed || !q.items.empty(); });
  });
}

std::size_t Subscription::pending() const {
  if (!queue_) return 0;
  std::lock_guard lock(queue_->m);
  return queue_->items.size();
}

Bus::Bus(std::size_t capacity) : core_(std::make_shared<detail::BusCore>(std::max<std::size_t>(capacity, 1))) {}

Bus::~Bus() { close(); }

const std::vector<std::string>& Bus::declared_topics() {
  static const std::vector<std::string> names{
      std::string(topics::commands), std::string(topics::robot_events), std::string(topics::explanations),
      std::string(topics::robot_cmd)};
  return names;
}

bool Bus::well_formed(std::string_view topic) noexcept {
  return topic.size() > 1 && topic.front() == '/' &&
         std::none_of(topic.begin(), topic.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

std::int64_t Bus::publish(std::string_view topic, std::string payload) {
  if (!well_formed(topic)) throw Error(Errc::malformed_topic, std::string(topic));
  auto& t = core_->topic(std::string(topic));
  std::lock_guard lock(t.m);
  const std::int64_t seq = ++t.seq;
  if (core_->closed) return seq;
  for (const auto& q : t.subscribers) q->push(BusMessage{std::string(topic), payload, seq});
  return seq;
}

Subscription Bus::subscribe(std::string_view topic) { return subscribe(std::vector<std::string>{std::string(topic)}); }

Subscription Bus::subscribe(const std::vector<std::string>& names) {
  for (const auto& name : names) {
    if (!well_formed(name)) throw Error(Errc::malformed_topic, name);
  }
  auto q = std::make_shared<detail::SubscriberQueue>(core_->capacity);
  {
    std::lock_guard lock(core_->registry_m);
    std::erase_if(core_->registry, [](const auto& w) { return w.expired(); });
    core_->registry.push_back(q);
    if (core_->closed) q->close();
  }
  for (const auto& name : names) {
    auto& t = core_->topic(name);
    std::lock_guard lock(t.m);
    t.subscribers.push_back(q);
  }
  return Subscription(core_, std::move(q), names);
}

void Bus::close() {
  std::lock_guard lock(core_->registry_m);
  if (core_->closed.exchange(true)) return;
  for (auto& w : core_->registry) {
    if (auto q = w.lock()) q->close();
  }
}

bool Bus::closed() const noexcept { return core_->closed; }

}  // namespace pictobridge
