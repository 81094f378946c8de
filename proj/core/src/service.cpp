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

#include "pictobridge/service.hpp"

#include <future>

#include "fsio.hpp"
#include "pictobridge/error.hpp"
#include "pictobridge/serialize.hpp"

namespace pictobridge {

namespace {
using nlohmann::json;
using nlohmann::ordered_json;
}  // namespace

Service::Service(Bus& bus, ComposerPtr composer, ServiceConfig config)
    : bus_(bus), composer_(std::move(composer)), config_(std::move(config)) {
  world_ = load_scenario(config_.scenario, config_.seed);
  UserProfile profile;
  FeedbackLedger ledger;
  if (!config_.data_dir.empty()) {
    store_.emplace(config_.data_dir);
    if (auto saved = store_->load(profile.user_id, composer_->lexicon())) profile = std::move(*saved);
    ledger = store_->load_ledger();
  }
  DialogueOptions options;
  options.auto_adjust = config_.auto_adjust;
  options.tick_ms = std::max<std::int64_t>(1, config_.tick_period.count());
  dialogue_ = std::make_unique<Dialogue>(composer_, std::move(profile), options, std::move(ledger));
  dialogue_->observe(world_);
}

Service::~Service() { stop(); }

void Service::start() {
  std::lock_guard lock(m_);
  if (started_) return;
  started_ = true;
  inbox_ = bus_.subscribe(std::vector<std::string>{std::string(topics::commands), std::string(topics::robot_cmd),
                                                   std::string(topics::robot_events)});
  worker_ = std::thread([this] { worker(); });
  reader_ = std::thread([this] { reader(); });
  if (config_.ticking) ticker_ = std::thread([this] { ticker(); });
}

void Service::stop() {
  {
    std::lock_guard lock(m_);
    if (!started_ || stopping_) return;
  }
  {
    std::lock_guard lock(tick_m_);
    std::lock_guard jobs_lock(m_);
    stopping_ = true;
  }
  tick_cv_.notify_all();
  inbox_.close();
  if (ticker_.joinable()) ticker_.join();
  if (reader_.joinable()) reader_.join();
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
  inbox_.unsubscribe();
}

void Service::on_status(std::function<void(const ordered_json&)> sink) {
  call([&] { status_sink_ = std::move(sink); });
}

void Service::post(std::function<void()> job) {
  {
    std::lock_guard lock(m_);
    jobs_.push_back(std::move(job));
  }
  cv_.notify_one();
}

template <typename F>
auto Service::call(F&& f) -> decltype(f()) {
  bool running;
  {
    std::lock_guard lock(m_);
    running = started_ && !stopping_;
  }
  if (!running) return f();
  using R = decltype(f());
  auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(f));
  auto result = task->get_future();
  post([task] { (*task)(); });
  return result.get();
}

void Service::worker() {
  while (true) {
    std::function<void()> job;
    {
      std::unique_lock lock(m_);
      cv_.wait(lock, [&] { return stopping_ || !jobs_.empty(); });
      if (jobs_.empty()) return;
      job = std::move(jobs_.front());
      jobs_.pop_front();
    }
    job();
  }
}

void Service::reader() {
  while (auto msg = inbox_.pop()) {
    post([this, m = std::move(*msg)] { on_bus(m); });
  }
}

void Service::ticker() {
  std::unique_lock lock(tick_m_);
  auto next = std::chrono::steady_clock::now() + config_.tick_period;
  while (!stopping_) {
    if (tick_cv_.wait_until(lock, next, [&] { return stopping_; })) break;
    next += config_.tick_period;
    post([this] { do_tick(); });
  }
}

void Service::on_bus(const BusMessage& msg) {
  try {
    if (msg.topic == topics::commands) {
      react(dialogue_->handle_payload(msg.payload));
    } else if (msg.topic == topics::robot_cmd) {
      auto applied = apply_command(world_, command_from_json(json::parse(msg.payload)));
      world_ = std::move(applied.world);
      for (const auto& e : applied.events) bus_.publish(topics::robot_events, to_json(e).dump());
    } else if (msg.topic == topics::robot_events) {
      auto event = event_from_json(json::parse(msg.payload));
      auto r = dialogue_->on_robot_event(event);
      ++accepted_events_;
      react(r);
    }
  } catch (const Error&) {
    // A bad command or stale event is dropped; the dialogue state is unchanged.
  } catch (const json::exception&) {
  }
}

void Service::react(const Reaction& r) {
  for (const auto& m : r.messages) bus_.publish(topics::explanations, to_json(m).dump());
  for (const auto& c : r.commands) bus_.publish(topics::robot_cmd, to_json(c).dump());
  if (!store_) return;
  if (r.profile) store_->save(*r.profile);
  for (const auto& f : r.feedback) store_->append_feedback(f);
  const auto& lines = dialogue_->transcript();
  for (; logged_ < lines.size(); ++logged_) {
    detail::append_line(store_->dir() / "transcript.jsonl", lines[logged_].dump());
  }
}

void Service::do_tick() {
  auto stepped = step(std::move(world_));
  world_ = std::move(stepped.world);
  for (const auto& e : stepped.events) bus_.publish(topics::robot_events, to_json(e).dump());
  react(dialogue_->advance_to(world_.tick));
  if (status_sink_) status_sink_(status_json(world_));
}

void Service::tick_now() { call([this] { do_tick(); }); }

void Service::sync() { call([] {}); }

ordered_json Service::patch_profile(const json& patch) {
  return call([&] {
    react(dialogue_->apply_profile(patch));
    return profile_to_json(dialogue_->state().profile);
  });
}

FeedbackCounts Service::submit_feedback(const std::string& message_id, bool helpful) {
  return call([&] {
    react(dialogue_->submit_feedback(message_id, helpful));
    const auto& ledger = dialogue_->state().ledger;
    return FeedbackCounts{ledger.yes_count(), ledger.no_count(), ledger.size()};
  });
}

std::vector<ordered_json> Service::history(std::size_t limit) {
  return call([&] {
    const auto& lines = dialogue_->transcript();
    const auto n = std::min(limit, lines.size());
    return std::vector<ordered_json>(lines.end() - static_cast<std::ptrdiff_t>(n), lines.end());
  });
}

ordered_json Service::status() {
  return call([&] { return status_json(world_); });
}

World Service::world() {
  return call([&] { return world_; });
}

std::size_t Service::accepted_events() {
  return call([&] { return accepted_events_; });
}

std::size_t Service::history_size() {
  return call([&] { return dialogue_->state().history.size(); });
}

}  // namespace pictobridge
