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

#include "pictobridge/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include <httplib.h>

#include "fsio.hpp"
#include "pictobridge/boards.hpp"
#include "pictobridge/error.hpp"

namespace pictobridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_arg(std::string_view arg) {
  return !arg.empty() && arg.size() <= kMaxBodyBytes &&
         std::none_of(arg.begin(), arg.end(), [](char c) { return static_cast<unsigned char>(c) < 0x20; });
}

std::string join(const std::string& token, const std::optional<std::string>& arg) {
  if (!valid_command_token(token)) throw Error(Errc::malformed_body, "invalid command token");
  if (!arg) return token;
  if (!valid_arg(*arg)) throw Error(Errc::malformed_body, "invalid command argument");
  return token + " " + *arg;
}

void send_error(httplib::Response& res, int status, const Error& e) {
  ordered_json body;
  body["error"] = to_string(e.code());
  body["detail"] = e.what();
  res.status = status;
  res.set_content(body.dump(), kJson);
}

struct StreamClient {
  std::mutex m;
  std::condition_variable cv;
  std::deque<std::string> frames;
  bool closed = false;

  void push(std::string frame) {
    {
      std::lock_guard lock(m);
      if (closed) return;
      frames.push_back(std::move(frame));
    }
    cv.notify_one();
  }

  void close() {
    {
      std::lock_guard lock(m);
      closed = true;
    }
    cv.notify_all();
  }
};

}  // namespace

bool valid_command_token(std::string_view token) noexcept {
  return !token.empty() && token.size() <= kMaxTokenBytes && std::none_of(token.begin(), token.end(), is_space);
}

std::string command_payload(std::string_view body, std::string_view content_type) {
  const bool text = content_type.find("text/plain") != std::string_view::npos;
  const bool looks_json = content_type.find("json") != std::string_view::npos ||
                          (!text && !trim(body).empty() && trim(body).front() == '{');
  if (!looks_json) {
    auto s = trim(body);
    auto space = std::find_if(s.begin(), s.end(), is_space);
    std::string token(s.begin(), space);
    std::optional<std::string> arg;
    if (space != s.end()) arg = std::string(trim(std::string_view(&*space, static_cast<std::size_t>(s.end() - space))));
    return join(token, arg);
  }
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::malformed_body, "body is not a JSON object");
  auto cmd = j.find("command");
  if (cmd == j.end() || !cmd->is_string()) throw Error(Errc::malformed_body, "missing string field 'command'");
  std::optional<std::string> arg;
  if (auto args = j.find("args"); args != j.end() && !args->is_null()) {
    if (!args->is_object()) throw Error(Errc::malformed_body, "'args' must be an object");
    for (const auto& [k, v] : args->items()) {
      if (!v.is_string()) throw Error(Errc::malformed_body, "argument '" + k + "' must be text");
    }
    if (args->contains("arg")) {
      arg = (*args)["arg"].get<std::string>();
    } else if (args->size() == 1) {
      arg = args->begin()->get<std::string>();
    } else if (args->size() > 1) {
      throw Error(Errc::malformed_body, "ambiguous 'args'; use the key 'arg'");
    }
  }
  return join(cmd->get<std::string>(), arg);
}

std::string sse_frame(std::string_view event, std::string_view data) {
  std::string out = "event: ";
  out += event;
  out += '\n';
  std::size_t start = 0;
  while (true) {
    auto nl = data.find('\n', start);
    out += "data: ";
    out += data.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    out += '\n';
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  out += '\n';
  return out;
}

struct Gateway::Impl {
  Impl(Bus& b, Session& s, GatewayConfig c) : bus(b), session(s), config(std::move(c)) {}

  Bus& bus;
  Session& session;
  GatewayConfig config;
  httplib::Server server;
  int port = -1;
  bool bound = false;
  std::thread listener;
  std::thread forwarder;
  Subscription explanations;

  mutable std::mutex clients_m;
  std::vector<std::shared_ptr<StreamClient>> clients;
  std::atomic<bool> stopping{false};

  void broadcast(const std::string& frame) {
    std::lock_guard lock(clients_m);
    for (auto& c : clients) c->push(frame);
  }

  void forward() {
    while (auto msg = explanations.pop()) broadcast(sse_frame("explanation", msg->payload));
  }

  void routes() {
    server.set_payload_max_length(kMaxBodyBytes);
    // The library default adds SO_REUSEPORT, which lets a second server share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
    });

    server.Post("/api/command", [this](const httplib::Request& req, httplib::Response& res) {
      std::string payload;
      try {
        payload = command_payload(req.body, req.get_header_value("Content-Type"));
      } catch (const Error& e) {
        return send_error(res, 400, e);
      }
      bus.publish(topics::commands, payload);
      ordered_json body;
      body["status"] = "ok";
      body["published"] = payload;
      res.set_content(body.dump(), kJson);
    });

    server.Get("/api/stream", [this](const httplib::Request&, httplib::Response& res) {
      auto client = std::make_shared<StreamClient>();
      ordered_json board;
      board["id"] = config.active_board;
      client->push(sse_frame("board", board.dump()));
      {
        std::lock_guard lock(clients_m);
        clients.push_back(client);
      }
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [this, client](std::size_t, httplib::DataSink& sink) {
            std::unique_lock lock(client->m);
            client->cv.wait_for(lock, config.heartbeat, [&] { return client->closed || !client->frames.empty(); });
            if (client->closed || stopping) return false;
            std::string chunk;
            if (client->frames.empty()) {
              chunk = ": heartbeat\n\n";
            } else {
              while (!client->frames.empty()) {
                chunk += client->frames.front();
                client->frames.pop_front();
              }
            }
            lock.unlock();
            return sink.is_writable() && sink.write(chunk.data(), chunk.size());
          },
          [this, client](bool) {
            client->close();
            std::lock_guard lock(clients_m);
            std::erase(clients, client);
          });
    });

    server.Get(R"(/api/board/([A-Za-z0-9_-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto& kinds = board_kinds();
      const auto path = config.board_dir / (id + ".json");
      if (std::find(kinds.begin(), kinds.end(), id) == kinds.end() || !std::filesystem::exists(path)) {
        return send_error(res, 404, Error(Errc::unknown_board, id));
      }
      try {
        res.set_content(detail::read_file(path), kJson);
      } catch (const Error& e) {
        send_error(res, 500, e);
      }
    });

    server.Post("/api/profile", [this](const httplib::Request& req, httplib::Response& res) {
      json patch = json::parse(req.body, nullptr, false);
      if (patch.is_discarded() || !patch.is_object()) {
        return send_error(res, 400, Error(Errc::malformed_body, "profile patch must be a JSON object"));
      }
      try {
        res.set_content(session.patch_profile(patch).dump(), kJson);
      } catch (const Error& e) {
        send_error(res, 400, e);
      }
    });

    server.Post("/api/feedback", [this](const httplib::Request& req, httplib::Response& res) {
      json j = json::parse(req.body, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("message_id") || !j["message_id"].is_string() ||
          !j.contains("helpful") || !j["helpful"].is_boolean()) {
        return send_error(res, 400, Error(Errc::malformed_body, R"(expected {"message_id": text, "helpful": bool})"));
      }
      try {
        auto counts = session.submit_feedback(j["message_id"].get<std::string>(), j["helpful"].get<bool>());
        ordered_json body;
        body["status"] = "ok";
        body["yes"] = counts.yes;
        body["no"] = counts.no;
        body["total"] = counts.total;
        res.set_content(body.dump(), kJson);
      } catch (const Error& e) {
        send_error(res, e.code() == Errc::unknown_message ? 404 : 400, e);
      }
    });

    server.Get("/api/history", [this](const httplib::Request& req, httplib::Response& res) {
      std::size_t limit = 50;
      if (req.has_param("limit")) {
        const auto text = req.get_param_value("limit");
        if (text.empty() || text.size() > 9 ||
            !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          return send_error(res, 400, Error(Errc::malformed_body, "limit must be a non-negative integer"));
        }
        limit = std::stoul(text);
      }
      ordered_json out = ordered_json::array();
      for (auto& line : session.history(limit)) out.push_back(std::move(line));
      res.set_content(out.dump(), kJson);
    });

    server.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(session.status().dump(), kJson);
    });

    if (!config.ui_dir.empty()) server.set_mount_point("/", config.ui_dir.string());
  }
};

Gateway::Gateway(Bus& bus, Session& session, GatewayConfig config)
    : impl_(std::make_unique<Impl>(bus, session, std::move(config))) {
  impl_->routes();
}

Gateway::~Gateway() { stop(); }

int Gateway::bind() {
  auto& i = *impl_;
  if (i.bound) return i.port;
  if (i.config.port < 0 || i.config.port > 65535) throw Error(Errc::io_failure, "port out of range");
  if (i.config.port == 0) {
    i.port = i.server.bind_to_any_port(i.config.bind);
  } else {
    i.port = i.server.bind_to_port(i.config.bind, i.config.port) ? i.config.port : -1;
  }
  if (i.port <= 0) {
    throw Error(Errc::io_failure, "cannot bind " + i.config.bind + ":" + std::to_string(i.config.port));
  }
  i.bound = true;
  return i.port;
}

void Gateway::start() {
  bind();
  auto& i = *impl_;
  if (i.listener.joinable()) return;
  i.explanations = i.bus.subscribe(topics::explanations);
  i.forwarder = std::thread([&i] { i.forward(); });
  i.listener = std::thread([&i] { i.server.listen_after_bind(); });
  i.server.wait_until_ready();
}

void Gateway::stop() {
  auto& i = *impl_;
  if (i.stopping.exchange(true)) return;
  {
    std::lock_guard lock(i.clients_m);
    for (auto& c : i.clients) c->close();
  }
  i.explanations.close();
  if (i.forwarder.joinable()) i.forwarder.join();
  i.server.stop();
  if (i.listener.joinable()) i.listener.join();
  i.explanations.unsubscribe();
}

void Gateway::push_status(const ordered_json& status) { impl_->broadcast(sse_frame("status", status.dump())); }

int Gateway::port() const noexcept { return impl_->port; }

std::size_t Gateway::stream_clients() const {
  std::lock_guard lock(impl_->clients_m);
  return impl_->clients.size();
}

}  // namespace pictobridge
