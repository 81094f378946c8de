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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pictobridge/bus.hpp"
#include "pictobridge/session.hpp"

namespace pictobridge {

inline constexpr std::size_t kMaxBodyBytes = 4096;
inline constexpr std::size_t kMaxTokenBytes = 64;

struct GatewayConfig {
  std::string bind = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  std::filesystem::path board_dir;
  /// Served at `/` when set.
  std::filesystem::path ui_dir;
  std::chrono::milliseconds heartbeat{15000};
  std::string active_board = "interaction";
};

/// True for a non-empty token of at most 64 bytes without whitespace.
bool valid_command_token(std::string_view token) noexcept;

/// Turns a POST /api/command body into the bus payload. JSON bodies are
/// `{"command": "...", "args": {...}}`; anything else is a bare token with an
/// optional argument. Throws Error(malformed_body).
std::string command_payload(std::string_view body, std::string_view content_type);

/// One server-sent-event frame.
std::string sse_frame(std::string_view event, std::string_view data);

/// HTTP boundary. Handlers only publish to the bus or call into the Session.
class Gateway {
 public:
  Gateway(Bus& bus, Session& session, GatewayConfig config);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Binds the socket and returns the port. Throws Error(io_failure).
  int bind();
  /// Serves on a background thread; binds first if needed.
  void start();
  void stop();

  void push_status(const nlohmann::ordered_json& status);
  int port() const noexcept;
  std::size_t stream_clients() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pictobridge
