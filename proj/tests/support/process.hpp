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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbtest {

struct Completed {
  int exit_code = -1;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string read_all(int fd) {
  std::string s;
  char buf[4096];
  ssize_t n;
  while ((n = ::read(fd, buf, sizeof buf)) > 0) s.append(buf, static_cast<std::size_t>(n));
  return s;
}

inline pid_t spawn(const std::vector<std::string>& argv, int out_fd, int err_fd,
                   const std::vector<std::string>& env = {}) {
  const pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    ::dup2(out_fd, 1);
    ::dup2(err_fd, 2);
    for (const auto& kv : env) ::putenv(const_cast<char*>(kv.c_str()));
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  return pid;
}

}  // namespace detail

/// Runs to completion with stdout and stderr captured through temp files.
inline Completed run(const std::vector<std::string>& argv, const std::vector<std::string>& env = {}) {
  char out_name[] = "/tmp/pbtest-outXXXXXX";
  char err_name[] = "/tmp/pbtest-errXXXXXX";
  const int out = ::mkstemp(out_name);
  const int err = ::mkstemp(err_name);
  const pid_t pid = detail::spawn(argv, out, err, env);
  int status = 0;
  ::waitpid(pid, &status, 0);
  Completed c;
  c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  ::lseek(out, 0, SEEK_SET);
  ::lseek(err, 0, SEEK_SET);
  c.out = detail::read_all(out);
  c.err = detail::read_all(err);
  ::close(out);
  ::close(err);
  ::unlink(out_name);
  ::unlink(err_name);
  return c;
}

/// A long-running child whose stdout is read line by line.
class Child {
 public:
  explicit Child(const std::vector<std::string>& argv, const std::vector<std::string>& env = {}) {
    int fds[2];
    if (::pipe(fds) != 0) throw std::runtime_error("pipe failed");
    const int devnull = ::open("/dev/null", O_WRONLY);
    pid_ = detail::spawn(argv, fds[1], devnull, env);
    ::close(fds[1]);
    ::close(devnull);
    fd_ = fds[0];
  }
  ~Child() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
    if (fd_ >= 0) ::close(fd_);
  }
  Child(const Child&) = delete;
  Child& operator=(const Child&) = delete;

  std::optional<std::string> read_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        auto line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
      if (left <= 0) return std::nullopt;
      pollfd p{fd_, POLLIN, 0};
      if (::poll(&p, 1, static_cast<int>(left)) <= 0) return std::nullopt;
      char buf[1024];
      const auto n = ::read(fd_, buf, sizeof buf);
      if (n <= 0) return std::nullopt;
      buffer_.append(buf, static_cast<std::size_t>(n));
    }
  }

  /// Port parsed from the "listening on http://host:port" banner.
  std::optional<int> wait_listening(std::chrono::milliseconds timeout) {
    while (auto line = read_line(timeout)) {
      if (line->find("listening on http://") == std::string::npos) continue;
      return std::stoi(line->substr(line->rfind(':') + 1));
    }
    return std::nullopt;
  }

  /// Sends SIGTERM and returns the exit code.
  int terminate() {
    ::kill(pid_, SIGTERM);
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  bool running() {
    return pid_ > 0 && ::waitpid(pid_, nullptr, WNOHANG) == 0;
  }

 private:
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace pbtest
