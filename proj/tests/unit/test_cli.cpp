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

#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "process.hpp"
#include "testing.hpp"

using namespace std::chrono_literals;
using nlohmann::json;
using pbtest::run;

namespace {

const std::string kCli = PB_CLI_PATH;

std::string golden_script() { return (pbtest::golden_dir() / "golden.txt").string(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help and usage errors") {
    CHECK(run({kCli, "--help"}).exit_code == 0);
    CHECK(run({kCli}).exit_code == 2);
    CHECK(run({kCli, "teleport"}).exit_code == 2);
    CHECK(run({kCli, "serve", "--port", "-1"}).exit_code == 2);
    CHECK(run({kCli, "serve", "--port", "70000"}).exit_code == 2);
    CHECK(run({kCli, "scenario", "run", "warehouse", "--ticks", "-4"}).exit_code == 2);
  }

  TEST_CASE("scenario run reproduces the golden transcript") {
    const auto r = run({kCli, "scenario", "run", "warehouse", "--seed", "42", "--script", golden_script(), "--ticks", "120"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == pbtest::slurp(pbtest::golden_dir() / "golden.jsonl"));
  }

  TEST_CASE("scenario run writes --out") {
    pbtest::TempDir dir;
    const auto out = (dir.path() / "t.jsonl").string();
    const auto r = run({kCli, "scenario", "run", "warehouse", "--seed", "42", "--script", golden_script(), "--ticks",
                        "120", "--out", out});
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(pbtest::slurp(out) == pbtest::slurp(pbtest::golden_dir() / "golden.jsonl"));
  }

  TEST_CASE("zero ticks") {
    const auto r = run({kCli, "scenario", "run", "warehouse", "--ticks", "0"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
  }

  TEST_CASE("malformed script names the line") {
    pbtest::TempDir dir;
    const auto path = dir.path() / "bad.txt";
    std::ofstream(path) << "1 why\n2 goal\nthree stop\n";
    const auto r = run({kCli, "scenario", "run", "warehouse", "--script", path.string()});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
  }

  TEST_CASE("missing script and unknown scenario") {
    CHECK(run({kCli, "scenario", "run", "warehouse", "--script", "/nonexistent/script.txt"}).exit_code == 1);
    const auto r = run({kCli, "scenario", "run", "moon", "--ticks", "3"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("UnknownScenario") != std::string::npos);
  }

  TEST_CASE("boards export") {
    pbtest::TempDir dir;
    const auto r = run({kCli, "boards", "export", "--out", dir.path().string()});
    CHECK(r.exit_code == 0);
    for (const char* kind : {"interaction", "explanation", "full"}) {
      CAPTURE(kind);
      const auto file = dir.path() / (std::string(kind) + ".json");
      CHECK(pbtest::slurp(file) == pbtest::slurp(pbtest::fixture_dir() / "boards" / (std::string(kind) + ".json")));
    }
    CHECK(run({kCli, "boards", "export", "--out", dir.path().string(), "--langs", "en,fr"}).exit_code == 1);
  }

  TEST_CASE("lexicon validate") {
    auto r = run({kCli, "lexicon", "validate"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("ok:", 0) == 0);
    CHECK(run({kCli, "lexicon", "validate", "--file", (pbtest::fixture_dir() / "catalog_valid.json").string()})
              .exit_code == 0);
    r = run({kCli, "lexicon", "validate", "--file", (pbtest::fixture_dir() / "catalog_corrupt.json").string()});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("duplicate-catalog-id") != std::string::npos);
    CHECK(run({kCli, "lexicon", "validate", "--file", "/nonexistent.json"}).exit_code == 1);
  }

  TEST_CASE("serve answers and shuts down cleanly") {
    pbtest::TempDir data;
    pbtest::Child server({kCli, "serve", "--port", "0", "--tick-ms", "50", "--heartbeat-ms", "100"},
                         {"PICTOBRIDGE_DATA_DIR=" + data.path().string()});
    const auto port = server.wait_listening(10s);
    REQUIRE(port.has_value());
    httplib::Client client("127.0.0.1", *port);
    auto res = client.Get("/api/board/interaction");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["id"] == "interaction");
    res = client.Post("/api/command", "why", "text/plain");
    REQUIRE(res);
    CHECK(res->status == 200);
    res = client.Post("/api/profile", R"({"detail":"basic"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(server.terminate() == 0);
    CHECK(std::filesystem::exists(data.path() / "boards" / "interaction.json"));
    CHECK(std::filesystem::exists(data.path() / "profiles" / "default.json"));
  }

  TEST_CASE("serve fails on a busy port") {
    httplib::Server blocker;
    const int port = blocker.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    pbtest::TempDir data;
    const auto r = run({kCli, "serve", "--port", std::to_string(port), "--data-dir", data.path().string()});
    CHECK(r.exit_code == 1);
  }
}
