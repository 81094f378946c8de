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

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pictobridge/boards.hpp"
#include "pictobridge/error.hpp"
#include "pictobridge/gateway.hpp"
#include "pictobridge/lexicon.hpp"
#include "pictobridge/runner.hpp"
#include "pictobridge/service.hpp"

namespace pb = pictobridge;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsage = 2;

std::vector<std::string> split_langs(const std::string& csv, const pb::Lexicon& lexicon) {
  if (csv.empty()) return lexicon.languages();
  std::vector<std::string> out;
  std::stringstream in(csv);
  std::string lang;
  while (std::getline(in, lang, ',')) {
    if (!lang.empty()) out.push_back(lang);
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pb::Error(pb::Errc::io_failure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ServeArgs {
  int port = 8080;
  std::string bind = "127.0.0.1";
  std::string scenario = "warehouse";
  long long seed = 42;
  std::string board_dir;
  std::string data_dir = "pictobridge-data";
  std::string ui_dir;
  bool no_auto_adjust = false;
  int tick_ms = 500;
  int heartbeat_ms = 15000;
};

int serve(ServeArgs args) {
  if (const char* env = std::getenv("PICTOBRIDGE_DATA_DIR"); env && *env) args.data_dir = env;
  if (args.board_dir.empty()) args.board_dir = (std::filesystem::path(args.data_dir) / "boards").string();

  const auto composer = std::make_shared<const pb::Composer>(pb::Composer::builtin());
  pb::export_boards(args.board_dir, composer->lexicon().languages(), composer->lexicon());

  // Signals are taken synchronously by sigwait below; block them before any thread starts.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  pb::Bus bus;
  pb::ServiceConfig config;
  config.scenario = args.scenario;
  config.seed = args.seed;
  config.data_dir = args.data_dir;
  config.auto_adjust = !args.no_auto_adjust;
  config.tick_period = std::chrono::milliseconds(args.tick_ms);
  pb::Service service(bus, composer, config);

  pb::GatewayConfig gw;
  gw.bind = args.bind;
  gw.port = args.port;
  gw.board_dir = args.board_dir;
  gw.ui_dir = args.ui_dir;
  gw.heartbeat = std::chrono::milliseconds(args.heartbeat_ms);
  pb::Gateway gateway(bus, service, gw);
  const int port = gateway.bind();

  service.on_status([&gateway](const nlohmann::ordered_json& status) { gateway.push_status(status); });
  gateway.start();
  service.start();
  std::cout << "pictobridge listening on http://" << args.bind << ":" << port << std::endl;

  int sig = 0;
  sigwait(&signals, &sig);
  std::cout << "shutting down" << std::endl;
  gateway.stop();
  service.stop();
  bus.close();
  return kOk;
}

int scenario_run(const std::string& name, long long seed, const std::string& script_path, long long ticks,
                 const std::string& out) {
  pb::Script script;
  if (!script_path.empty()) {
    try {
      script = pb::load_script(script_path);
    } catch (const pb::Error& e) {
      std::cerr << script_path << ": " << e.what() << "\n";
      return kDataError;
    }
  }
  const auto result = pb::run_script(name, seed, script, ticks);
  const auto text = pb::transcript_text(result.transcript);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      return kDataError;
    }
  }
  return kOk;
}

int boards_export(const std::string& out, const std::string& langs) {
  const auto lexicon = pb::Lexicon::builtin();
  for (const auto& path : pb::export_boards(out, split_langs(langs, lexicon), lexicon)) {
    std::cout << path.string() << "\n";
  }
  return kOk;
}

int lexicon_validate(const std::string& file) {
  pb::Catalog catalog;
  try {
    catalog = file.empty() ? pb::Lexicon::builtin().catalog() : pb::parse_catalog(read_text(file));
  } catch (const pb::Error& e) {
    std::cerr << e.what() << "\n";
    return kDataError;
  }
  const auto violations = pb::validate_catalog(catalog);
  for (const auto& v : violations) std::cerr << v.kind << " " << v.subject << ": " << v.detail << "\n";
  if (!violations.empty()) return kDataError;
  std::cout << "ok: " << catalog.concepts.size() << " concepts, " << catalog.terms.size() << " terms, "
            << catalog.languages.size() << " languages\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pictobridge: pictogram boards that explain a robot"};
  app.require_subcommand(1);

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the gateway and the simulated robot");
  serve_cmd->add_option("--port", serve_args.port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--bind", serve_args.bind, "Bind address");
  serve_cmd->add_option("--scenario", serve_args.scenario, "Scenario name");
  serve_cmd->add_option("--seed", serve_args.seed, "Scenario seed");
  serve_cmd->add_option("--board-dir", serve_args.board_dir, "Where boards are exported at startup");
  serve_cmd->add_option("--data-dir", serve_args.data_dir, "Profiles, feedback and transcript (env PICTOBRIDGE_DATA_DIR)");
  serve_cmd->add_option("--ui-dir", serve_args.ui_dir, "Static files served at /")->check(CLI::ExistingDirectory);
  serve_cmd->add_flag("--no-auto-adjust", serve_args.no_auto_adjust, "Never lower detail after negative feedback");
  serve_cmd->add_option("--tick-ms", serve_args.tick_ms, "Simulator tick period")->check(CLI::Range(1, 60000));
  serve_cmd->add_option("--heartbeat-ms", serve_args.heartbeat_ms, "Stream heartbeat period")
      ->check(CLI::Range(10, 3600000));

  auto* scenario_cmd = app.add_subcommand("scenario", "Headless scenario runs");
  scenario_cmd->require_subcommand(1);
  auto* run_cmd = scenario_cmd->add_subcommand("run", "Replay a script and write the transcript");
  std::string run_name;
  long long run_seed = 42;
  std::string run_script;
  long long run_ticks = 120;
  std::string run_out;
  run_cmd->add_option("name", run_name, "Scenario name")->required();
  run_cmd->add_option("--seed", run_seed, "Scenario seed");
  run_cmd->add_option("--script", run_script, "Script file: '<tick> <intent> [arg]' per line");
  run_cmd->add_option("--ticks", run_ticks, "Ticks to simulate")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", run_out, "Transcript path (default stdout)");

  auto* boards_cmd = app.add_subcommand("boards", "Communication boards");
  boards_cmd->require_subcommand(1);
  auto* export_cmd = boards_cmd->add_subcommand("export", "Write the board files");
  std::string export_out = "boards";
  std::string export_langs;
  export_cmd->add_option("--out", export_out, "Output directory");
  export_cmd->add_option("--langs", export_langs, "Comma-separated languages (default all)");

  auto* lexicon_cmd = app.add_subcommand("lexicon", "Concept catalog");
  lexicon_cmd->require_subcommand(1);
  auto* validate_cmd = lexicon_cmd->add_subcommand("validate", "Check a catalog file");
  std::string validate_file;
  validate_cmd->add_option("--file", validate_file, "Catalog JSON (default built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*serve_cmd) return serve(serve_args);
    if (*run_cmd) return scenario_run(run_name, run_seed, run_script, run_ticks, run_out);
    if (*export_cmd) return boards_export(export_out, export_langs);
    if (*validate_cmd) return lexicon_validate(validate_file);
  } catch (const pb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
