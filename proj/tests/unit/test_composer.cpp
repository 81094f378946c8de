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

#include <regex>

#include "pictobridge/composer.hpp"
#include "pictobridge/error.hpp"
#include "testing.hpp"

using namespace pictobridge;

namespace {

RobotEvent event(EventType type, std::optional<Cause> cause = std::nullopt) {
  RobotEvent e;
  e.seq = 7;
  e.sim_time = 3;
  e.type = type;
  e.cause = cause;
  if (type == EventType::PICK || type == EventType::PLACE) e.object = "box";
  if (type == EventType::GOAL_SET || type == EventType::GOAL_REACHED) e.goal = "loading-zone";
  return e;
}

Policy policy(Detail d, const std::string& lang = "en") {
  Policy p;
  p.detail = d;
  p.language = lang;
  return p;
}

ExplanationMessage compose_event(const RobotEvent& e, const Policy& p) {
  const auto& c = *pbtest::composer();
  return c.compose(c.mapper().map_event(e), e, p);
}

}  // namespace

TEST_SUITE("composer") {
  TEST_CASE("enum names round trip") {
    for (auto d : {Detail::basic, Detail::standard, Detail::expert}) CHECK(parse_detail(to_string(d)) == d);
    for (auto m : {Modality::visual, Modality::audio_script, Modality::pictogram_only}) {
      CHECK(parse_modality(to_string(m)) == m);
    }
    CHECK(to_string(Modality::audio_script) == "audio-script");
    CHECK(to_string(Source::robot_initiated) == "robot-initiated");
    CHECK(lower(Detail::expert) == Detail::standard);
    CHECK(lower(Detail::basic) == Detail::basic);
    CHECK_FALSE(parse_detail("verbose").has_value());
  }

  TEST_CASE("expand_template") {
    CHECK(expand_template("I go to {goal}.", {{"goal", "the dock"}}) == "I go to the dock.");
    CHECK(expand_template("Stop[ because of {cause}].", {}) == "Stop.");
    CHECK(expand_template("Stop[ because of {cause}].", {{"cause", "you"}}) == "Stop because of you.");
    CHECK(expand_template("plain", {}) == "plain");
    try {
      (void)expand_template("I go to {goal}.", {});
      FAIL("expected MissingTemplate");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::missing_template);
    }
  }

  TEST_CASE("word_count") {
    CHECK(word_count("") == 0);
    CHECK(word_count("  one  two\tthree\n") == 3);
    CHECK(word_count("I’m turning.") == 2);
  }

  TEST_CASE("reference renderings") {
    CHECK(compose_event(event(EventType::TURN, Cause::obstacle), policy(Detail::standard)).text.at("en") ==
          "Robot turns. There is an object blocking the path.");
    CHECK(compose_event(event(EventType::TURN, Cause::obstacle), policy(Detail::basic)).text.at("en") ==
          "I’m turning.");
    CHECK(compose_event(event(EventType::TURN, Cause::obstacle), policy(Detail::expert)).text.at("en") ==
          "Executing evasive maneuver using the DWB planner.");
  }

  TEST_CASE("every event type, cause, detail and language renders") {
    const auto& c = *pbtest::composer();
    std::vector<std::optional<Cause>> causes{std::nullopt};
    for (auto x : known_causes()) causes.emplace_back(x);
    const std::regex leftover(R"([{}\[\]])");
    for (auto t : known_event_types()) {
      for (const auto& cause : causes) {
        const auto e = event(t, cause);
        if (!check_event(e).empty()) continue;
        for (auto d : {Detail::basic, Detail::standard, Detail::expert}) {
          for (const auto& lang : c.lexicon().languages()) {
            CAPTURE(Composer::event_key(e));
            CAPTURE(to_string(d));
            const auto msg = compose_event(e, policy(d, lang));
            REQUIRE(msg.text.size() == c.lexicon().languages().size());
            for (const auto& [l, text] : msg.text) {
              CHECK_FALSE(text.empty());
              CHECK_FALSE(std::regex_search(text, leftover));
            }
            CHECK(msg.source == Source::robot_initiated);
            CHECK(msg.provenance == e.seq);
            CHECK(msg.detail == d);
            CHECK(msg.language == lang);
          }
        }
      }
    }
  }

  TEST_CASE("pictograms align one to one with concepts") {
    const auto& c = *pbtest::composer();
    for (auto t : known_event_types()) {
      const auto msg = compose_event(event(t, Cause::command), policy(Detail::standard));
      REQUIRE(msg.pictograms.size() == msg.concepts.concepts.size());
      for (std::size_t i = 0; i < msg.pictograms.size(); ++i) {
        CHECK(msg.pictograms[i] == c.lexicon().pictogram(msg.concepts.concepts[i]));
      }
    }
  }

  TEST_CASE("the presentation language does not change the concepts") {
    for (auto t : known_event_types()) {
      const auto en = compose_event(event(t, Cause::person), policy(Detail::standard, "en"));
      const auto es = compose_event(event(t, Cause::person), policy(Detail::standard, "es"));
      CHECK(en.concepts == es.concepts);
      CHECK(en.pictograms == es.pictograms);
      CHECK(en.text == es.text);
    }
  }

  TEST_CASE("gloss without an event") {
    const auto& c = *pbtest::composer();
    const auto msg = c.compose(ConceptSequence{{"robot", "stop"}, std::nullopt}, std::nullopt, policy(Detail::standard));
    CHECK(msg.template_key == "gloss");
    CHECK(msg.text.at("en") == "robot stop.");
    CHECK_FALSE(msg.provenance.has_value());
  }

  TEST_CASE("missing templates fall back along the key chain") {
    const auto& t = pbtest::composer()->templates();
    CHECK(t.find("TURN:obstacle", Detail::standard, "en") != nullptr);
    CHECK(t.find("why:TURN:nothing", Detail::standard, "en") != nullptr);
    CHECK(t.find("TURN", Detail::basic, "fr") == nullptr);
    CHECK(t.find("UNHEARD", Detail::basic, "en") == nullptr);
  }

  TEST_CASE("language confirmation") {
    const auto& c = *pbtest::composer();
    const auto en = c.confirm_language("en");
    CHECK(en.text.at("en") == "Language set to English. I am avoiding humans to maintain safety.");
    CHECK(en.source == Source::system);
    CHECK_THROWS_AS((void)c.confirm_language("fr"), Error);
  }

  TEST_CASE("relevance clause") {
    const auto& c = *pbtest::composer();
    const auto clause = c.relevance_clause("loading-zone", "en");
    CHECK(clause.text == "I’m choosing this route so we can get to your destination faster.");
    CHECK(c.relevance_clause("loading-zone", "es").text.find("zona de carga") != std::string::npos);
    CHECK_THROWS_AS((void)c.relevance_clause("nowhere", "en"), Error);
    CHECK_THROWS_AS((void)c.relevance_clause("warehouse", "xx"), Error);
  }

  TEST_CASE("reformulation") {
    const auto& c = *pbtest::composer();
    const auto msg = compose_event(event(EventType::TURN, Cause::obstacle), policy(Detail::expert));
    const auto simpler = c.reformulate(msg, Reformulation::simpler);
    CHECK(simpler.detail == Detail::standard);
    CHECK(simpler.concepts == msg.concepts);
    CHECK(simpler.text.at("en") == "Robot turns. There is an object blocking the path.");
    const auto simplest = c.reformulate(c.reformulate(simpler, Reformulation::simpler), Reformulation::simpler);
    CHECK(simplest.detail == Detail::basic);
    CHECK(simplest.text.at("en") == "I’m turning.");
    const auto images = c.reformulate(msg, Reformulation::images);
    CHECK(images.modality == ModalityHint{Modality::pictogram_only});
    CHECK(images.pictograms == msg.pictograms);
    CHECK(images.text == msg.text);
  }

  TEST_CASE("template table parse errors") {
    CHECK_THROWS_AS(TemplateTable::parse("nope"), Error);
    const auto t = TemplateTable::parse(R"({"X/basic/en": "x"})");
    REQUIRE(t.find("X", Detail::basic, "en") != nullptr);
    CHECK(*t.find("X", Detail::basic, "en") == "x");
  }
}
