#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "qontext/scenario.hpp"

using namespace qontext::scenario;

namespace {

std::string data_path(const std::string& name) {
  const char* dir = std::getenv("QONTEXT_DATA_DIR");
  return (dir != nullptr ? std::string(dir) : std::string("data")) + "/" + name;
}

}  // namespace

TEST_CASE("bundled xyz scenario parses to the three pair contexts") {
  const Scenario s = load_scenario(data_path("xyz.scn"));
  CHECK(s.kind == Kind::correlation);
  REQUIRE(s.observables.size() == 3);
  REQUIRE(s.contexts.size() == 3);
  CHECK(s.contexts[0].members == std::vector<std::string>{"X", "Y"});
  CHECK(s.contexts[1].members == std::vector<std::string>{"X", "Z"});
  CHECK(s.contexts[2].members == std::vector<std::string>{"Y", "Z"});
}

TEST_CASE("bundled cabello scenario has 18 observables in 9 contexts of 4") {
  const Scenario s = load_scenario(data_path("cabello18.scn"));
  CHECK(s.kind == Kind::ks_coloring);
  CHECK(s.observables.size() == 18);
  REQUIRE(s.contexts.size() == 9);
  for (const Context& c : s.contexts) CHECK(c.members.size() == 4);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_scenario("obs A 2\n"), ParseError);  // missing header
  CHECK_THROWS_AS(parse_scenario("scenario whatever\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nfrob A\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A two\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A 2\nctx\n"), ParseError);

  try {
    parse_scenario("scenario correlation\nobs A 2\nobs B two\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("validation rejects inconsistent scenarios") {
  // dangling reference
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A 2\nctx A B\n"), ValidationError);
  // duplicate id
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A 2\nobs A 2\nctx A\n"),
                  ValidationError);
  // repeated member within one context
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A 2\nctx A A\n"), ValidationError);
  // bad outcome count for these scenario kinds
  CHECK_THROWS_AS(parse_scenario("scenario correlation\nobs A 3\nctx A\n"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("scenario ks_coloring\nobs A 1\nctx A\n"), ValidationError);
}

TEST_CASE("comments and blank lines are ignored") {
  const Scenario s = parse_scenario(
      "# leading comment\n"
      "scenario correlation\n"
      "\n"
      "obs A 2  # trailing comment\n"
      "obs B 2\n"
      "ctx A B\n");
  CHECK(s.observables.size() == 2);
  CHECK(s.contexts.size() == 1);
}

TEST_CASE("serialization round-trips and is bit-stable") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Scenario s;
    s.kind = rng() % 2 == 0 ? Kind::ks_coloring : Kind::correlation;
    const int obs_count = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < obs_count; ++i)
      s.observables.push_back(Observable{"O" + std::to_string(i), 2});
    const int ctx_count = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < ctx_count; ++c) {
      Context ctx;
      for (int i = 0; i < obs_count; ++i)
        if (rng() % 2 == 0) ctx.members.push_back(s.observables[static_cast<std::size_t>(i)].id);
      if (ctx.members.empty()) ctx.members.push_back(s.observables[0].id);
      s.contexts.push_back(std::move(ctx));
    }
    const std::string text = serialize_scenario(s);
    const Scenario reparsed = parse_scenario(text);
    CHECK(reparsed == s);
    CHECK(serialize_scenario(reparsed) == text);
  }
}

TEST_CASE("bundled files survive a parse-serialize-parse cycle") {
  for (const char* name : {"xyz.scn", "cabello18.scn"}) {
    const Scenario s = load_scenario(data_path(name));
    CHECK(parse_scenario(serialize_scenario(s)) == s);
  }
}

TEST_CASE("occurrence counts") {
  const Scenario cabello = load_scenario(data_path("cabello18.scn"));
  for (const auto& [id, count] : occurrence_counts(cabello)) {
    CAPTURE(id);
    CHECK(count == 2);
  }
  const Scenario xyz = load_scenario(data_path("xyz.scn"));
  for (const auto& [id, count] : occurrence_counts(xyz)) CHECK(count == 2);

  const Scenario single = parse_scenario("scenario correlation\nobs A 2\nobs B 2\nctx A B\n");
  for (const auto& [id, count] : occurrence_counts(single)) CHECK(count == 1);

  // Counts total the sum of context sizes.
  std::size_t total = 0;
  for (const auto& [id, count] : occurrence_counts(cabello))
    total += static_cast<std::size_t>(count);
  std::size_t member_sum = 0;
  for (const Context& c : cabello.contexts) member_sum += c.members.size();
  CHECK(total == member_sum);
}

TEST_CASE("contexts_of lists containing contexts in declaration order") {
  const Scenario xyz = load_scenario(data_path("xyz.scn"));
  const auto of_x = contexts_of(xyz, "X");
  REQUIRE(of_x.size() == 2);
  CHECK(of_x[0].members == std::vector<std::string>{"X", "Y"});
  CHECK(of_x[1].members == std::vector<std::string>{"X", "Z"});
  CHECK_THROWS_AS(contexts_of(xyz, "W"), UnknownObservableError);

  const Scenario cabello = load_scenario(data_path("cabello18.scn"));
  CHECK(contexts_of(cabello, "P1").size() == 2);
}

TEST_CASE("context family reports the companions per context") {
  const Scenario xyz = load_scenario(data_path("xyz.scn"));
  const ContextFamily fam = context_family(xyz, "X");
  CHECK(fam.base_observable == "X");
  REQUIRE(fam.companions.size() == 2);
  CHECK(fam.companions[0] == std::vector<std::string>{"Y"});
  CHECK(fam.companions[1] == std::vector<std::string>{"Z"});

  const Scenario lonely = parse_scenario("scenario correlation\nobs A 2\nobs B 2\nctx B\n");
  CHECK_THROWS_AS(context_family(lonely, "A"), ValidationError);
}
