#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fqre/dataset.hpp"
#include "fqre/focality.hpp"
#include "fqre/io.hpp"

using namespace fqre;

TEST_CASE("catalog covers every fixture and every fixture is well formed") {
  const auto entries = list_fixtures();
  CHECK(entries.size() >= 12);
  for (const auto& entry : entries) {
    const Fixture fx = builtin(entry.name);
    CHECK(validate(fx.game).ok());
    if (fx.observed) CHECK_NOTHROW(require_valid_observation(fx.game, *fx.observed));
    if (fx.reference_focal)
      CHECK_NOTHROW(require_valid_spec(fx.game, *fx.reference_focal));
    CHECK_FALSE(entry.citation.empty());
  }
}

TEST_CASE("fixtures round-trip through the JSON format losslessly") {
  for (const auto& entry : list_fixtures()) {
    const Fixture fx = builtin(entry.name);
    GameDocument doc;
    doc.game = fx.game;
    doc.observed = fx.observed;
    doc.focal = fx.reference_focal;
    std::istringstream in(save_game(doc));
    const GameDocument back = load_game(in);
    CHECK(back.game.payoffs == doc.game.payoffs);
    CHECK(back.game.strategies == doc.game.strategies);
    CHECK(back.game.players == doc.game.players);
    if (doc.observed) {
      REQUIRE(back.observed.has_value());
      CHECK(back.observed->freq == doc.observed->freq);
      for (int i = 0; i < doc.game.num_players(); ++i)
        for (int j = 0; j < doc.game.num_strategies(i); ++j)
          CHECK(back.observed->is_known(i, j) == doc.observed->is_known(i, j));
    }
    if (doc.focal) {
      REQUIRE(back.focal.has_value());
      CHECK(back.focal->focal == doc.focal->focal);
      CHECK(back.focal->delta == doc.focal->delta);
    }
  }
}

TEST_CASE("unknown names and misplaced parameters are rejected") {
  CHECK_THROWS_AS(builtin("no-such-game"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("gh-mp-sym", 2.0), std::invalid_argument);
  CHECK_THROWS_AS(builtin("traveler", -1.0), std::invalid_argument);
  CHECK_THROWS_AS(builtin("min-effort", 1.5), std::invalid_argument);
}

TEST_CASE("zero-sum structure of the attacker-defender games") {
  for (const char* name : {"ad-g4", "ad-g5", "ad-g6"}) {
    const Game g = builtin(name).game;
    for (std::size_t cell = 0; cell < g.profile_count(); ++cell)
      CHECK(g.payoffs[0][cell] + g.payoffs[1][cell] == 0.0);
  }
}

TEST_CASE("shifted Kreps game: constant offset, identical focal sets") {
  const Game base = builtin("kreps-baseline").game;
  const Game shifted = builtin("kreps-shifted").game;
  for (int player = 0; player < 2; ++player) {
    for (std::size_t cell = 0; cell < base.profile_count(); ++cell)
      CHECK(shifted.payoffs[player][cell] - base.payoffs[player][cell] == 30.0);
    CHECK(regret_focal_set(base, player) == regret_focal_set(shifted, player));
  }
}

TEST_CASE("coordination fixtures: focal sets and unreported frequencies") {
  const Fixture c1 = builtin("coord-outside1");
  const Fixture c2 = builtin("coord-outside2");
  CHECK(regret_focal_set(c1.game, 1) == std::vector<int>{1});  // Right
  CHECK(regret_focal_set(c2.game, 1) == std::vector<int>{1});
  CHECK(regret_focal_set(c1.game, 0) == std::vector<int>{1});  // D
  CHECK(regret_focal_set(c2.game, 0) == std::vector<int>{0});  // U

  for (const Fixture* fx : {&c1, &c2}) {
    REQUIRE(fx->observed.has_value());
    CHECK(fx->observed->is_known(1, 1));        // Right is reported
    CHECK_FALSE(fx->observed->is_known(1, 0));  // Left is not
    CHECK_FALSE(fx->observed->is_known(1, 2));  // Safe is not
  }
  CHECK(c1.observed->freq[1][1] == 0.84);
  CHECK(c2.observed->freq[1][1] == 0.76);
}

TEST_CASE("generator payoff formulas") {
  const Game t5 = builtin("traveler", 5.0).game;
  const int a = 200 - 180, b = 250 - 180;
  CHECK(t5.payoffs[0][std::size_t(a) * 121 + b] == 205.0);
  CHECK(t5.payoffs[1][std::size_t(a) * 121 + b] == 195.0);
  CHECK(t5.strategies[0].size() == 121);

  const Game me = builtin("min-effort", 0.5).game;
  const int e1 = 120 - 110, e2 = 150 - 110;
  CHECK(me.payoffs[0][std::size_t(e1) * 61 + e2] == doctest::Approx(60.0));
  CHECK(me.payoffs[1][std::size_t(e1) * 61 + e2] == doctest::Approx(45.0));
  CHECK(me.strategies[0].size() == 61);
}

TEST_CASE("printed frequencies of the worked fixtures") {
  CHECK(builtin("gh-mp-asym1").observed->freq ==
        MixedProfile{{0.96, 0.04}, {0.16, 0.84}});
  CHECK(builtin("m1").observed->freq == MixedProfile{{0.57, 0.43}, {0.2, 0.8}});
  CHECK(builtin("kreps-baseline").observed->freq ==
        MixedProfile{{0.68, 0.32}, {0.25, 0.08, 0.67, 0.0}});
  CHECK(builtin("ad-g5").observed->freq ==
        MixedProfile{{0.59, 0.41}, {0.33, 0.67}});
}
