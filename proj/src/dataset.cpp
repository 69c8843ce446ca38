#include "fqre/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace fqre {

namespace {

// cells[r][c] = {row payoff, column payoff}.
Game bimatrix(const std::string& name, std::vector<std::string> row_labels,
              std::vector<std::string> col_labels,
              const std::vector<std::vector<std::pair<double, double>>>& cells) {
  Game g;
  g.name = name;
  g.players = {"row", "column"};
  g.strategies = {std::move(row_labels), std::move(col_labels)};
  const std::size_t cols = g.strategies[1].size();
  g.payoffs.assign(2, std::vector<double>(g.profile_count(), 0.0));
  for (std::size_t r = 0; r < g.strategies[0].size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      g.payoffs[0][r * cols + c] = cells[r][c].first;
      g.payoffs[1][r * cols + c] = cells[r][c].second;
    }
  return g;
}

ObservedPlay observed2(std::vector<double> row, std::vector<double> col,
                       std::string source) {
  ObservedPlay obs;
  obs.freq = {std::move(row), std::move(col)};
  obs.source = std::move(source);
  return obs;
}

FocalSpec labels_spec(const Game& game,
                      const std::vector<std::vector<std::string>>& labels) {
  FocalSpec spec = FocalSpec::none(game);
  for (int i = 0; i < game.num_players(); ++i)
    for (const auto& l : labels[i]) spec.focal[i].push_back(game.strategy_index(i, l));
  return spec;
}

// Matching pennies family: only the U-L payoff varies across treatments.
Game pennies(const std::string& name, double top_left) {
  return bimatrix(name, {"U", "D"}, {"L", "R"},
                  {{{top_left, 4}, {4, 8}}, {{4, 8}, {8, 4}}});
}

Fixture traveler_fixture(double T) {
  if (!(T > 0)) throw std::invalid_argument("traveler reward T must be positive");
  Fixture fx;
  Game& g = fx.game;
  g.name = "traveler";
  g.players = {"row", "column"};
  g.strategies.assign(2, {});
  for (int n = 180; n <= 300; ++n) {
    g.strategies[0].push_back(std::to_string(n));
    g.strategies[1].push_back(std::to_string(n));
  }
  const int J = 121;
  g.payoffs.assign(2, std::vector<double>(std::size_t(J) * J, 0.0));
  for (int a = 0; a < J; ++a)
    for (int b = 0; b < J; ++b) {
      const int na = 180 + a, nb = 180 + b;
      const double base = std::min(na, nb);
      const double sign = nb > na ? 1.0 : (nb < na ? -1.0 : 0.0);
      g.payoffs[0][std::size_t(a) * J + b] = base + T * sign;
      g.payoffs[1][std::size_t(a) * J + b] = base - T * sign;
    }
  fx.citation = "Goeree and Holt (2001), traveler's dilemma treatments";
  return fx;
}

Fixture min_effort_fixture(double c) {
  if (!(c > 0 && c < 1))
    throw std::invalid_argument("effort cost c must lie in (0, 1)");
  Fixture fx;
  Game& g = fx.game;
  g.name = "min-effort";
  g.players = {"row", "column"};
  g.strategies.assign(2, {});
  for (int e = 110; e <= 170; ++e) {
    g.strategies[0].push_back(std::to_string(e));
    g.strategies[1].push_back(std::to_string(e));
  }
  const int J = 61;
  g.payoffs.assign(2, std::vector<double>(std::size_t(J) * J, 0.0));
  for (int a = 0; a < J; ++a)
    for (int b = 0; b < J; ++b) {
      const double ea = 110 + a, eb = 110 + b;
      g.payoffs[0][std::size_t(a) * J + b] = std::min(ea, eb) - c * ea;
      g.payoffs[1][std::size_t(a) * J + b] = std::min(ea, eb) - c * eb;
    }
  fx.citation = "Goeree and Holt (2001), minimum-effort coordination treatments";
  return fx;
}

}  // namespace

Fixture builtin(const std::string& name, std::optional<double> param) {
  Fixture fx;
  const std::string gh = "Goeree and Holt (2001)";

  if (name == "gh-mp-sym") {
    fx.game = pennies(name, 8);
    fx.observed = observed2({0.52, 0.48}, {0.52, 0.48}, gh);
    fx.reference_focal = labels_spec(fx.game, {{"U", "D"}, {"L", "R"}});
    fx.citation = gh + ", symmetric matching pennies";
  } else if (name == "gh-mp-asym1") {
    fx.game = pennies(name, 32);
    fx.observed = observed2({0.96, 0.04}, {0.16, 0.84}, gh);
    fx.reference_focal = labels_spec(fx.game, {{"U"}, {"L", "R"}});
    fx.citation = gh + ", asymmetric matching pennies (high row reward)";
  } else if (name == "gh-mp-asym2") {
    fx.game = pennies(name, 4.4);
    fx.observed = observed2({0.08, 0.92}, {0.8, 0.2}, gh);
    fx.reference_focal = labels_spec(fx.game, {{"D"}, {"L", "R"}});
    fx.citation = gh + ", asymmetric matching pennies (low row reward)";
  } else if (name == "ad-g4") {
    fx.game = bimatrix(name, {"U", "D"}, {"L", "R"},
                       {{{-3, 3}, {-7, 7}}, {{-6, 6}, {-4, 4}}});
    fx.observed = observed2({0.34, 0.66}, {0.49, 0.51}, "Holt et al. (2022)");
    fx.reference_focal = labels_spec(fx.game, {{"U", "D"}, {"L", "R"}});
    fx.citation = "Holt et al. (2022), attacker-defender game 4";
  } else if (name == "ad-g5") {
    fx.game = bimatrix(name, {"U", "D"}, {"L", "R"},
                       {{{-2, 2}, {-7, 7}}, {{-8, 8}, {-4, 4}}});
    fx.observed = observed2({0.59, 0.41}, {0.33, 0.67}, "Holt et al. (2022)");
    fx.reference_focal = labels_spec(fx.game, {{"U"}, {"R"}});
    fx.citation = "Holt et al. (2022), attacker-defender game 5";
  } else if (name == "ad-g6") {
    fx.game = bimatrix(name, {"U", "D"}, {"L", "R"},
                       {{{-6, 6}, {-7, 7}}, {{-12, 12}, {-4, 4}}});
    fx.observed = observed2({0.82, 0.18}, {0.61, 0.39}, "Holt et al. (2022)");
    fx.reference_focal = labels_spec(fx.game, {{"U"}, {"L"}});
    fx.citation = "Holt et al. (2022), attacker-defender game 6";
  } else if (name == "m1") {
    fx.game = bimatrix(name, {"U", "D"}, {"L", "R"},
                       {{{4, 4}, {4, 4}}, {{0, 1}, {6, 3}}});
    fx.observed = observed2({0.57, 0.43}, {0.2, 0.8},
                            "Schotter, Weigelt, and Wilson (1994)");
    fx.reference_focal = labels_spec(fx.game, {{"U"}, {"R"}});
    fx.citation = "Schotter, Weigelt, and Wilson (1994), game M1";
  } else if (name == "coord-outside1" || name == "coord-outside2") {
    const bool second = name == "coord-outside2";
    fx.game = bimatrix(
        name, {"U", "D"}, {"Left", "Right", "Safe"},
        {{{9, 9}, {0, 0}, {second ? 40.0 : 0.0, 4}},
         {{0, 0}, {18, 18}, {0, 4}}});
    ObservedPlay obs;
    obs.freq = second ? std::vector<std::vector<double>>{{0.36, 0.64},
                                                         {0.0, 0.76, 0.0}}
                      : std::vector<std::vector<double>>{{0.04, 0.96},
                                                         {0.0, 0.84, 0.0}};
    obs.known = {{1, 1}, {0, 1, 0}};  // Left/Safe frequencies unreported
    obs.source = gh;
    fx.observed = std::move(obs);
    fx.reference_focal =
        labels_spec(fx.game, {{second ? "U" : "D"}, {"Right"}});
    fx.citation = gh + ", coordination with a secure outside option" +
                  (second ? " (high outside payoff)" : "");
  } else if (name == "kreps-baseline") {
    fx.game = bimatrix(name, {"U", "D"},
                       {"Left", "Middle", "Non-Nash", "Right"},
                       {{{20, 5}, {0, 4.5}, {1, 3}, {2, -25}},
                        {{0, -25}, {1, -10}, {3, 3}, {5, 4}}});
    fx.observed = observed2({0.68, 0.32}, {0.25, 0.08, 0.67, 0.0}, gh);
    fx.reference_focal =
        labels_spec(fx.game, {{"U"}, {"Middle", "Non-Nash"}});
    fx.citation = gh + ", Kreps game";
  } else if (name == "kreps-shifted") {
    fx.game = bimatrix(name, {"U", "D"},
                       {"Left", "Middle", "Non-Nash", "Right"},
                       {{{50, 35}, {30, 34.5}, {31, 33}, {32, 5}},
                        {{30, 5}, {31, 20}, {33, 33}, {35, 34}}});
    fx.observed = observed2({0.84, 0.16}, {0.24, 0.12, 0.64, 0.0}, gh);
    fx.reference_focal =
        labels_spec(fx.game, {{"U"}, {"Middle", "Non-Nash"}});
    fx.citation = gh + ", Kreps game with all payoffs shifted up by 30";
  } else if (name == "traveler") {
    fx = traveler_fixture(param.value_or(180.0));
  } else if (name == "min-effort") {
    fx = min_effort_fixture(param.value_or(0.9));
  } else if (name == "qre-reject-g1" || name == "qre-reject-g2" ||
             name == "qre-reject-g3" || name == "qre-reject-g4") {
    const double top = 10 + 2 * (name.back() - '1');
    fx.game = pennies(name, top);
    fx.citation =
        "stylized matching-pennies family used by the nonparametric "
        "rejection tests";
  } else {
    throw std::invalid_argument("unknown fixture: " + name);
  }

  if (param && name != "traveler" && name != "min-effort")
    throw std::invalid_argument("fixture " + name + " takes no parameter");
  return fx;
}

std::vector<CatalogEntry> list_fixtures() {
  const std::string gh = "Goeree and Holt (2001)";
  return {
      {"gh-mp-sym", gh, "", "symmetric matching pennies, observed play"},
      {"gh-mp-asym1", gh, "", "asymmetric matching pennies, row reward 32"},
      {"gh-mp-asym2", gh, "", "asymmetric matching pennies, row reward 4.4"},
      {"ad-g4", "Holt et al. (2022)", "", "zero-sum attacker-defender game 4"},
      {"ad-g5", "Holt et al. (2022)", "", "zero-sum attacker-defender game 5"},
      {"ad-g6", "Holt et al. (2022)", "", "zero-sum attacker-defender game 6"},
      {"m1", "Schotter, Weigelt, and Wilson (1994)", "",
       "2x2 game with a weakly dominated focal row"},
      {"coord-outside1", gh, "",
       "coordination with a secure outside option, low outside payoff"},
      {"coord-outside2", gh, "",
       "coordination with a secure outside option, high outside payoff"},
      {"kreps-baseline", gh, "", "Kreps game, payoffs as printed"},
      {"kreps-shifted", gh, "", "Kreps game, all payoffs shifted up by 30"},
      {"traveler", gh, "T > 0 (default 180)",
       "traveler's dilemma on the integer claim grid 180..300"},
      {"min-effort", gh, "c in (0, 1) (default 0.9)",
       "minimum-effort coordination on the integer effort grid 110..170"},
      {"qre-reject-g1", "stylized", "", "rejection-test game, row reward 10"},
      {"qre-reject-g2", "stylized", "", "rejection-test game, row reward 12"},
      {"qre-reject-g3", "stylized", "", "rejection-test game, row reward 14"},
      {"qre-reject-g4", "stylized", "", "rejection-test game, row reward 16"},
  };
}

}  // namespace fqre
