#include "fqre/game.hpp"

#include <cmath>
#include <set>

namespace fqre {

MixedProfile uniform_profile(const Game& game) {
  MixedProfile p;
  p.reserve(game.players.size());
  for (int i = 0; i < game.num_players(); ++i) {
    const int j = game.num_strategies(i);
    p.emplace_back(j, 1.0 / j);
  }
  return p;
}

bool is_valid_profile(const Game& game, const MixedProfile& profile,
                      double tolerance) {
  if (static_cast<int>(profile.size()) != game.num_players()) return false;
  for (int i = 0; i < game.num_players(); ++i) {
    if (static_cast<int>(profile[i].size()) != game.num_strategies(i))
      return false;
    double sum = 0;
    for (double v : profile[i]) {
      if (!(v >= 0.0 && v <= 1.0)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance) return false;
  }
  return true;
}

void require_valid_profile(const Game& game, const MixedProfile& profile) {
  if (!is_valid_profile(game, profile))
    throw std::invalid_argument(
        "mixed profile does not match the game's strategy dimensions or is "
        "not a probability simplex point");
}

UtilityVector expected_utilities(const Game& game, const MixedProfile& profile,
                                 int player) {
  require_valid_profile(game, profile);
  if (player < 0 || player >= game.num_players())
    throw std::invalid_argument("player index out of range");

  const int j_count = game.num_strategies(player);
  UtilityVector u(j_count, 0.0);
  const auto st = game.strides();
  const auto& pay = game.payoffs[player];

  for_each_opposing_profile(game, player, [&](std::vector<int>& idx) {
    double weight = 1.0;
    std::size_t base = 0;
    for (int k = 0; k < game.num_players(); ++k) {
      if (k == player) continue;
      weight *= profile[k][idx[k]];
      base += idx[k] * st[k];
    }
    if (weight == 0.0) return;
    for (int j = 0; j < j_count; ++j) u[j] += weight * pay[base + j * st[player]];
  });
  return u;
}

double profile_payoff(const Game& game, const MixedProfile& profile,
                      int player) {
  const UtilityVector u = expected_utilities(game, profile, player);
  double total = 0;
  for (std::size_t j = 0; j < u.size(); ++j) total += profile[player][j] * u[j];
  return total;
}

Game transform_payoffs(const Game& game, double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("exponent must be positive");
  const bool integer_exponent = gamma == std::floor(gamma);
  Game out = game;
  for (auto& per_player : out.payoffs) {
    for (double& x : per_player) {
      if (x < 0 && !integer_exponent)
        throw std::domain_error(
            "negative payoff under a non-integer exponent; shift payoffs "
            "before applying the transform");
      x = std::pow(x, gamma);
    }
  }
  return out;
}

ValidationReport validate(const Game& game) {
  ValidationReport report;
  if (game.num_players() < 2) report.issues.push_back("fewer than two players");
  if (static_cast<int>(game.strategies.size()) != game.num_players())
    report.issues.push_back("strategy list count differs from player count");
  for (std::size_t i = 0; i < game.strategies.size(); ++i) {
    if (game.strategies[i].empty())
      report.issues.push_back("player " + std::to_string(i) +
                              " has no strategies");
    std::set<std::string> seen(game.strategies[i].begin(),
                               game.strategies[i].end());
    if (seen.size() != game.strategies[i].size())
      report.issues.push_back("player " + std::to_string(i) +
                              " has duplicate strategy labels");
  }
  if (static_cast<int>(game.payoffs.size()) != game.num_players()) {
    report.issues.push_back("payoff tensor count differs from player count");
    return report;
  }
  const std::size_t cells = game.profile_count();
  for (std::size_t i = 0; i < game.payoffs.size(); ++i) {
    if (game.payoffs[i].size() != cells)
      report.issues.push_back("player " + std::to_string(i) +
                              " payoff tensor has " +
                              std::to_string(game.payoffs[i].size()) +
                              " cells, expected " + std::to_string(cells));
    for (double x : game.payoffs[i])
      if (!std::isfinite(x)) {
        report.issues.push_back("player " + std::to_string(i) +
                                " has a non-finite payoff");
        break;
      }
  }
  return report;
}

}  // namespace fqre
