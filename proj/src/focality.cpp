#include "fqre/focality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fqre {

namespace {

// Payoffs of one player arranged as rows (own strategy) by opposing pure
// profiles (columns, in tensor iteration order).
std::vector<std::vector<double>> own_payoff_table(const Game& game,
                                                  int player) {
  const int j_count = game.num_strategies(player);
  std::vector<std::vector<double>> table(j_count);
  for_each_opposing_profile(game, player, [&](std::vector<int>& idx) {
    for (int j = 0; j < j_count; ++j) {
      idx[player] = j;
      table[j].push_back(game.payoff(player, idx));
    }
    idx[player] = 0;
  });
  return table;
}

}  // namespace

void require_valid_spec(const Game& game, const FocalSpec& spec) {
  if (static_cast<int>(spec.focal.size()) != game.num_players() ||
      static_cast<int>(spec.delta.size()) != game.num_players())
    throw std::invalid_argument("focal spec dimensions do not match the game");
  for (int i = 0; i < game.num_players(); ++i) {
    if (spec.delta[i] < 0)
      throw std::invalid_argument("focal bias must be nonnegative");
    for (int f : spec.focal[i])
      if (f < 0 || f >= game.num_strategies(i))
        throw std::invalid_argument("focal strategy index out of range");
  }
}

UtilityVector focal_utilities(const Game& game, const FocalSpec& spec,
                              const MixedProfile& profile, int player) {
  require_valid_spec(game, spec);
  UtilityVector u = expected_utilities(game, profile, player);
  for (int f : spec.focal[player]) u[f] += spec.delta[player];
  return u;
}

double max_regret(const Game& game, int player, int strategy) {
  const int j_count = game.num_strategies(player);
  if (j_count < 2)
    throw std::domain_error(
        "regret is undefined for a player with a single strategy");
  if (strategy < 0 || strategy >= j_count)
    throw std::invalid_argument("strategy index out of range");

  double worst = -std::numeric_limits<double>::infinity();
  for_each_opposing_profile(game, player, [&](std::vector<int>& idx) {
    double best_alternative = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < j_count; ++j) {
      if (j == strategy) continue;
      idx[player] = j;
      best_alternative = std::max(best_alternative, game.payoff(player, idx));
    }
    idx[player] = strategy;
    const double own = game.payoff(player, idx);
    idx[player] = 0;
    worst = std::max(worst, best_alternative - own);
  });
  return worst;
}

RegretProfile regret_profile(const Game& game, int player) {
  RegretProfile rp;
  const int j_count = game.num_strategies(player);
  rp.regret.reserve(j_count);
  for (int j = 0; j < j_count; ++j)
    rp.regret.push_back(max_regret(game, player, j));
  double sum = 0;
  for (double r : rp.regret) sum += r;
  rp.average = sum / j_count;
  return rp;
}

std::vector<int> regret_focal_set(const Game& game, int player, double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must lie in (0, 1]");
  if (game.num_strategies(player) < 2) return {0};
  const RegretProfile rp = regret_profile(game, player);
  std::vector<int> focal;
  for (std::size_t j = 0; j < rp.regret.size(); ++j)
    if (rp.regret[j] <= beta * rp.average) focal.push_back(static_cast<int>(j));
  return focal;
}

std::vector<int> hurwicz_focal_set(const Game& game, int player, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1]");
  const auto table = own_payoff_table(game, player);
  std::vector<double> h;
  h.reserve(table.size());
  for (const auto& row : table) {
    const double hi = *std::max_element(row.begin(), row.end());
    const double lo = *std::min_element(row.begin(), row.end());
    h.push_back(alpha * hi + (1 - alpha) * lo);
  }
  double mean = 0;
  for (double v : h) mean += v;
  mean /= h.size();
  std::vector<int> focal;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (h[j] >= mean) focal.push_back(static_cast<int>(j));
  return focal;
}

DiagnosticsReport observation_checks(const Game& game, int player) {
  const auto table = own_payoff_table(game, player);
  const int j_count = static_cast<int>(table.size());
  const int o_count = static_cast<int>(table[0].size());

  DiagnosticsReport report;
  report.per_strategy.resize(j_count);

  std::vector<int> focal =
      j_count >= 2 ? regret_focal_set(game, player, 1.0) : std::vector<int>{0};
  for (int f : focal) report.per_strategy[f].in_focal_set = true;
  if (j_count < 2) return report;

  // Global extremes of this player's payoffs, with the cell attaining each.
  double umax = -std::numeric_limits<double>::infinity();
  double umin = std::numeric_limits<double>::infinity();
  int max_j = 0, max_o = 0, min_j = 0, min_o = 0;
  for (int j = 0; j < j_count; ++j)
    for (int o = 0; o < o_count; ++o) {
      if (table[j][o] > umax) umax = table[j][o], max_j = j, max_o = o;
      if (table[j][o] < umin) umin = table[j][o], min_j = j, min_o = o;
    }
  double second_max = -std::numeric_limits<double>::infinity();
  double second_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < j_count; ++j)
    for (int o = 0; o < o_count; ++o) {
      if (j != max_j || o != max_o) second_max = std::max(second_max, table[j][o]);
      if (j != min_j || o != min_o) second_min = std::min(second_min, table[j][o]);
    }

  if (umax >= 2 * second_max - umin)
    report.per_strategy[max_j].high_peak_payoff = true;
  if (umin < 2 * second_min - umax)
    report.per_strategy[min_j].low_floor_excluded = true;

  std::vector<double> floors(j_count);
  for (int j = 0; j < j_count; ++j)
    floors[j] = *std::min_element(table[j].begin(), table[j].end());

  for (int s = 0; s < j_count; ++s) {
    auto& d = report.per_strategy[s];

    d.weakly_dominant = true;
    for (int o = 0; o < o_count && d.weakly_dominant; ++o)
      for (int j = 0; j < j_count; ++j)
        if (table[s][o] < table[j][o]) {
          d.weakly_dominant = false;
          break;
        }

    for (int f : focal) {
      if (f == s) continue;
      bool dominates = true;
      for (int o = 0; o < o_count; ++o)
        if (table[s][o] < table[f][o]) {
          dominates = false;
          break;
        }
      if (dominates) {
        d.dominates_focal = true;
        break;
      }
    }

    double other_floor_sum = 0;
    for (int j = 0; j < j_count; ++j)
      if (j != s) other_floor_sum += floors[j];
    d.secure_floor =
        floors[s] >= 0.5 * umax + other_floor_sum / (2.0 * (j_count - 1));

    d.pointwise_above_average = true;
    for (int o = 0; o < o_count; ++o) {
      double others = 0;
      for (int j = 0; j < j_count; ++j)
        if (j != s) others += table[j][o];
      if (table[s][o] < (umax + others) / j_count) {
        d.pointwise_above_average = false;
        break;
      }
    }
  }

  report.row_sum_rule_applicable =
      game.num_players() == 2 && j_count == 2 && o_count == 2;
  if (report.row_sum_rule_applicable) {
    const double sum0 = table[0][0] + table[0][1];
    const double sum1 = table[1][0] + table[1][1];
    report.per_strategy[0].row_sum_rule = sum0 >= sum1;
    report.per_strategy[1].row_sum_rule = sum1 >= sum0;
  }
  return report;
}

}  // namespace fqre
