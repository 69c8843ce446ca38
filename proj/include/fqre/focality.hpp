#pragma once

#include "fqre/game.hpp"

namespace fqre {

/// Per-player focal strategy sets and bias magnitudes. An empty focal set, a
/// full focal set, or a zero bias each make the player behave as in a plain
/// quantal response.
struct FocalSpec {
  std::vector<std::vector<int>> focal;  // sorted strategy indices per player
  std::vector<double> delta;            // bias per player, payoff units

  static FocalSpec none(const Game& game) {
    FocalSpec s;
    s.focal.assign(game.players.size(), {});
    s.delta.assign(game.players.size(), 0.0);
    return s;
  }

  bool is_focal(int player, int strategy) const {
    for (int f : focal.at(player))
      if (f == strategy) return true;
    return false;
  }
};

void require_valid_spec(const Game& game, const FocalSpec& spec);

/// Expected utilities with the focal bias added on focal strategies.
UtilityVector focal_utilities(const Game& game, const FocalSpec& spec,
                              const MixedProfile& profile, int player);

/// Worst-case ex-post regret of a pure strategy: the largest payoff advantage
/// any alternative has over it, across all opposing pure profiles.
double max_regret(const Game& game, int player, int strategy);

struct RegretProfile {
  std::vector<double> regret;
  double average = 0.0;
};

RegretProfile regret_profile(const Game& game, int player);

/// Strategies whose worst-case regret is at most beta times the player's
/// average worst-case regret. Single-strategy players are vacuously focal on
/// their whole set.
std::vector<int> regret_focal_set(const Game& game, int player,
                                  double beta = 1.0);

/// Strategies whose alpha-weighted best/worst-case payoff blend is at least
/// the player's average blend.
std::vector<int> hurwicz_focal_set(const Game& game, int player, double alpha);

/// Diagnostic sufficient conditions for regret-focality, reported per
/// strategy. These never replace the direct regret computation; they flag
/// structural reasons a strategy lands in (or out of) the focal set.
struct StrategyDiagnostics {
  bool weakly_dominant = false;        // dominates every alternative
  bool dominates_focal = false;        // weakly dominates some focal strategy
  bool high_peak_payoff = false;       // carries the max payoff, with margin
  bool low_floor_excluded = false;     // carries the min payoff, with margin
  bool secure_floor = false;           // guaranteed payoff beats a blend bound
  bool pointwise_above_average = false;  // beats the column average everywhere
  bool row_sum_rule = false;           // 2x2 average-payoff criterion
  bool in_focal_set = false;           // membership under the direct rule
};

struct DiagnosticsReport {
  std::vector<StrategyDiagnostics> per_strategy;
  bool row_sum_rule_applicable = false;  // only for 2x2 games
};

DiagnosticsReport observation_checks(const Game& game, int player);

}  // namespace fqre
