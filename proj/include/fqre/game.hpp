#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqre {

/// A finite n-player normal-form game. Payoffs are stored densely, one flat
/// tensor per player, with player 0's strategy index varying slowest.
struct Game {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;
  std::vector<std::vector<double>> payoffs;  // payoffs[player][flat profile index]
  std::string name;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_strategies(int player) const {
    return static_cast<int>(strategies.at(player).size());
  }

  std::size_t profile_count() const {
    std::size_t n = 1;
    for (const auto& s : strategies) n *= s.size();
    return n;
  }

  // Strides of the flat tensor: stride of the last player is 1.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(strategies.size(), 1);
    for (int k = static_cast<int>(strategies.size()) - 2; k >= 0; --k)
      st[k] = st[k + 1] * strategies[k + 1].size();
    return st;
  }

  std::size_t flat_index(const std::vector<int>& profile) const {
    const auto st = strides();
    std::size_t idx = 0;
    for (std::size_t k = 0; k < st.size(); ++k) idx += profile[k] * st[k];
    return idx;
  }

  double payoff(int player, const std::vector<int>& profile) const {
    return payoffs.at(player).at(flat_index(profile));
  }

  /// Index of a strategy label for `player`, or -1 when absent.
  int strategy_index(int player, const std::string& label) const {
    const auto& labels = strategies.at(player);
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (labels[j] == label) return static_cast<int>(j);
    return -1;
  }
};

/// One probability vector per player.
using MixedProfile = std::vector<std::vector<double>>;

/// Per-strategy values for a single player.
using UtilityVector = std::vector<double>;

inline constexpr double kSimplexTolerance = 1e-12;

MixedProfile uniform_profile(const Game& game);

bool is_valid_profile(const Game& game, const MixedProfile& profile,
                      double tolerance = kSimplexTolerance);

void require_valid_profile(const Game& game, const MixedProfile& profile);

/// Visit every pure profile of the players other than `player`. The callback
/// receives a full index vector whose entry for `player` is left at 0; the
/// callback may overwrite that entry freely.
template <typename Fn>
void for_each_opposing_profile(const Game& game, int player, Fn&& fn) {
  const int n = game.num_players();
  std::vector<int> profile(n, 0);
  while (true) {
    fn(profile);
    int k = n - 1;
    for (; k >= 0; --k) {
      if (k == player) continue;
      profile[k]++;
      if (profile[k] < game.num_strategies(k)) break;
      profile[k] = 0;
    }
    if (k < 0) return;
  }
}

/// Expected payoff of each of `player`'s pure strategies against the mixed
/// play of everyone else.
UtilityVector expected_utilities(const Game& game, const MixedProfile& profile,
                                 int player);

/// Expected payoff of `player` when everyone mixes according to `profile`.
double profile_payoff(const Game& game, const MixedProfile& profile, int player);

/// Apply the power transform x -> x^gamma to every payoff (risk curvature).
/// Negative payoffs are only admitted for integer exponents.
Game transform_payoffs(const Game& game, double gamma);

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const Game& game);

}  // namespace fqre
