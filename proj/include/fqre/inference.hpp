#pragma once

#include <optional>
#include <string>

#include "fqre/focality.hpp"
#include "fqre/game.hpp"
#include "fqre/solver.hpp"

namespace fqre {

/// Empirical choice frequencies attached to a game. Entries may be marked
/// unknown (unreported in the source experiment); unknown mass is never
/// imputed in storage.
struct ObservedPlay {
  std::vector<std::vector<double>> freq;   // same shape as a MixedProfile
  std::vector<std::vector<char>> known;    // empty => everything known
  std::vector<long> samples;               // per-player counts; empty => none
  std::string source;

  bool is_known(int player, int strategy) const {
    if (known.empty()) return true;
    return known.at(player).at(strategy) != 0;
  }
};

void require_valid_observation(const Game& game, const ObservedPlay& obs);

/// Fill unknown entries by splitting the unreported probability mass evenly
/// among them (the module's missing-data convention).
MixedProfile completed_frequencies(const Game& game, const ObservedPlay& obs);

/// The lambda that makes the observed log-odds of strategies j over k equal
/// the scaled focal-utility gap, with utilities taken at the observed play of
/// the other players.
double implied_lambda(const Game& game, const ObservedPlay& obs, int player,
                      int strategy_j, int strategy_k, const FocalSpec& spec);

struct LambdaEstimate {
  int player;
  int strategy_j;
  int strategy_k;
  double lambda;
};

struct CalibrationResult {
  std::vector<LambdaEstimate> lambda_estimates;  // per-equation implied values
  double lambda = 0.0;
  double delta = 0.0;  // shared bias, payoff units
  double forward_residual = 0.0;  // sup-norm gap, forward solve vs observed
  bool feasible = false;
  std::string note;
};

/// Solve the per-player log-odds system for (lambda, delta) given the focal
/// sets in `shape`; delta is a single shared unknown unless `fixed_delta` is
/// supplied. Always forward-solves at the estimates when they are finite.
CalibrationResult calibrate(const Game& game, const ObservedPlay& obs,
                            const FocalSpec& shape,
                            std::optional<double> fixed_delta = std::nullopt,
                            const SolverConfig& solver = SolverConfig{});

struct FocalClassification {
  int player;
  int focal_strategy;      // chosen more often despite weakly lower utility
  int nonfocal_strategy;
};

struct IdentificationReport {
  std::vector<FocalClassification> classifications;
  std::vector<std::string> skipped;  // boundary-frequency pairs
};

/// Classify strategy pairs whose frequency ranking contradicts their
/// expected-utility ranking at the observed opposing play.
IdentificationReport identify_focal(const Game& game, const ObservedPlay& obs);

struct StrategyPair {
  int player;
  int high;  // the strategy with the strictly higher expected utility
  int low;
};

struct RejectionVerdict {
  std::string test;
  bool rejected = false;
  std::string witness;
};

/// Log-odds-ratio versus utility-gap-ratio comparison across two players.
/// Fires when the first player's log-odds ratio strictly exceeds the utility
/// ratio, which rules out "neither pair involves focality".
RejectionVerdict cross_player_focality_test(const Game& game,
                                            const ObservedPlay& obs,
                                            const StrategyPair& pair_i,
                                            const StrategyPair& pair_j,
                                            double tolerance = 1e-6);

/// Nonparametric rejection from two matched 2x2 games: p is the first column
/// strategy's frequency, q the first row strategy's.
RejectionVerdict reject_qre_pair(double p, double q, double p2, double q2);
RejectionVerdict reject_qre_pair(const ObservedPlay& obs1,
                                 const ObservedPlay& obs2);

/// Nonparametric rejection from four matched 2x2 games.
RejectionVerdict reject_focal_qre_quad(const double (&p)[4],
                                       const double (&q)[4]);
RejectionVerdict reject_focal_qre_quad(const ObservedPlay& obs1,
                                       const ObservedPlay& obs2,
                                       const ObservedPlay& obs3,
                                       const ObservedPlay& obs4);

struct MleProblem {
  Game game;
  ObservedPlay obs;       // must carry per-player sample counts
  FocalSpec shape;        // focal sets; deltas ignored unless fixed
  bool fix_delta = false; // when set, shape.delta is taken as given
};

struct MleResult {
  std::vector<double> lambda;  // one entry when shared, else per game
  std::vector<double> delta;   // per game
  double log_likelihood = 0.0;
  std::vector<double> per_game_residual;  // equilibrium vs observed, sup-norm
  bool budget_exhausted = false;
};

/// Maximize the multinomial log-likelihood of observed counts under the
/// focal logit equilibrium, with a derivative-free grid-then-refine search.
MleResult mle_fit(const std::vector<MleProblem>& problems, bool share_lambda,
                  const SolverConfig& solver = SolverConfig{});

}  // namespace fqre
