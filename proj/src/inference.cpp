#include "fqre/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fqre {

namespace {

constexpr double kTiny = 1e-12;

bool interior(double f) { return f > 0.0 && f < 1.0; }

std::string strategy_name(const Game& game, int player, int j) {
  return game.strategies[player][j];
}

// One log-odds equation: lhs = lambda * (gap + indicator * delta).
struct LogOddsEquation {
  int player;
  int j;  // numerator strategy
  int k;  // denominator strategy
  double lhs;
  double gap;     // focal-free utility difference u_j - u_k
  int indicator;  // focal indicator difference, in {-1, 0, 1}
};

std::vector<LogOddsEquation> build_equations(const Game& game,
                                             const ObservedPlay& obs,
                                             const FocalSpec& shape) {
  const MixedProfile completed = completed_frequencies(game, obs);
  std::vector<LogOddsEquation> eqs;
  for (int i = 0; i < game.num_players(); ++i) {
    const UtilityVector u = expected_utilities(game, completed, i);
    int ref = -1;
    for (int j = 0; j < game.num_strategies(i); ++j) {
      if (!obs.is_known(i, j) || !interior(obs.freq[i][j])) continue;
      if (ref < 0) {
        ref = j;
        continue;
      }
      LogOddsEquation eq;
      eq.player = i;
      eq.j = ref;
      eq.k = j;
      eq.lhs = std::log(obs.freq[i][ref] / obs.freq[i][j]);
      eq.gap = u[ref] - u[j];
      eq.indicator = (shape.is_focal(i, ref) ? 1 : 0) -
                     (shape.is_focal(i, j) ? 1 : 0);
      eqs.push_back(eq);
    }
  }
  return eqs;
}

}  // namespace

void require_valid_observation(const Game& game, const ObservedPlay& obs) {
  if (static_cast<int>(obs.freq.size()) != game.num_players())
    throw std::invalid_argument("observation shape does not match the game");
  for (int i = 0; i < game.num_players(); ++i) {
    if (static_cast<int>(obs.freq[i].size()) != game.num_strategies(i))
      throw std::invalid_argument("observation shape does not match the game");
    double known_mass = 0;
    bool all_known = true;
    for (int j = 0; j < game.num_strategies(i); ++j) {
      if (!obs.is_known(i, j)) {
        all_known = false;
        continue;
      }
      const double f = obs.freq[i][j];
      if (!(f >= 0.0 && f <= 1.0 + kTiny))
        throw std::invalid_argument("frequency outside [0, 1]");
      known_mass += f;
    }
    if (all_known && std::abs(known_mass - 1.0) > 1e-6)
      throw std::invalid_argument("frequencies do not sum to one");
    if (!all_known && known_mass > 1.0 + 1e-6)
      throw std::invalid_argument("known frequencies exceed one");
  }
}

MixedProfile completed_frequencies(const Game& game, const ObservedPlay& obs) {
  require_valid_observation(game, obs);
  MixedProfile out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i].assign(game.num_strategies(i), 0.0);
    double known_mass = 0;
    int unknown = 0;
    for (int j = 0; j < game.num_strategies(i); ++j) {
      if (obs.is_known(i, j)) {
        out[i][j] = obs.freq[i][j];
        known_mass += obs.freq[i][j];
      } else {
        ++unknown;
      }
    }
    if (unknown > 0) {
      const double share = std::max(0.0, 1.0 - known_mass) / unknown;
      for (int j = 0; j < game.num_strategies(i); ++j)
        if (!obs.is_known(i, j)) out[i][j] = share;
    } else {
      for (double& v : out[i]) v /= known_mass;
    }
  }
  return out;
}

double implied_lambda(const Game& game, const ObservedPlay& obs, int player,
                      int strategy_j, int strategy_k, const FocalSpec& spec) {
  require_valid_observation(game, obs);
  require_valid_spec(game, spec);
  if (!obs.is_known(player, strategy_j) || !obs.is_known(player, strategy_k) ||
      !interior(obs.freq[player][strategy_j]) ||
      !interior(obs.freq[player][strategy_k]))
    throw std::domain_error(
        "log-odds need both frequencies strictly inside (0, 1)");

  const MixedProfile completed = completed_frequencies(game, obs);
  const UtilityVector u = focal_utilities(game, spec, completed, player);
  const double gap = u[strategy_j] - u[strategy_k];
  if (std::abs(gap) < kTiny)
    throw std::domain_error("zero focal-utility gap: lambda is indeterminate");
  return std::log(obs.freq[player][strategy_j] /
                  obs.freq[player][strategy_k]) /
         gap;
}

CalibrationResult calibrate(const Game& game, const ObservedPlay& obs,
                            const FocalSpec& shape,
                            std::optional<double> fixed_delta,
                            const SolverConfig& solver) {
  require_valid_spec(game, shape);
  const auto eqs = build_equations(game, obs, shape);
  CalibrationResult result;
  if (eqs.empty()) {
    result.note = "no interior frequencies: nothing to calibrate";
    return result;
  }

  double lambda = 0, delta = 0;
  if (fixed_delta) {
    delta = *fixed_delta;
    // Single unknown: least squares of lhs = lambda * d over the equations.
    double num = 0, den = 0;
    for (const auto& eq : eqs) {
      const double d = eq.gap + eq.indicator * delta;
      num += eq.lhs * d;
      den += d * d;
    }
    lambda = den > 0 ? num / den : 0.0;
  } else {
    // lhs = lambda * gap + mu * indicator is linear in (lambda, mu), with
    // mu = lambda * delta. Normal equations of the least-squares fit.
    double saa = 0, sac = 0, scc = 0, sla = 0, slc = 0;
    bool any_indicator = false;
    for (const auto& eq : eqs) {
      saa += eq.gap * eq.gap;
      sac += eq.gap * eq.indicator;
      scc += double(eq.indicator) * eq.indicator;
      sla += eq.lhs * eq.gap;
      slc += eq.lhs * eq.indicator;
      any_indicator = any_indicator || eq.indicator != 0;
    }
    if (!any_indicator) {
      result.note =
          "focal sets do not separate any observed pair; fitting lambda with "
          "delta pinned to zero";
      return calibrate(game, obs, shape, 0.0, solver);
    }
    const double det = saa * scc - sac * sac;
    if (std::abs(det) < kTiny) {
      result.note = "log-odds system is degenerate";
      return result;
    }
    lambda = (sla * scc - slc * sac) / det;
    const double mu = (saa * slc - sac * sla) / det;
    delta = std::abs(lambda) > kTiny
                ? mu / lambda
                : std::numeric_limits<double>::quiet_NaN();
  }

  bool feasible = std::isfinite(lambda) && std::isfinite(delta) &&
                  lambda >= -kTiny && delta >= -kTiny;
  std::ostringstream note;
  for (const auto& eq : eqs) {
    const double d = eq.gap + eq.indicator * delta;
    LambdaEstimate est{eq.player, eq.j, eq.k,
                       std::abs(d) > kTiny
                           ? eq.lhs / d
                           : std::numeric_limits<double>::quiet_NaN()};
    result.lambda_estimates.push_back(est);
    if (!std::isfinite(est.lambda) || est.lambda < -1e-9) {
      feasible = false;
      note << "player " << eq.player << " log-odds of "
           << strategy_name(game, eq.player, eq.j) << " over "
           << strategy_name(game, eq.player, eq.k)
           << " has the wrong sign for any nonnegative lambda; ";
    }
  }

  result.lambda = std::max(lambda, 0.0);
  result.delta = std::isfinite(delta) ? std::max(delta, 0.0) : delta;
  result.feasible = feasible;
  if (!feasible && note.str().empty())
    note << "no nonnegative (lambda, delta) fits the log-odds system";
  result.note = note.str();

  if (std::isfinite(result.lambda) && std::isfinite(result.delta)) {
    FocalSpec spec = shape;
    for (double& d : spec.delta) d = result.delta;
    SolverConfig config = solver;
    config.lambda = result.lambda;
    const EquilibriumResult eq = solve_robust(game, spec, config);
    double gap = 0;
    for (int i = 0; i < game.num_players(); ++i)
      for (int j = 0; j < game.num_strategies(i); ++j)
        if (obs.is_known(i, j))
          gap = std::max(gap, std::abs(eq.profile[i][j] - obs.freq[i][j]));
    result.forward_residual = gap;
  }
  return result;
}

IdentificationReport identify_focal(const Game& game, const ObservedPlay& obs) {
  require_valid_observation(game, obs);
  const MixedProfile completed = completed_frequencies(game, obs);
  IdentificationReport report;
  for (int i = 0; i < game.num_players(); ++i) {
    const UtilityVector u = expected_utilities(game, completed, i);
    for (int s = 0; s < game.num_strategies(i); ++s) {
      for (int t = 0; t < game.num_strategies(i); ++t) {
        if (s == t) continue;
        if (!obs.is_known(i, s) || !obs.is_known(i, t) ||
            !interior(obs.freq[i][s]) || !interior(obs.freq[i][t])) {
          if (s < t)
            report.skipped.push_back(
                "player " + std::to_string(i) + " pair (" +
                strategy_name(game, i, s) + ", " + strategy_name(game, i, t) +
                "): boundary or unreported frequency");
          continue;
        }
        if (obs.freq[i][s] > obs.freq[i][t] && u[s] <= u[t])
          report.classifications.push_back({i, s, t});
      }
    }
  }
  return report;
}

RejectionVerdict cross_player_focality_test(const Game& game,
                                            const ObservedPlay& obs,
                                            const StrategyPair& pair_i,
                                            const StrategyPair& pair_j,
                                            double tolerance) {
  require_valid_observation(game, obs);
  const MixedProfile completed = completed_frequencies(game, obs);
  const UtilityVector ui = expected_utilities(game, completed, pair_i.player);
  const UtilityVector uj = expected_utilities(game, completed, pair_j.player);
  const double gap_i = ui[pair_i.high] - ui[pair_i.low];
  const double gap_j = uj[pair_j.high] - uj[pair_j.low];
  if (!(gap_i > 0) || !(gap_j > 0))
    throw std::invalid_argument(
        "both utility gaps must be strictly positive for the cross-player "
        "test");
  for (const auto& pr : {pair_i, pair_j})
    for (int s : {pr.high, pr.low})
      if (!obs.is_known(pr.player, s) || !interior(obs.freq[pr.player][s]))
        throw std::domain_error("all four frequencies must be interior");

  const double lo_i = std::log(obs.freq[pair_i.player][pair_i.high] /
                               obs.freq[pair_i.player][pair_i.low]);
  const double lo_j = std::log(obs.freq[pair_j.player][pair_j.high] /
                               obs.freq[pair_j.player][pair_j.low]);
  if (std::abs(lo_j) < kTiny)
    throw std::domain_error("zero log-odds in the denominator pair");

  RejectionVerdict verdict;
  verdict.test = "cross_player_focality";
  verdict.rejected = lo_i / lo_j > gap_i / gap_j + tolerance;
  if (verdict.rejected) {
    std::ostringstream w;
    w << "log-odds ratio " << lo_i / lo_j << " exceeds utility-gap ratio "
      << gap_i / gap_j << ": either "
      << strategy_name(game, pair_i.player, pair_i.high) << " is focal and "
      << strategy_name(game, pair_i.player, pair_i.low)
      << " is not, or " << strategy_name(game, pair_j.player, pair_j.low)
      << " is focal and " << strategy_name(game, pair_j.player, pair_j.high)
      << " is not";
    verdict.witness = w.str();
  }
  return verdict;
}

RejectionVerdict reject_qre_pair(double p, double q, double p2, double q2) {
  RejectionVerdict verdict;
  verdict.test = "reject_qre_pair";
  verdict.rejected = p < p2 && q <= q2;
  if (verdict.rejected) {
    std::ostringstream w;
    w << "p=" << p << " < p'=" << p2 << " while q=" << q << " <= q'=" << q2
      << ": with q <= q', the first game's column utility gap is weakly "
         "larger, so a monotone response requires p >= p'";
    verdict.witness = w.str();
  }
  return verdict;
}

namespace {

// Table-shaped 2x2 convention: q is the first row strategy's frequency, p the
// first column strategy's.
std::pair<double, double> pq_of(const ObservedPlay& obs) {
  if (obs.freq.size() != 2 || obs.freq[0].size() != 2 ||
      obs.freq[1].size() != 2)
    throw std::invalid_argument("rejection tests need matched 2x2 games");
  return {obs.freq[1][0], obs.freq[0][0]};
}

}  // namespace

RejectionVerdict reject_qre_pair(const ObservedPlay& obs1,
                                 const ObservedPlay& obs2) {
  const auto [p, q] = pq_of(obs1);
  const auto [p2, q2] = pq_of(obs2);
  return reject_qre_pair(p, q, p2, q2);
}

RejectionVerdict reject_focal_qre_quad(const double (&p)[4],
                                       const double (&q)[4]) {
  RejectionVerdict verdict;
  verdict.test = "reject_focal_qre_quad";
  const bool q_chain = q[0] <= q[1] && q[1] <= q[2] && q[2] <= q[3];
  const bool p_chain = p[0] < p[1] && p[1] < p[2] && p[2] < p[3];
  verdict.rejected = q_chain && p_chain;
  if (verdict.rejected) {
    std::ostringstream w;
    w << "q weakly increasing (" << q[0] << " <= " << q[1] << " <= " << q[2]
      << " <= " << q[3] << ") while p strictly increasing (" << p[0] << " < "
      << p[1] << " < " << p[2] << " < " << p[3] << ")";
    verdict.witness = w.str();
  }
  return verdict;
}

RejectionVerdict reject_focal_qre_quad(const ObservedPlay& obs1,
                                       const ObservedPlay& obs2,
                                       const ObservedPlay& obs3,
                                       const ObservedPlay& obs4) {
  double p[4], q[4];
  const ObservedPlay* all[4] = {&obs1, &obs2, &obs3, &obs4};
  for (int i = 0; i < 4; ++i) std::tie(p[i], q[i]) = pq_of(*all[i]);
  return reject_focal_qre_quad(p, q);
}

namespace {

double log_likelihood_one(const Game& game, const ObservedPlay& obs,
                          const FocalSpec& shape, double lambda, double delta,
                          const SolverConfig& solver, double* residual_out,
                          bool* converged) {
  FocalSpec spec = shape;
  for (double& d : spec.delta) d = delta;
  SolverConfig config = solver;
  config.lambda = lambda;
  const EquilibriumResult eq = solve_robust(game, spec, config);
  if (converged && !eq.converged) *converged = false;
  double ll = 0, gap = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    const double n = obs.samples.empty() ? 1.0 : double(obs.samples[i]);
    for (int j = 0; j < game.num_strategies(i); ++j) {
      if (!obs.is_known(i, j)) continue;
      const double pi = std::max(eq.profile[i][j], 1e-300);
      ll += n * obs.freq[i][j] * std::log(pi);
      gap = std::max(gap, std::abs(eq.profile[i][j] - obs.freq[i][j]));
    }
  }
  if (residual_out) *residual_out = gap;
  return ll;
}

// Best delta for one game at a fixed lambda, grid search with refinement.
double best_delta(const Game& game, const ObservedPlay& obs,
                  const FocalSpec& shape, double lambda,
                  const SolverConfig& solver, bool* converged) {
  double lo = 0, hi = 10, best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 3; ++round) {
    const int points = round == 0 ? 41 : 21;
    for (int k = 0; k < points; ++k) {
      const double d = lo + (hi - lo) * k / (points - 1);
      const double ll = log_likelihood_one(game, obs, shape, lambda, d, solver,
                                           nullptr, converged);
      if (ll > best_ll) best_ll = ll, best = d;
    }
    const double span = (hi - lo) / (round == 0 ? 40 : 20);
    lo = std::max(0.0, best - span);
    hi = best + span;
  }
  return best;
}

}  // namespace

MleResult mle_fit(const std::vector<MleProblem>& problems, bool share_lambda,
                  const SolverConfig& solver) {
  if (problems.empty()) throw std::invalid_argument("no games to fit");
  for (const auto& p : problems) {
    require_valid_spec(p.game, p.shape);
    require_valid_observation(p.game, p.obs);
    if (p.obs.samples.empty())
      throw std::invalid_argument("likelihood fitting needs sample counts");
  }

  // The likelihood surface is insensitive below the grid resolution; cheaper
  // inner solves keep the nested search fast.
  SolverConfig inner = solver;
  inner.tolerance = std::max(solver.tolerance, 1e-8);
  inner.max_iterations = std::min(solver.max_iterations, 20000);

  MleResult result;
  bool converged = true;

  auto fit_group = [&](const std::vector<const MleProblem*>& group) {
    double lo = 0, hi = 4, best_lambda = 0;
    std::vector<double> best_deltas(group.size(), 0.0);
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int round = 0; round < 3; ++round) {
      const int points = round == 0 ? 81 : 21;
      for (int k = 0; k < points; ++k) {
        const double lam = lo + (hi - lo) * k / (points - 1);
        double ll = 0;
        std::vector<double> deltas(group.size(), 0.0);
        for (std::size_t g = 0; g < group.size(); ++g) {
          const MleProblem& p = *group[g];
          bool free_delta = !p.fix_delta;
          if (free_delta) {
            bool proper = false;
            for (int i = 0; i < p.game.num_players(); ++i)
              proper = proper ||
                       (!p.shape.focal[i].empty() &&
                        static_cast<int>(p.shape.focal[i].size()) <
                            p.game.num_strategies(i));
            free_delta = proper;
          }
          deltas[g] = free_delta ? best_delta(p.game, p.obs, p.shape, lam,
                                              inner, &converged)
                                 : (p.fix_delta ? p.shape.delta[0] : 0.0);
          ll += log_likelihood_one(p.game, p.obs, p.shape, lam, deltas[g],
                                   inner, nullptr, &converged);
        }
        if (ll > best_ll) {
          best_ll = ll;
          best_lambda = lam;
          best_deltas = deltas;
        }
      }
      const double span = (hi - lo) / (round == 0 ? 80 : 20);
      lo = std::max(0.0, best_lambda - span);
      hi = best_lambda + span;
    }
    return std::make_tuple(best_lambda, best_deltas, best_ll);
  };

  if (share_lambda) {
    std::vector<const MleProblem*> group;
    for (const auto& p : problems) group.push_back(&p);
    auto [lam, deltas, ll] = fit_group(group);
    result.lambda = {lam};
    result.delta = deltas;
    result.log_likelihood = ll;
    result.per_game_residual.resize(problems.size());
    for (std::size_t g = 0; g < problems.size(); ++g)
      log_likelihood_one(problems[g].game, problems[g].obs, problems[g].shape,
                         lam, deltas[g], solver, &result.per_game_residual[g],
                         nullptr);
  } else {
    result.log_likelihood = 0;
    result.per_game_residual.resize(problems.size());
    for (std::size_t g = 0; g < problems.size(); ++g) {
      auto [lam, deltas, ll] = fit_group({&problems[g]});
      result.lambda.push_back(lam);
      result.delta.push_back(deltas[0]);
      result.log_likelihood += ll;
      log_likelihood_one(problems[g].game, problems[g].obs, problems[g].shape,
                         lam, deltas[0], solver, &result.per_game_residual[g],
                         nullptr);
    }
  }
  result.budget_exhausted = !converged;
  return result;
}

}  // namespace fqre
