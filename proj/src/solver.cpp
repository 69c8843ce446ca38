#include "fqre/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fqre {

std::vector<double> logit_response(const UtilityVector& utilities,
                                   double lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  for (double u : utilities)
    if (!std::isfinite(u))
      throw std::invalid_argument("utilities must be finite");

  std::vector<double> z(utilities.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < utilities.size(); ++j) {
    z[j] = lambda * utilities[j];
    top = std::max(top, z[j]);
  }
  double sum = 0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return z;
}

double residual(const Game& game, const FocalSpec& spec, double lambda,
                const MixedProfile& profile) {
  require_valid_profile(game, profile);
  double worst = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    const auto response =
        logit_response(focal_utilities(game, spec, profile, i), lambda);
    for (std::size_t j = 0; j < response.size(); ++j)
      worst = std::max(worst, std::abs(profile[i][j] - response[j]));
  }
  return worst;
}

EquilibriumResult solve_from(const Game& game, const FocalSpec& spec,
                             const SolverConfig& config,
                             const MixedProfile& start) {
  if (!(config.damping > 0 && config.damping <= 1))
    throw std::invalid_argument("damping must lie in (0, 1]");
  if (config.lambda < 0)
    throw std::invalid_argument("lambda must be nonnegative");
  require_valid_spec(game, spec);
  require_valid_profile(game, start);

  MixedProfile profile = start;
  EquilibriumResult result;
  result.lambda = config.lambda;

  for (int it = 1; it <= config.max_iterations; ++it) {
    MixedProfile response(game.num_players());
    double r = 0;
    for (int i = 0; i < game.num_players(); ++i) {
      response[i] = logit_response(focal_utilities(game, spec, profile, i),
                                   config.lambda);
      for (std::size_t j = 0; j < response[i].size(); ++j)
        r = std::max(r, std::abs(profile[i][j] - response[i][j]));
    }
    result.iterations = it;
    result.residual = r;
    if (r <= config.tolerance) {
      result.converged = true;
      break;
    }
    for (int i = 0; i < game.num_players(); ++i) {
      double sum = 0;
      for (std::size_t j = 0; j < profile[i].size(); ++j) {
        profile[i][j] += config.damping * (response[i][j] - profile[i][j]);
        sum += profile[i][j];
      }
      for (double& v : profile[i]) v /= sum;  // guard against drift
    }
  }
  result.profile = std::move(profile);
  return result;
}

EquilibriumResult solve(const Game& game, const FocalSpec& spec,
                        const SolverConfig& config) {
  return solve_from(game, spec, config, uniform_profile(game));
}

EquilibriumResult solve_robust(const Game& game, const FocalSpec& spec,
                               const SolverConfig& config) {
  EquilibriumResult result = solve(game, spec, config);
  SolverConfig retry = config;
  MixedProfile start = result.profile;
  while (!result.converged && retry.damping > 1e-4) {
    retry.damping /= 4;
    result = solve_from(game, spec, retry, start);
    start = result.profile;
  }
  return result;
}

std::vector<EquilibriumResult> trace_lambda_path(const Game& game,
                                                 const FocalSpec& spec,
                                                 double lambda_max,
                                                 const SolverConfig& config) {
  if (lambda_max < 0)
    throw std::invalid_argument("lambda_max must be nonnegative");
  if (config.homotopy_steps < 1)
    throw std::invalid_argument("homotopy_steps must be positive");

  std::vector<double> grid{0.0};
  if (lambda_max > 0) {
    const int geometric = std::max(1, config.homotopy_steps / 2);
    const int linear = std::max(1, config.homotopy_steps - geometric);
    for (int k = 1; k <= geometric; ++k)
      grid.push_back(0.5 * lambda_max *
                     std::pow(0.01, double(geometric - k) / geometric));
    for (int k = 1; k <= linear; ++k)
      grid.push_back(lambda_max * (0.5 + 0.5 * k / linear));
  }

  std::vector<EquilibriumResult> path;
  path.reserve(grid.size());
  MixedProfile warm = uniform_profile(game);
  for (double lam : grid) {
    SolverConfig point = config;
    point.lambda = lam;
    EquilibriumResult res = solve_from(game, spec, point, warm);
    warm = res.profile;
    path.push_back(std::move(res));
  }
  return path;
}

}  // namespace fqre
