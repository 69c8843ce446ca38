#pragma once

#include "fqre/focality.hpp"
#include "fqre/game.hpp"

namespace fqre {

struct SolverConfig {
  double lambda = 1.0;       // logit precision
  double damping = 0.5;      // fixed-point step size, in (0, 1]
  double tolerance = 1e-10;  // sup-norm residual target
  int max_iterations = 100000;
  int homotopy_steps = 64;
};

struct EquilibriumResult {
  MixedProfile profile;
  double residual = 0.0;
  int iterations = 0;
  double lambda = 0.0;
  bool converged = false;
};

/// Softmax of lambda-scaled utilities, computed with max-subtraction so any
/// finite input is safe. lambda = 0 yields the uniform vector.
std::vector<double> logit_response(const UtilityVector& utilities,
                                   double lambda);

/// Sup-norm of profile minus the logit response to its focal utilities.
double residual(const Game& game, const FocalSpec& spec, double lambda,
                const MixedProfile& profile);

/// Damped simultaneous fixed-point iteration from the uniform profile.
/// Non-convergence is reported through the result, not thrown.
EquilibriumResult solve(const Game& game, const FocalSpec& spec,
                        const SolverConfig& config);

/// Solve, then retry with geometrically smaller damping (warm-started from
/// the last iterate) if the plain iteration orbits without settling. Large
/// lambda-payoff products destabilize the full-strength update; shrinking the
/// step restores contraction.
EquilibriumResult solve_robust(const Game& game, const FocalSpec& spec,
                               const SolverConfig& config);

/// Same iteration started from a caller-supplied profile (used for
/// continuation warm starts).
EquilibriumResult solve_from(const Game& game, const FocalSpec& spec,
                             const SolverConfig& config,
                             const MixedProfile& start);

/// Solve along a grid of lambda values from 0 to lambda_max, geometric at
/// first and then linear, warm-starting each point from the previous one.
std::vector<EquilibriumResult> trace_lambda_path(const Game& game,
                                                 const FocalSpec& spec,
                                                 double lambda_max,
                                                 const SolverConfig& config);

}  // namespace fqre
