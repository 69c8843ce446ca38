#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fqre/dataset.hpp"
#include "fqre/inference.hpp"

using namespace fqre;

namespace {

ObservedPlay obs2(std::vector<double> row, std::vector<double> col) {
  ObservedPlay obs;
  obs.freq = {std::move(row), std::move(col)};
  return obs;
}

}  // namespace

TEST_CASE("observation validation and missing-mass completion") {
  const Game g = builtin("coord-outside1").game;
  ObservedPlay obs;
  obs.freq = {{0.04, 0.96}, {0.0, 0.84, 0.0}};
  obs.known = {{1, 1}, {0, 1, 0}};
  const MixedProfile completed = completed_frequencies(g, obs);
  CHECK(completed[0][0] == doctest::Approx(0.04));
  CHECK(completed[1][0] == doctest::Approx(0.08));  // even split of 0.16
  CHECK(completed[1][1] == doctest::Approx(0.84));
  CHECK(completed[1][2] == doctest::Approx(0.08));

  ObservedPlay bad = obs;
  bad.freq[0] = {0.5, 0.4};
  bad.known.clear();
  CHECK_THROWS_AS(completed_frequencies(g, bad), std::invalid_argument);

  ObservedPlay wrong_shape;
  wrong_shape.freq = {{1.0, 0.0}};
  CHECK_THROWS_AS(require_valid_observation(g, wrong_shape),
                  std::invalid_argument);
}

TEST_CASE("implied precision: frozen matching-pennies values") {
  const Fixture g2 = builtin("gh-mp-asym1");
  const Fixture g3 = builtin("gh-mp-asym2");
  const double l2 =
      implied_lambda(g2.game, *g2.observed, 1, 0, 1, FocalSpec::none(g2.game));
  CHECK(l2 == doctest::Approx(0.4506055).epsilon(1e-6));
  const double l3 =
      implied_lambda(g3.game, *g3.observed, 1, 0, 1, FocalSpec::none(g3.game));
  CHECK(l3 == doctest::Approx(0.4125876).epsilon(1e-6));

  // Equal frequencies mean zero log-odds, hence zero precision.
  const double flat = implied_lambda(g2.game, obs2({0.5, 0.5}, {0.16, 0.84}),
                                     0, 0, 1, FocalSpec::none(g2.game));
  CHECK(flat == 0.0);

  CHECK_THROWS_AS(implied_lambda(g2.game, obs2({1.0, 0.0}, {0.16, 0.84}), 0, 0,
                                 1, FocalSpec::none(g2.game)),
                  std::domain_error);
}

TEST_CASE("implied precision ignores payoff translations") {
  const Fixture g3 = builtin("gh-mp-asym2");
  Game shifted = g3.game;
  for (double& v : shifted.payoffs[1]) v += 42.0;
  const double a =
      implied_lambda(g3.game, *g3.observed, 1, 0, 1, FocalSpec::none(g3.game));
  const double b =
      implied_lambda(shifted, *g3.observed, 1, 0, 1, FocalSpec::none(shifted));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("calibration: low-reward pennies with a focal row") {
  const Fixture g3 = builtin("gh-mp-asym2");
  FocalSpec shape = FocalSpec::none(g3.game);
  shape.focal[0] = {1};  // D
  const CalibrationResult cal = calibrate(g3.game, *g3.observed, shape);
  REQUIRE(cal.feasible);
  CHECK(cal.lambda == doctest::Approx(0.4125876).epsilon(1e-5));
  CHECK(cal.delta == doctest::Approx(5.4395).epsilon(1e-3));
  CHECK(cal.forward_residual < 0.01);
}

TEST_CASE("calibration: two-sided focal game closed form") {
  const Fixture m1 = builtin("m1");
  FocalSpec shape = FocalSpec::none(m1.game);
  shape.focal[0] = {0};
  shape.focal[1] = {1};
  const CalibrationResult cal = calibrate(m1.game, *m1.observed, shape);
  REQUIRE(cal.feasible);
  CHECK(cal.lambda == doctest::Approx(0.66533).epsilon(1e-4));
  CHECK(cal.delta == doctest::Approx(1.22363).epsilon(1e-4));
  CHECK(cal.forward_residual < 1e-6);

  // Pinning the bias at zero leaves a negative implied precision: infeasible.
  const CalibrationResult fixed = calibrate(m1.game, *m1.observed, shape, 0.0);
  CHECK_FALSE(fixed.feasible);
  CHECK_FALSE(fixed.note.empty());
}

TEST_CASE("calibration with empty focal sets degrades to a plain fit") {
  const Fixture g1 = builtin("gh-mp-sym");
  const CalibrationResult cal =
      calibrate(g1.game, *g1.observed, FocalSpec::none(g1.game));
  CHECK(cal.delta == 0.0);
  CHECK_FALSE(cal.note.empty());  // documents the pinned bias
}

TEST_CASE("focal identification from frequency-utility reversals") {
  const Fixture g5 = builtin("ad-g5");
  const IdentificationReport r5 = identify_focal(g5.game, *g5.observed);
  bool found = false;
  for (const auto& c : r5.classifications)
    found = found || (c.player == 0 && c.focal_strategy == 0);
  CHECK(found);

  const Fixture m1 = builtin("m1");
  const IdentificationReport rm = identify_focal(m1.game, *m1.observed);
  found = false;
  for (const auto& c : rm.classifications)
    found = found || (c.player == 0 && c.focal_strategy == 0);
  CHECK(found);

  // Aligned rankings are uninformative.
  const Game g2 = builtin("gh-mp-asym1").game;
  const IdentificationReport aligned =
      identify_focal(g2, obs2({0.9, 0.1}, {0.9, 0.1}));
  for (const auto& c : aligned.classifications) CHECK(c.player != 0);

  // Boundary frequencies are skipped, not classified.
  const Fixture kb = builtin("kreps-baseline");
  const IdentificationReport rk = identify_focal(kb.game, *kb.observed);
  CHECK_FALSE(rk.skipped.empty());
}

TEST_CASE("cross-player ratio test on simulated biased play") {
  const Game g2 = builtin("gh-mp-asym1").game;
  FocalSpec spec = FocalSpec::none(g2);
  spec.focal[0] = {0};
  spec.delta[0] = 1.5;
  SolverConfig config;
  config.lambda = 0.45;
  config.tolerance = 1e-12;
  const EquilibriumResult eq = solve(g2, spec, config);
  REQUIRE(eq.converged);
  ObservedPlay obs;
  obs.freq = eq.profile;

  const UtilityVector ur = expected_utilities(g2, eq.profile, 0);
  const UtilityVector uc = expected_utilities(g2, eq.profile, 1);
  const StrategyPair row{0, ur[0] > ur[1] ? 0 : 1, ur[0] > ur[1] ? 1 : 0};
  const StrategyPair col{1, uc[0] > uc[1] ? 0 : 1, uc[0] > uc[1] ? 1 : 0};
  const RejectionVerdict fired =
      cross_player_focality_test(g2, obs, row, col);
  CHECK(fired.rejected);
  CHECK_FALSE(fired.witness.empty());

  // Without bias the two ratios agree and nothing fires.
  spec.delta[0] = 0.0;
  const EquilibriumResult plain = solve(g2, spec, config);
  ObservedPlay obs0;
  obs0.freq = plain.profile;
  const UtilityVector ur0 = expected_utilities(g2, plain.profile, 0);
  const UtilityVector uc0 = expected_utilities(g2, plain.profile, 1);
  const StrategyPair row0{0, ur0[0] > ur0[1] ? 0 : 1, ur0[0] > ur0[1] ? 1 : 0};
  const StrategyPair col0{1, uc0[0] > uc0[1] ? 0 : 1, uc0[0] > uc0[1] ? 1 : 0};
  CHECK_FALSE(cross_player_focality_test(g2, obs0, row0, col0).rejected);

  // Nonpositive utility gaps violate the preconditions.
  CHECK_THROWS_AS(
      cross_player_focality_test(g2, obs, {0, row.low, row.high}, col),
      std::invalid_argument);
}

TEST_CASE("two-game rejection pattern") {
  CHECK(reject_qre_pair(0.4, 0.3, 0.5, 0.3).rejected);
  CHECK_FALSE(reject_qre_pair(0.5, 0.3, 0.4, 0.4).rejected);
  CHECK_FALSE(reject_qre_pair(0.4, 0.3, 0.4, 0.3).rejected);  // needs p < p'
  CHECK(reject_qre_pair(0.4, 0.3, 0.5, 0.4).rejected);
  CHECK_FALSE(reject_qre_pair(0.4, 0.4, 0.5, 0.3).rejected);  // q decreased
  const RejectionVerdict v = reject_qre_pair(0.4, 0.3, 0.5, 0.3);
  CHECK_FALSE(v.witness.empty());
}

TEST_CASE("four-game rejection pattern") {
  const double q_ok[4] = {0.3, 0.3, 0.4, 0.5};
  const double p_ok[4] = {0.1, 0.2, 0.3, 0.4};
  CHECK(reject_focal_qre_quad(p_ok, q_ok).rejected);

  const double p_tie[4] = {0.1, 0.2, 0.2, 0.4};  // strictness broken
  CHECK_FALSE(reject_focal_qre_quad(p_tie, q_ok).rejected);

  const double q_dip[4] = {0.3, 0.28, 0.4, 0.5};
  CHECK_FALSE(reject_focal_qre_quad(p_ok, q_dip).rejected);
}

TEST_CASE("rejection patterns accept matched 2x2 observations") {
  const Game g = builtin("qre-reject-g1").game;
  ObservedPlay a = obs2({0.3, 0.7}, {0.4, 0.6});
  ObservedPlay b = obs2({0.3, 0.7}, {0.5, 0.5});
  CHECK(reject_qre_pair(a, b).rejected);
  ObservedPlay c = obs2({0.4, 0.6}, {0.6, 0.4});
  ObservedPlay d = obs2({0.5, 0.5}, {0.7, 0.3});
  CHECK(reject_focal_qre_quad(a, b, c, d).rejected);
}

TEST_CASE("likelihood fit recovers generating parameters") {
  // Noiseless counts at a plain logit equilibrium: the precision comes back
  // at grid resolution.
  const Game g1 = builtin("gh-mp-sym").game;
  const Game g2 = builtin("gh-mp-asym1").game;
  SolverConfig config;
  config.lambda = 0.8;
  const EquilibriumResult eq = solve_robust(g2, FocalSpec::none(g2), config);
  REQUIRE(eq.converged);
  MleProblem plain;
  plain.game = g2;
  plain.obs.freq = eq.profile;
  plain.obs.samples = {10000, 10000};
  plain.shape = FocalSpec::none(g2);
  plain.fix_delta = true;
  const MleResult fit = mle_fit({plain}, true);
  REQUIRE(fit.lambda.size() == 1);
  CHECK(fit.lambda[0] == doctest::Approx(0.8).epsilon(0.01));
  CHECK(fit.per_game_residual[0] < 0.01);
}

TEST_CASE("likelihood fit recovers a planted focal bias") {
  const Fixture g3 = builtin("gh-mp-asym2");
  FocalSpec spec = FocalSpec::none(g3.game);
  spec.focal[0] = {1};
  spec.delta[0] = 5.4;
  SolverConfig config;
  config.lambda = 0.41;
  config.tolerance = 1e-12;
  const EquilibriumResult eq = solve(g3.game, spec, config);
  REQUIRE(eq.converged);
  MleProblem prob;
  prob.game = g3.game;
  prob.obs.freq = eq.profile;
  prob.obs.samples = {10000, 10000};
  prob.shape = FocalSpec::none(g3.game);
  prob.shape.focal[0] = {1};
  const MleResult fit = mle_fit({prob}, true);
  CHECK(std::abs(fit.lambda[0] - 0.41) <= 0.05);
  CHECK(std::abs(fit.delta[0] - 5.4) <= 0.5);
}

TEST_CASE("joint fit brackets the per-game calibrations") {
  const Fixture g2 = builtin("gh-mp-asym1");
  const Fixture g3 = builtin("gh-mp-asym2");
  MleProblem p2;
  p2.game = g2.game;
  p2.obs = *g2.observed;
  p2.obs.samples = {1000, 1000};
  p2.shape = FocalSpec::none(g2.game);
  p2.shape.focal[0] = {0};
  MleProblem p3;
  p3.game = g3.game;
  p3.obs = *g3.observed;
  p3.obs.samples = {1000, 1000};
  p3.shape = FocalSpec::none(g3.game);
  p3.shape.focal[0] = {1};
  const MleResult fit = mle_fit({p2, p3}, true);
  REQUIRE(fit.lambda.size() == 1);
  CHECK(fit.lambda[0] >= 0.41 - 1e-9);
  CHECK(fit.lambda[0] <= 0.45 + 1e-9);
}
