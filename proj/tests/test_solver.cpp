#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fqre/dataset.hpp"
#include "fqre/solver.hpp"

using namespace fqre;

TEST_CASE("logit response basics") {
  const auto uniform = logit_response({3.0, -1.0, 7.5}, 0.0);
  for (double v : uniform) CHECK(v == doctest::Approx(1.0 / 3));

  const auto equal = logit_response({1.0, 1.0, 1.0}, 2.7);
  for (double v : equal) CHECK(v == doctest::Approx(1.0 / 3));

  // Utility gap 3.36 at precision log(4)/3.36 puts four-to-one odds on the
  // first strategy.
  const double lambda = std::log(4.0) / 3.36;
  const auto odds = logit_response({7.68, 4.32}, lambda);
  CHECK(odds[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(odds[1] == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(logit_response({1.0, 2.0}, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(logit_response({1.0, std::nan("")}, 1.0),
                  std::invalid_argument);

  // Max-subtraction keeps huge scaled utilities finite.
  const auto big = logit_response({1e6, 0.0}, 10.0);
  CHECK(big[0] == doctest::Approx(1.0));
  CHECK(big[1] >= 0.0);
}

TEST_CASE("zero precision solves to the uniform profile in one step") {
  const Game g = builtin("kreps-baseline").game;
  SolverConfig config;
  config.lambda = 0.0;
  const EquilibriumResult eq = solve(g, FocalSpec::none(g), config);
  CHECK(eq.converged);
  CHECK(eq.iterations == 1);
  CHECK(eq.residual == 0.0);
  CHECK(eq.profile == uniform_profile(g));
}

TEST_CASE("symmetric pennies stay at the centroid for any precision") {
  const Game g = builtin("gh-mp-sym").game;
  for (double lambda : {0.3, 1.0, 4.0}) {
    SolverConfig config;
    config.lambda = lambda;
    const EquilibriumResult eq = solve(g, FocalSpec::none(g), config);
    CHECK(eq.converged);
    for (const auto& v : eq.profile)
      for (double p : v) CHECK(p == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("low-reward pennies with calibrated row bias match observed play") {
  const Game g = builtin("gh-mp-asym2").game;
  FocalSpec spec = FocalSpec::none(g);
  spec.focal[0] = {1};  // D
  spec.delta[0] = 5.4;
  SolverConfig config;
  config.lambda = 0.41;
  const EquilibriumResult eq = solve(g, spec, config);
  REQUIRE(eq.converged);
  CHECK(std::abs(eq.profile[0][0] - 0.08) < 0.01);
  CHECK(std::abs(eq.profile[0][1] - 0.92) < 0.01);
  CHECK(std::abs(eq.profile[1][0] - 0.80) < 0.01);
  CHECK(std::abs(eq.profile[1][1] - 0.20) < 0.01);
}

TEST_CASE("observed play of the high-reward treatment is not a plain fit") {
  const Game g = builtin("gh-mp-asym1").game;
  const double r =
      residual(g, FocalSpec::none(g), 0.45, {{0.96, 0.04}, {0.16, 0.84}});
  CHECK(r > 0.05);
}

TEST_CASE("converged solves verify as fixed points independently") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Game g = builtin("gh-mp-asym1").game;
    for (auto& tensor : g.payoffs)
      for (double& v : tensor) v = -10 + 20 * unif(rng);
    FocalSpec spec = FocalSpec::none(g);
    spec.focal[0] = {int(unif(rng) * 2)};
    spec.delta[0] = 2 * unif(rng);
    SolverConfig config;
    config.lambda = 2 * unif(rng);
    const EquilibriumResult eq = solve(g, spec, config);
    if (!eq.converged) continue;
    CHECK(residual(g, spec, config.lambda, eq.profile) <= config.tolerance);
    for (const auto& v : eq.profile)
      for (double p : v) CHECK(p > 0.0);  // interiority at finite precision
  }
}

TEST_CASE("continuation path: trivial cases") {
  const Game g = builtin("gh-mp-sym").game;
  SolverConfig config;
  const auto flat = trace_lambda_path(g, FocalSpec::none(g), 0.0, config);
  REQUIRE(flat.size() == 1);
  CHECK(flat[0].profile == uniform_profile(g));

  const auto path = trace_lambda_path(g, FocalSpec::none(g), 2.0, config);
  CHECK(int(path.size()) == config.homotopy_steps + 1);
  CHECK(path.front().lambda == 0.0);
  CHECK(path.back().lambda == doctest::Approx(2.0));
  for (const auto& eq : path) {
    CHECK(eq.converged);
    for (const auto& v : eq.profile)
      for (double p : v) CHECK(p == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("continuation path reaches the observed two-sided focal profile") {
  // Closed-form calibration of this game puts precision 0.66533 with bias
  // 1.22363 on row U and column R; the terminal path point must land on the
  // experimental frequencies.
  const Fixture m1 = builtin("m1");
  FocalSpec spec = FocalSpec::none(m1.game);
  spec.focal[0] = {0};
  spec.focal[1] = {1};
  spec.delta = {1.22363, 1.22363};
  SolverConfig config;
  const auto path = trace_lambda_path(m1.game, spec, 0.66533, config);
  const EquilibriumResult& last = path.back();
  REQUIRE(last.converged);
  CHECK(std::abs(last.profile[0][0] - 0.57) < 1e-3);
  CHECK(std::abs(last.profile[1][0] - 0.20) < 1e-3);
}

TEST_CASE("raising the focal bias pushes the focal strategy's probability") {
  const Game g = builtin("gh-mp-asym1").game;
  double prev = -1;
  for (double delta : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    FocalSpec spec = FocalSpec::none(g);
    spec.focal[0] = {0};
    spec.delta[0] = delta;
    SolverConfig config;
    config.lambda = 0.6;
    const EquilibriumResult eq = solve(g, spec, config);
    REQUIRE(eq.converged);
    CHECK(eq.profile[0][0] >= prev);
    prev = eq.profile[0][0];
  }
}

TEST_CASE("full focal sets shift nothing; zero bias reduces to plain play") {
  const Game g = builtin("kreps-baseline").game;
  SolverConfig config;
  config.lambda = 0.8;
  const EquilibriumResult plain = solve(g, FocalSpec::none(g), config);

  FocalSpec full = FocalSpec::none(g);
  full.focal = {{0, 1}, {0, 1, 2, 3}};
  full.delta = {3.0, 7.0};
  const EquilibriumResult shifted = solve(g, full, config);

  FocalSpec zero = FocalSpec::none(g);
  zero.focal = {{0}, {2}};
  const EquilibriumResult reduced = solve(g, zero, config);

  for (int i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < plain.profile[i].size(); ++j) {
      CHECK(shifted.profile[i][j] ==
            doctest::Approx(plain.profile[i][j]).epsilon(1e-9));
      CHECK(reduced.profile[i][j] ==
            doctest::Approx(plain.profile[i][j]).epsilon(1e-9));
    }
}

TEST_CASE("solver configuration validation") {
  const Game g = builtin("gh-mp-sym").game;
  SolverConfig config;
  config.damping = 0.0;
  CHECK_THROWS_AS(solve(g, FocalSpec::none(g), config), std::invalid_argument);
  config.damping = 0.5;
  config.lambda = -1;
  CHECK_THROWS_AS(solve(g, FocalSpec::none(g), config), std::invalid_argument);
  CHECK_THROWS_AS(trace_lambda_path(g, FocalSpec::none(g), -2.0, SolverConfig{}),
                  std::invalid_argument);
}
