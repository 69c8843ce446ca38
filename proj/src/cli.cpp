#include "fqre/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fqre/dataset.hpp"
#include "fqre/focality.hpp"
#include "fqre/game.hpp"
#include "fqre/inference.hpp"
#include "fqre/io.hpp"
#include "fqre/reproduce.hpp"
#include "fqre/solver.hpp"

namespace fqre {

namespace {

using ordered = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Round to 12 significant digits so JSON output is deterministic across
// platforms while still parsing back as a plain number.
double sig12(double v) {
  if (v == 0 || !std::isfinite(v)) return v;
  const double scale =
      std::pow(10.0, 11 - std::floor(std::log10(std::abs(v))));
  return std::round(v * scale) / scale;
}

ordered round_tree(const ordered& node) {
  if (node.is_number_float()) return sig12(node.get<double>());
  if (node.is_array()) {
    ordered out = ordered::array();
    for (const auto& child : node) out.push_back(round_tree(child));
    return out;
  }
  if (node.is_object()) {
    ordered out = ordered::object();
    for (auto it = node.begin(); it != node.end(); ++it)
      out[it.key()] = round_tree(it.value());
    return out;
  }
  return node;
}

std::string fixed3(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << v;
  return os.str();
}

// Options shared by every game-consuming subcommand.
struct CommonOptions {
  std::string fixture;
  std::string file;
  std::optional<double> fixture_param;
  std::optional<double> lambda;
  std::optional<double> delta;
  std::optional<double> delta_row;
  std::optional<double> delta_col;
  std::string focal_row;
  std::string focal_col;
  double beta = 1.0;
  double alpha = 0.5;
  std::optional<double> gamma;
  double tolerance = 1e-10;
  double damping = 0.5;
  int steps = 64;
  std::string format = "json";
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_game) {
  if (needs_game) {
    cmd->add_option("--fixture", opt.fixture, "bundled game name");
    cmd->add_option("--file", opt.file, "game JSON file");
    auto* t = cmd->add_option("--T", opt.fixture_param,
                              "traveler reward/penalty parameter");
    cmd->add_option("--c", opt.fixture_param, "minimum-effort cost parameter")
        ->excludes(t);
    cmd->add_option("--gamma", opt.gamma, "payoff curvature exponent");
  }
  cmd->add_option("--lambda", opt.lambda, "logit precision");
  cmd->add_option("--delta", opt.delta, "focal bias, all players");
  cmd->add_option("--delta-row", opt.delta_row, "focal bias, row player");
  cmd->add_option("--delta-col", opt.delta_col, "focal bias, column player");
  cmd->add_option("--focal-row", opt.focal_row,
                  "row focal set: labels, 'regret', or 'hurwicz'");
  cmd->add_option("--focal-col", opt.focal_col,
                  "column focal set: labels, 'regret', or 'hurwicz'");
  cmd->add_option("--beta", opt.beta, "regret permissiveness threshold")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--alpha", opt.alpha, "Hurwicz optimism level")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--tolerance", opt.tolerance, "solver residual target");
  cmd->add_option("--damping", opt.damping, "fixed-point step size");
  cmd->add_option("--steps", opt.steps, "continuation grid size");
  cmd->add_option("--format", opt.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", opt.out_path, "write output to this path");
}

GameDocument resolve_game(const CommonOptions& opt) {
  if (opt.fixture.empty() == opt.file.empty())
    throw UsageError("exactly one of --fixture or --file is required");
  GameDocument doc;
  if (!opt.fixture.empty()) {
    Fixture fx;
    try {
      fx = builtin(opt.fixture, opt.fixture_param);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string(e.what()) + " (source: " + opt.fixture + ")");
    }
    doc.game = std::move(fx.game);
    doc.observed = std::move(fx.observed);
    doc.focal = std::move(fx.reference_focal);
  } else {
    try {
      doc = load_game_file(opt.file);
    } catch (const std::exception& e) {
      throw UsageError(std::string(e.what()) + " (source: " + opt.file + ")");
    }
  }
  if (opt.gamma) doc.game = transform_payoffs(doc.game, *opt.gamma);
  return doc;
}

std::vector<int> parse_focal_flag(const Game& game, int player,
                                  const std::string& flag, double beta,
                                  double alpha) {
  if (flag == "regret") return regret_focal_set(game, player, beta);
  if (flag == "hurwicz") return hurwicz_focal_set(game, player, alpha);
  std::vector<int> out;
  std::stringstream ss(flag);
  std::string label;
  while (std::getline(ss, label, ',')) {
    const int s = game.strategy_index(player, label);
    if (s < 0)
      throw UsageError("unknown strategy label '" + label + "' for player " +
                       game.players[player]);
    out.push_back(s);
  }
  return out;
}

// Focal sets and biases from the flags; flags override anything carried by
// the game file or fixture.
FocalSpec resolve_spec(const GameDocument& doc, const CommonOptions& opt,
                       bool use_document_focal) {
  const Game& game = doc.game;
  FocalSpec spec = FocalSpec::none(game);
  if (use_document_focal && doc.focal) spec = *doc.focal;
  if (!opt.focal_row.empty())
    spec.focal[0] = parse_focal_flag(game, 0, opt.focal_row, opt.beta, opt.alpha);
  if (!opt.focal_col.empty()) {
    if (game.num_players() != 2)
      throw UsageError("--focal-col requires a 2-player game");
    spec.focal[1] = parse_focal_flag(game, 1, opt.focal_col, opt.beta, opt.alpha);
  }
  if (opt.delta)
    for (double& d : spec.delta) d = *opt.delta;
  if (opt.delta_row) spec.delta[0] = *opt.delta_row;
  if (opt.delta_col) {
    if (game.num_players() != 2)
      throw UsageError("--delta-col requires a 2-player game");
    spec.delta[1] = *opt.delta_col;
  }
  require_valid_spec(game, spec);
  return spec;
}

SolverConfig resolve_solver(const CommonOptions& opt) {
  SolverConfig config;
  if (const char* env = std::getenv("FQRE_TOLERANCE"))
    config.tolerance = std::strtod(env, nullptr);
  config.tolerance = opt.tolerance != 1e-10 ? opt.tolerance : config.tolerance;
  config.damping = opt.damping;
  config.homotopy_steps = opt.steps;
  if (opt.lambda) config.lambda = *opt.lambda;
  if (!(config.tolerance > 0)) throw UsageError("tolerance must be positive");
  return config;
}

void emit(const CommonOptions& opt, const ordered& json_doc,
          const std::string& table) {
  const std::string text =
      opt.format == "json" ? round_tree(json_doc).dump(2) + "\n" : table;
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw UsageError("cannot open " + opt.out_path + " for writing");
    out << text;
  }
}

ordered profile_json(const MixedProfile& profile) {
  ordered out = ordered::array();
  for (const auto& v : profile) out.push_back(v);
  return out;
}

ordered equilibrium_json(const EquilibriumResult& eq) {
  ordered j;
  j["lambda"] = eq.lambda;
  j["profile"] = profile_json(eq.profile);
  j["residual"] = eq.residual;
  j["iterations"] = eq.iterations;
  j["converged"] = eq.converged;
  return j;
}

std::string profile_table(const Game& game, const MixedProfile& profile) {
  std::ostringstream os;
  for (int i = 0; i < game.num_players(); ++i) {
    os << game.players[i] << ":";
    for (int j = 0; j < game.num_strategies(i); ++j)
      os << "  " << game.strategies[i][j] << "=" << fixed3(profile[i][j]);
    os << "\n";
  }
  return os.str();
}

int cmd_solve(const CommonOptions& opt) {
  const GameDocument doc = resolve_game(opt);
  const FocalSpec spec = resolve_spec(doc, opt, false);
  const SolverConfig config = resolve_solver(opt);
  const EquilibriumResult eq = solve_robust(doc.game, spec, config);
  std::ostringstream table;
  table << "equilibrium at lambda=" << fixed3(eq.lambda)
        << (eq.converged ? "" : "  (NOT CONVERGED)") << "\n"
        << profile_table(doc.game, eq.profile)
        << "residual=" << eq.residual << "  iterations=" << eq.iterations
        << "\n";
  emit(opt, equilibrium_json(eq), table.str());
  return eq.converged ? kExitOk : kExitInfeasible;
}

int cmd_trace(const CommonOptions& opt) {
  const GameDocument doc = resolve_game(opt);
  const FocalSpec spec = resolve_spec(doc, opt, false);
  const SolverConfig config = resolve_solver(opt);
  const double lambda_max = opt.lambda.value_or(1.0);
  const auto path = trace_lambda_path(doc.game, spec, lambda_max, config);
  ordered j = ordered::array();
  std::ostringstream table;
  bool ok = true;
  for (const auto& eq : path) {
    j.push_back(equilibrium_json(eq));
    ok = ok && eq.converged;
    table << "lambda=" << fixed3(eq.lambda) << "  ";
    for (const auto& v : eq.profile)
      for (double p : v) table << fixed3(p) << " ";
    table << (eq.converged ? "" : " (NOT CONVERGED)") << "\n";
  }
  emit(opt, j, table.str());
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_focal(const CommonOptions& opt) {
  const GameDocument doc = resolve_game(opt);
  const Game& game = doc.game;
  ordered j = ordered::array();
  std::ostringstream table;
  for (int i = 0; i < game.num_players(); ++i) {
    ordered pj;
    pj["player"] = game.players[i];
    const bool has_regret = game.num_strategies(i) >= 2;
    std::vector<int> focal;
    if (has_regret) {
      const RegretProfile rp = regret_profile(game, i);
      pj["regret"] = rp.regret;
      pj["average_regret"] = rp.average;
      focal = regret_focal_set(game, i, opt.beta);
    } else {
      focal = {0};
    }
    ordered labels = ordered::array();
    for (int s : focal) labels.push_back(game.strategies[i][s]);
    pj["regret_focal"] = labels;
    ordered hlabels = ordered::array();
    for (int s : hurwicz_focal_set(game, i, opt.alpha))
      hlabels.push_back(game.strategies[i][s]);
    pj["hurwicz_focal"] = hlabels;

    const DiagnosticsReport rep = observation_checks(game, i);
    ordered diag = ordered::array();
    for (int s = 0; s < game.num_strategies(i); ++s) {
      const auto& d = rep.per_strategy[s];
      ordered sj;
      sj["strategy"] = game.strategies[i][s];
      sj["weakly_dominant"] = d.weakly_dominant;
      sj["dominates_focal"] = d.dominates_focal;
      sj["high_peak_payoff"] = d.high_peak_payoff;
      sj["low_floor_excluded"] = d.low_floor_excluded;
      sj["secure_floor"] = d.secure_floor;
      sj["pointwise_above_average"] = d.pointwise_above_average;
      if (rep.row_sum_rule_applicable) sj["row_sum_rule"] = d.row_sum_rule;
      sj["in_focal_set"] = d.in_focal_set;
      diag.push_back(std::move(sj));
    }
    pj["diagnostics"] = std::move(diag);
    j.push_back(std::move(pj));

    table << game.players[i] << ": regret focal " << labels.dump()
          << "  hurwicz focal " << hlabels.dump() << "\n";
  }
  emit(opt, j, table.str());
  return kExitOk;
}

int cmd_calibrate(const CommonOptions& opt) {
  const GameDocument doc = resolve_game(opt);
  if (!doc.observed)
    throw UsageError("calibrate needs observed frequencies on the game");
  const CommonOptions shape_opt = [&] {
    CommonOptions o = opt;
    o.delta.reset();
    o.delta_row.reset();
    o.delta_col.reset();
    return o;
  }();
  const FocalSpec shape = resolve_spec(doc, shape_opt, false);
  SolverConfig config = resolve_solver(opt);
  config.lambda = 1.0;
  const std::optional<double> fixed_delta = opt.delta;
  const CalibrationResult cal =
      calibrate(doc.game, *doc.observed, shape, fixed_delta, config);

  ordered j;
  j["lambda"] = cal.lambda;
  j["delta"] = cal.delta;
  j["feasible"] = cal.feasible;
  j["forward_residual"] = cal.forward_residual;
  ordered est = ordered::array();
  for (const auto& e : cal.lambda_estimates) {
    ordered ej;
    ej["player"] = doc.game.players[e.player];
    ej["pair"] = ordered::array({doc.game.strategies[e.player][e.strategy_j],
                                 doc.game.strategies[e.player][e.strategy_k]});
    ej["lambda"] = e.lambda;
    est.push_back(std::move(ej));
  }
  j["lambda_estimates"] = std::move(est);
  if (!cal.note.empty()) j["note"] = cal.note;

  std::ostringstream table;
  table << "lambda=" << fixed3(cal.lambda) << "  delta=" << fixed3(cal.delta)
        << "  feasible=" << (cal.feasible ? "yes" : "no")
        << "  forward_residual=" << fixed3(cal.forward_residual) << "\n";
  if (!cal.note.empty()) table << cal.note << "\n";
  emit(opt, j, table.str());
  return cal.feasible ? kExitOk : kExitInfeasible;
}

int cmd_identify(const CommonOptions& opt) {
  const GameDocument doc = resolve_game(opt);
  if (!doc.observed)
    throw UsageError("identify needs observed frequencies on the game");
  const IdentificationReport rep = identify_focal(doc.game, *doc.observed);
  ordered j;
  ordered cls = ordered::array();
  std::ostringstream table;
  for (const auto& c : rep.classifications) {
    ordered cj;
    cj["player"] = doc.game.players[c.player];
    cj["focal"] = doc.game.strategies[c.player][c.focal_strategy];
    cj["nonfocal"] = doc.game.strategies[c.player][c.nonfocal_strategy];
    cls.push_back(std::move(cj));
    table << doc.game.players[c.player] << ": "
          << doc.game.strategies[c.player][c.focal_strategy] << " focal, "
          << doc.game.strategies[c.player][c.nonfocal_strategy]
          << " non-focal\n";
  }
  j["classifications"] = std::move(cls);
  j["skipped"] = rep.skipped;
  if (rep.classifications.empty()) table << "no classification possible\n";
  emit(opt, j, table.str());
  return kExitOk;
}

int cmd_falsify(const CommonOptions& opt, const std::vector<double>& p,
                const std::vector<double>& q) {
  if (p.size() != q.size() || (p.size() != 2 && p.size() != 4))
    throw UsageError("falsify needs matching --p and --q lists of 2 or 4 "
                     "frequencies");
  RejectionVerdict verdict;
  if (p.size() == 2) {
    verdict = reject_qre_pair(p[0], q[0], p[1], q[1]);
  } else {
    const double pa[4] = {p[0], p[1], p[2], p[3]};
    const double qa[4] = {q[0], q[1], q[2], q[3]};
    verdict = reject_focal_qre_quad(pa, qa);
  }
  ordered j;
  j["test"] = verdict.test;
  j["rejected"] = verdict.rejected;
  j["witness"] = verdict.witness;
  std::ostringstream table;
  table << verdict.test << ": "
        << (verdict.rejected ? "rejected" : "not rejected") << "\n";
  if (!verdict.witness.empty()) table << verdict.witness << "\n";
  emit(opt, j, table.str());
  return kExitOk;
}

int cmd_reproduce(const CommonOptions& opt) {
  const auto results = run_reproduction();
  ordered j = ordered::array();
  std::ostringstream table;
  for (const auto& cr : results) {
    ordered cj;
    cj["criterion"] = cr.number;
    cj["title"] = cr.title;
    cj["passed"] = cr.passed;
    ordered checks = ordered::array();
    for (const auto& c : cr.checks) {
      ordered kj;
      kj["name"] = c.name;
      kj["passed"] = c.passed;
      kj["detail"] = c.detail;
      checks.push_back(std::move(kj));
    }
    cj["checks"] = std::move(checks);
    j.push_back(std::move(cj));

    table << "criterion " << cr.number << " (" << cr.title << "): "
          << (cr.passed ? "pass" : "FAIL") << "\n";
    for (const auto& c : cr.checks)
      table << "  [" << (c.passed ? "ok" : "XX") << "] " << c.name << " — "
            << c.detail << "\n";
  }
  emit(opt, j, table.str());
  return kExitOk;
}

int cmd_validate(const CommonOptions& opt) {
  if (opt.file.empty()) throw UsageError("validate needs --file");
  ordered j;
  std::ostringstream table;
  try {
    const GameDocument doc = load_game_file(opt.file);
    const ValidationReport rep = validate(doc.game);
    j["ok"] = rep.ok();
    j["issues"] = rep.issues;
    table << (rep.ok() ? "ok" : "invalid") << "\n";
    for (const auto& issue : rep.issues) table << "  " << issue << "\n";
    emit(opt, j, table.str());
    return rep.ok() ? kExitOk : kExitInfeasible;
  } catch (const std::exception& e) {
    j["ok"] = false;
    j["issues"] = ordered::array({e.what()});
    table << "invalid\n  " << e.what() << "\n";
    emit(opt, j, table.str());
    return kExitInfeasible;
  }
}

int cmd_catalog(const CommonOptions& opt) {
  const auto entries = list_fixtures();
  ordered j = ordered::array();
  std::size_t width = 0;
  for (const auto& e : entries) width = std::max(width, e.name.size());
  std::ostringstream table;
  for (const auto& e : entries) {
    ordered ej;
    ej["name"] = e.name;
    ej["citation"] = e.citation;
    ej["params"] = e.params;
    ej["summary"] = e.summary;
    j.push_back(std::move(ej));
    table << e.name << std::string(width - e.name.size() + 2, ' ')
          << e.summary;
    if (!e.params.empty()) table << "  [" << e.params << "]";
    table << "\n";
  }
  emit(opt, j, table.str());
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Focal quantal response equilibrium toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::vector<double> falsify_p, falsify_q;

  auto* solve_cmd = app.add_subcommand("solve", "equilibrium at one lambda");
  add_common_flags(solve_cmd, opt, true);
  auto* trace_cmd = app.add_subcommand("trace", "equilibrium path in lambda");
  add_common_flags(trace_cmd, opt, true);
  auto* focal_cmd =
      app.add_subcommand("focal", "focal sets and payoff diagnostics");
  add_common_flags(focal_cmd, opt, true);
  auto* cal_cmd =
      app.add_subcommand("calibrate", "fit precision and bias to observed play");
  add_common_flags(cal_cmd, opt, true);
  auto* id_cmd =
      app.add_subcommand("identify", "classify focal strategies from play");
  add_common_flags(id_cmd, opt, true);
  auto* fal_cmd =
      app.add_subcommand("falsify", "nonparametric rejection patterns");
  add_common_flags(fal_cmd, opt, false);
  fal_cmd->add_option("--p", falsify_p, "column-frequency list")
      ->delimiter(',');
  fal_cmd->add_option("--q", falsify_q, "row-frequency list")->delimiter(',');
  auto* rep_cmd =
      app.add_subcommand("reproduce", "recompute the bundled reference results");
  add_common_flags(rep_cmd, opt, false);
  auto* val_cmd = app.add_subcommand("validate", "check a game file");
  val_cmd->add_option("--file", opt.file, "game JSON file");
  val_cmd->add_option("--format", opt.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  val_cmd->add_option("--out", opt.out_path, "write output to this path");
  auto* cat_cmd = app.add_subcommand("catalog", "list bundled fixtures");
  cat_cmd->add_option("--format", opt.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cat_cmd->add_option("--out", opt.out_path, "write output to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(opt);
    if (trace_cmd->parsed()) return cmd_trace(opt);
    if (focal_cmd->parsed()) return cmd_focal(opt);
    if (cal_cmd->parsed()) return cmd_calibrate(opt);
    if (id_cmd->parsed()) return cmd_identify(opt);
    if (fal_cmd->parsed()) return cmd_falsify(opt, falsify_p, falsify_q);
    if (rep_cmd->parsed()) return cmd_reproduce(opt);
    if (val_cmd->parsed()) return cmd_validate(opt);
    if (cat_cmd->parsed()) return cmd_catalog(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitUsage;
}

}  // namespace fqre
