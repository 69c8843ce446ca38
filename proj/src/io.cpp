#include "fqre/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fqre {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("game file: " + what);
}

// payoffs nests one array level per player and then holds one number per
// player; profiles are visited with player 0 slowest, matching flat order.
void read_payoff_cell(const json& node, int depth, const Game& game,
                      std::vector<int>& idx,
                      std::vector<std::vector<double>>& out) {
  if (depth < game.num_players()) {
    if (!node.is_array() ||
        static_cast<int>(node.size()) != game.num_strategies(depth))
      fail("payoff nesting does not match the strategy counts");
    for (int j = 0; j < game.num_strategies(depth); ++j) {
      idx[depth] = j;
      read_payoff_cell(node[j], depth + 1, game, idx, out);
    }
    return;
  }
  if (!node.is_array() ||
      static_cast<int>(node.size()) != game.num_players())
    fail("payoff cell must hold one number per player");
  const std::size_t flat = game.flat_index(idx);
  for (int k = 0; k < game.num_players(); ++k) {
    if (!node[k].is_number()) fail("payoff entries must be numbers");
    out[k][flat] = node[k].get<double>();
  }
}

}  // namespace

GameDocument load_game(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("players") || !doc.contains("strategies") ||
      !doc.contains("payoffs"))
    fail("missing required field (players, strategies, payoffs)");

  GameDocument out;
  Game& game = out.game;
  game.name = doc.value("name", std::string{});
  for (const auto& p : doc.at("players")) {
    if (!p.is_string()) fail("player identifiers must be strings");
    game.players.push_back(p.get<std::string>());
  }
  if (static_cast<int>(doc.at("strategies").size()) != game.num_players())
    fail("strategies must list one array per player");
  for (const auto& list : doc.at("strategies")) {
    std::vector<std::string> labels;
    for (const auto& s : list) {
      if (!s.is_string()) fail("strategy labels must be strings");
      labels.push_back(s.get<std::string>());
    }
    if (labels.empty()) fail("every player needs at least one strategy");
    game.strategies.push_back(std::move(labels));
  }

  game.payoffs.assign(game.num_players(),
                      std::vector<double>(game.profile_count(), 0.0));
  std::vector<int> idx(game.num_players(), 0);
  read_payoff_cell(doc.at("payoffs"), 0, game, idx, game.payoffs);

  ValidationReport report = validate(game);
  if (!report.ok()) fail(report.issues.front());

  if (doc.contains("observed") && !doc.at("observed").is_null()) {
    ObservedPlay obs;
    const json& o = doc.at("observed");
    if (static_cast<int>(o.size()) != game.num_players())
      fail("observed must list one frequency array per player");
    obs.freq.resize(game.num_players());
    obs.known.resize(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      if (static_cast<int>(o[i].size()) != game.num_strategies(i))
        fail("observed frequencies do not match the strategy counts");
      for (const auto& f : o[i]) {
        if (f.is_null()) {
          obs.freq[i].push_back(0.0);
          obs.known[i].push_back(0);
        } else if (f.is_number()) {
          obs.freq[i].push_back(f.get<double>());
          obs.known[i].push_back(1);
        } else {
          fail("observed entries must be numbers or null");
        }
      }
    }
    if (doc.contains("samples")) {
      for (const auto& n : doc.at("samples"))
        obs.samples.push_back(n.get<long>());
      if (static_cast<int>(obs.samples.size()) != game.num_players())
        fail("samples must hold one count per player");
    }
    obs.source = doc.value("source", std::string{});
    require_valid_observation(game, obs);
    out.observed = std::move(obs);
  }

  if (doc.contains("focal") || doc.contains("delta")) {
    FocalSpec spec = FocalSpec::none(game);
    if (doc.contains("focal") && !doc.at("focal").is_null()) {
      const json& f = doc.at("focal");
      if (static_cast<int>(f.size()) != game.num_players())
        fail("focal must list one label array per player");
      for (int i = 0; i < game.num_players(); ++i)
        for (const auto& label : f[i]) {
          const int s = game.strategy_index(i, label.get<std::string>());
          if (s < 0) fail("unknown focal strategy label");
          spec.focal[i].push_back(s);
        }
    }
    if (doc.contains("delta") && !doc.at("delta").is_null()) {
      const json& d = doc.at("delta");
      if (static_cast<int>(d.size()) != game.num_players())
        fail("delta must hold one value per player");
      for (int i = 0; i < game.num_players(); ++i)
        spec.delta[i] = d[i].get<double>();
    }
    require_valid_spec(game, spec);
    out.focal = std::move(spec);
  }
  return out;
}

GameDocument load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  return load_game(in);
}

namespace {

ordered payoff_cell(const Game& game, int depth, std::vector<int>& idx) {
  ordered node = ordered::array();
  if (depth < game.num_players()) {
    for (int j = 0; j < game.num_strategies(depth); ++j) {
      idx[depth] = j;
      node.push_back(payoff_cell(game, depth + 1, idx));
    }
  } else {
    for (int k = 0; k < game.num_players(); ++k)
      node.push_back(game.payoff(k, idx));
  }
  return node;
}

}  // namespace

std::string save_game(const GameDocument& doc) {
  const Game& game = doc.game;
  ordered j;
  j["name"] = game.name;
  j["players"] = game.players;
  j["strategies"] = game.strategies;
  std::vector<int> idx(game.num_players(), 0);
  j["payoffs"] = payoff_cell(game, 0, idx);
  if (doc.observed) {
    ordered obs = ordered::array();
    for (int i = 0; i < game.num_players(); ++i) {
      ordered row = ordered::array();
      for (int s = 0; s < game.num_strategies(i); ++s) {
        if (doc.observed->is_known(i, s))
          row.push_back(doc.observed->freq[i][s]);
        else
          row.push_back(nullptr);
      }
      obs.push_back(std::move(row));
    }
    j["observed"] = std::move(obs);
    if (!doc.observed->samples.empty()) j["samples"] = doc.observed->samples;
    if (!doc.observed->source.empty()) j["source"] = doc.observed->source;
  }
  if (doc.focal) {
    ordered focal = ordered::array();
    for (int i = 0; i < game.num_players(); ++i) {
      ordered row = ordered::array();
      for (int s : doc.focal->focal[i]) row.push_back(game.strategies[i][s]);
      focal.push_back(std::move(row));
    }
    j["focal"] = std::move(focal);
    j["delta"] = doc.focal->delta;
  }
  return j.dump(2) + "\n";
}

void save_game_file(const GameDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot open " + path + " for writing");
  out << save_game(doc);
}

}  // namespace fqre
