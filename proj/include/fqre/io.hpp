#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fqre/focality.hpp"
#include "fqre/game.hpp"
#include "fqre/inference.hpp"

namespace fqre {

/// One game file: the game itself plus whatever optional blocks it carries.
struct GameDocument {
  Game game;
  std::optional<ObservedPlay> observed;
  std::optional<FocalSpec> focal;  // focal labels + per-player delta
};

/// Parse the JSON game format. `payoffs` nests one level per player followed
/// by the player index; `observed` entries may be null (unreported);
/// `focal` holds per-player strategy-label arrays; `delta` per-player reals.
GameDocument load_game(std::istream& in);
GameDocument load_game_file(const std::string& path);

/// Serialize losslessly (round-trips at full double precision).
std::string save_game(const GameDocument& doc);
void save_game_file(const GameDocument& doc, const std::string& path);

}  // namespace fqre
