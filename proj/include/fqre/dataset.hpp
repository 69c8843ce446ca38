#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqre/focality.hpp"
#include "fqre/game.hpp"
#include "fqre/inference.hpp"

namespace fqre {

/// A bundled experimental game: payoffs, the frequencies reported by the
/// source experiment (when any), and the reference focal sets asserted for it.
struct Fixture {
  Game game;
  std::optional<ObservedPlay> observed;
  std::optional<FocalSpec> reference_focal;
  std::string citation;
};

struct CatalogEntry {
  std::string name;
  std::string citation;
  std::string params;  // human-readable parameter schema, empty if none
  std::string summary;
};

/// Look up a bundled fixture by name. `traveler` takes the reward/penalty T
/// (default 180); `min-effort` takes the effort cost c (default 0.9).
Fixture builtin(const std::string& name,
                std::optional<double> param = std::nullopt);

std::vector<CatalogEntry> list_fixtures();

}  // namespace fqre
