#pragma once

#include <memory>
#include <string>
#include <vector>

#include "armac/games/game.h"

namespace armac {

// Looks up a game by string id. Throws InputError for unknown ids.
std::shared_ptr<const Game> make_game(const std::string& game_id);

std::vector<std::string> list_game_ids();

}  // namespace armac
