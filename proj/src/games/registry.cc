#include "armac/games/registry.h"

#include "armac/games/goofspiel.h"
#include "armac/games/gridworld.h"
#include "armac/games/kuhn.h"
#include "armac/games/leduc.h"
#include "armac/games/liars_dice.h"

namespace armac {

std::shared_ptr<const Game> make_game(const std::string& game_id) {
  if (game_id == "kuhn") return std::make_shared<KuhnGame>();
  if (game_id == "leduc") return std::make_shared<LeducGame>();
  if (game_id == "liars_dice") return std::make_shared<LiarsDiceGame>();
  if (game_id == "goofspiel5") return std::make_shared<GoofspielGame>();
  if (game_id == "gridworld") return std::make_shared<GridworldGame>();
  throw InputError("unknown game id: " + game_id);
}

std::vector<std::string> list_game_ids() {
  return {"kuhn", "leduc", "liars_dice", "goofspiel5", "gridworld"};
}

}  // namespace armac
