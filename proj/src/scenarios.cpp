#include "empower/scenarios.hpp"

#include <cstdlib>

namespace empower::blockworld {

Scenario bridge_scenario() {
  constexpr Vec3 dims{10, 7, 6};
  BlockWorld w(dims, {1, 3, 3});
  for (int y = 0; y < dims.y; ++y) {
    for (int x = 0; x < dims.x; ++x) {
      const bool east_platform = x >= 5;
      // Two levels of lava (or platform earth) under everything.
      for (int z = 0; z < 2; ++z) {
        w.set({x, y, z}, east_platform ? Block::Earth : Block::Lava);
      }
      Block top = Block::Lava;
      if (east_platform) {
        top = Block::Earth;
      } else if (x <= 1) {
        if (y >= 2 && y <= 4) top = Block::Earth;  // start platform
      } else if (y == 3) {
        top = Block::Earth;  // bridge
      }
      w.set({x, y, 2}, top);
    }
  }
  return {"bridge", w, {2, 3, 2}};
}

std::optional<BlockAction> move_toward(const BlockWorld& world, Vec3 target) {
  const Vec3 a = world.agent();
  const int dx = target.x - a.x;
  const int dy = target.y - a.y;
  if (dx == 0 && dy == 0) return std::nullopt;
  if (std::abs(dx) >= std::abs(dy)) {
    return dx > 0 ? BlockAction::MoveEast : BlockAction::MoveWest;
  }
  return dy > 0 ? BlockAction::MoveNorth : BlockAction::MoveSouth;
}

std::vector<std::string> scenario_names() { return {"bridge"}; }

std::optional<Scenario> find_scenario(const std::string& name) {
  if (name == "bridge") return bridge_scenario();
  return std::nullopt;
}

}  // namespace empower::blockworld
