#pragma once

// Hand-built worlds with a known "right answer".

#include <optional>
#include <string>
#include <vector>

#include "empower/blockworld.hpp"

namespace empower::blockworld {

struct Scenario {
  std::string name;
  BlockWorld world;
  /// First cell of the crossing the agent should head for.
  Vec3 target;
};

/// Agent on a small platform in a lava sea; a 1-wide, 3-long earth bridge
/// leads east to a 5x7 earth platform.  10 x 7 x 6 cells.
Scenario bridge_scenario();

/// The horizontal Move that strictly reduces the Manhattan distance (in the
/// x/y plane) from the agent to `target`, preferring the larger axis gap;
/// nullopt when the agent is already above or below the target.
std::optional<BlockAction> move_toward(const BlockWorld& world, Vec3 target);

std::vector<std::string> scenario_names();
std::optional<Scenario> find_scenario(const std::string& name);

}  // namespace empower::blockworld
