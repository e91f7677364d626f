#pragma once

// A small voxel world: earth, lava and one agent on a 3D grid.
//
// Axes: x grows east, y grows north, z grows up.  The grid floor (z = 0 from
// below) acts as solid support.  One action step is
//
//   resolve agent action -> tick += 1 -> gravity -> lava spread -> death check
//
// where lava spreads horizontally on ticks that are positive multiples of 4.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "empower/forward_model.hpp"

namespace empower::blockworld {

enum class Block : std::uint8_t { Empty, Earth, Lava, Agent };

/// The 12 agent actions.  The numeric value is the ActionId.
enum class BlockAction : std::uint8_t {
  MoveNorth,
  MoveEast,
  MoveSouth,
  MoveWest,
  ActUp,
  ActDown,
  ActNorth,
  ActEast,
  ActSouth,
  ActWest,
  Wait,
  DestroyInventory,
};

inline constexpr std::size_t kActionCount = 12;
inline constexpr int kLavaSpreadPeriod = 4;

std::string_view action_name(BlockAction action);
std::optional<BlockAction> parse_action(std::string_view name);

constexpr ActionId to_id(BlockAction a) { return static_cast<ActionId>(a); }
constexpr BlockAction from_id(ActionId id) { return static_cast<BlockAction>(id); }

struct Vec3 {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr bool operator==(Vec3, Vec3) = default;
  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
};

class BlockWorld {
 public:
  BlockWorld() = default;
  /// Empty world of the given size with the agent placed at `agent`.
  BlockWorld(Vec3 dims, Vec3 agent);

  Vec3 dims() const { return dims_; }
  std::size_t cell_count() const { return grid_.size(); }

  bool in_bounds(Vec3 p) const {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < dims_.x && p.y < dims_.y &&
           p.z < dims_.z;
  }
  Block at(Vec3 p) const { return grid_[index(p)]; }
  /// Raw cell write; does not maintain the agent invariants.
  void set(Vec3 p, Block b) { grid_[index(p)] = b; }

  /// Agent position; frozen at the death position once the agent is dead.
  Vec3 agent() const { return agent_; }
  bool alive() const { return alive_; }
  bool holding() const { return holding_; }
  std::uint64_t tick() const { return tick_; }

  void place_agent(Vec3 p);
  void set_holding(bool holding) { holding_ = holding; }
  void set_tick(std::uint64_t tick) { tick_ = tick; }
  /// Marks the agent dead at its current position and clears its cell.
  void kill();
  /// Marks the agent dead at `p` without touching the grid.
  void set_dead_at(Vec3 p);

  std::size_t count(Block b) const;
  std::span<const Block> cells() const { return grid_; }

  friend bool operator==(const BlockWorld&, const BlockWorld&) = default;

 private:
  std::size_t index(Vec3 p) const {
    return (static_cast<std::size_t>(p.z) * dims_.y + p.y) * dims_.x + p.x;
  }

  Vec3 dims_{};
  std::vector<Block> grid_;
  Vec3 agent_{};
  bool holding_ = false;
  bool alive_ = true;
  std::uint64_t tick_ = 0;
};

/// One full action step: agent action, tick advance, environment step.
BlockWorld apply_block_action(const BlockWorld& world, BlockAction action);

/// Gravity, lava spread (if the tick calls for it) and the death check.
BlockWorld step_environment(const BlockWorld& world);

// The individual environment phases, in place.
void apply_gravity(BlockWorld& world);
void spread_lava(BlockWorld& world);
void check_death(BlockWorld& world);

/// Random world: every cell Earth w.p. 0.40, Lava w.p. 0.02, else Empty;
/// the agent replaces a uniformly random cell.
BlockWorld generate_random_world(std::uint64_t seed, Vec3 dims = {7, 7, 7});

SensorToken sensor_of(const BlockWorld& world);
Vec3 position_of(SensorToken token);

/// ForwardModel adapter over BlockWorld.
class BlockWorldModel {
 public:
  using State = BlockWorld;

  std::span<const ActionId> actions(const State&) const { return kActions; }
  State step(const State& state, ActionId action) const {
    return apply_block_action(state, from_id(action));
  }
  SensorToken sensor(const State& state) const { return sensor_of(state); }

 private:
  static constexpr std::array<ActionId, kActionCount> kActions{
      0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
};

static_assert(ForwardModel<BlockWorldModel>);

}  // namespace empower::blockworld
