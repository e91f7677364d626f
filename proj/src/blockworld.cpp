#include "empower/blockworld.hpp"

#include <algorithm>
#include <stdexcept>

#include "empower/rng.hpp"

namespace empower::blockworld {

namespace {

constexpr std::array<std::string_view, kActionCount> kNames{
    "move-north", "move-east", "move-south", "move-west",
    "act-up",     "act-down",  "act-north",  "act-east",
    "act-south",  "act-west",  "wait",       "destroy"};

constexpr Vec3 kNorth{0, 1, 0};
constexpr Vec3 kEast{1, 0, 0};
constexpr Vec3 kSouth{0, -1, 0};
constexpr Vec3 kWest{-1, 0, 0};
constexpr Vec3 kUp{0, 0, 1};
constexpr Vec3 kDown{0, 0, -1};

constexpr std::array<Vec3, 4> kHorizontal{kNorth, kEast, kSouth, kWest};
constexpr std::array<Vec3, 6> kOrthogonal{kNorth, kEast, kSouth,
                                          kWest, kUp,   kDown};

bool is_filled(Block b) { return b != Block::Empty; }

void try_move(BlockWorld& w, Vec3 dir) {
  const Vec3 from = w.agent();
  const Vec3 target = from + dir;
  if (!w.in_bounds(target)) return;
  Vec3 dest = target;
  if (is_filled(w.at(target))) {
    dest = target + kUp;
    if (!w.in_bounds(dest) || is_filled(w.at(dest))) return;  // blocked
  }
  w.set(from, Block::Empty);
  w.place_agent(dest);
}

void try_act(BlockWorld& w, Vec3 dir) {
  const Vec3 target = w.agent() + dir;
  if (!w.in_bounds(target)) return;
  const Block b = w.at(target);
  if (!w.holding()) {
    if (b == Block::Earth) {
      w.set(target, Block::Empty);
      w.set_holding(true);
    }
  } else if (b == Block::Empty) {
    w.set(target, Block::Earth);
    w.set_holding(false);
  }
}

void resolve_action(BlockWorld& w, BlockAction action) {
  switch (action) {
    case BlockAction::MoveNorth: try_move(w, kNorth); break;
    case BlockAction::MoveEast: try_move(w, kEast); break;
    case BlockAction::MoveSouth: try_move(w, kSouth); break;
    case BlockAction::MoveWest: try_move(w, kWest); break;
    case BlockAction::ActUp: try_act(w, kUp); break;
    case BlockAction::ActDown: try_act(w, kDown); break;
    case BlockAction::ActNorth: try_act(w, kNorth); break;
    case BlockAction::ActEast: try_act(w, kEast); break;
    case BlockAction::ActSouth: try_act(w, kSouth); break;
    case BlockAction::ActWest: try_act(w, kWest); break;
    case BlockAction::Wait: break;
    case BlockAction::DestroyInventory: w.set_holding(false); break;
  }
}

}  // namespace

std::string_view action_name(BlockAction action) {
  return kNames[static_cast<std::size_t>(action)];
}

std::optional<BlockAction> parse_action(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<BlockAction>(i);
  }
  return std::nullopt;
}

BlockWorld::BlockWorld(Vec3 dims, Vec3 agent)
    : dims_(dims),
      grid_(static_cast<std::size_t>(dims.x) * dims.y * dims.z, Block::Empty) {
  if (dims.x <= 0 || dims.y <= 0 || dims.z <= 0) {
    throw std::invalid_argument("world dimensions must be positive");
  }
  place_agent(agent);
}

void BlockWorld::place_agent(Vec3 p) {
  if (!in_bounds(p)) throw std::out_of_range("agent position outside the grid");
  agent_ = p;
  alive_ = true;
  set(p, Block::Agent);
}

void BlockWorld::kill() {
  if (!alive_) return;
  alive_ = false;
  if (at(agent_) == Block::Agent) set(agent_, Block::Empty);
}

void BlockWorld::set_dead_at(Vec3 p) {
  agent_ = p;
  alive_ = false;
}

std::size_t BlockWorld::count(Block b) const {
  return static_cast<std::size_t>(std::count(grid_.begin(), grid_.end(), b));
}

void apply_gravity(BlockWorld& w) {
  const Vec3 d = w.dims();
  // Bottom-up, so every block lands on an already settled column.
  for (int z = 1; z < d.z; ++z) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        const Block b = w.at({x, y, z});
        if (b != Block::Lava && b != Block::Agent) continue;
        int rest = z;
        while (rest > 0 && w.at({x, y, rest - 1}) == Block::Empty) --rest;
        if (rest == z) continue;
        w.set({x, y, z}, Block::Empty);
        if (b == Block::Agent) {
          w.place_agent({x, y, rest});
        } else {
          w.set({x, y, rest}, Block::Lava);
        }
      }
    }
  }
}

void spread_lava(BlockWorld& w) {
  const Vec3 d = w.dims();
  std::vector<Vec3> targets;
  for (int z = 0; z < d.z; ++z) {
    for (int y = 0; y < d.y; ++y) {
      for (int x = 0; x < d.x; ++x) {
        if (w.at({x, y, z}) != Block::Lava) continue;
        for (Vec3 dir : kHorizontal) {
          const Vec3 n = Vec3{x, y, z} + dir;
          if (w.in_bounds(n) && w.at(n) == Block::Empty) targets.push_back(n);
        }
      }
    }
  }
  for (Vec3 t : targets) w.set(t, Block::Lava);
}

void check_death(BlockWorld& w) {
  if (!w.alive()) return;
  for (Vec3 dir : kOrthogonal) {
    const Vec3 n = w.agent() + dir;
    if (w.in_bounds(n) && w.at(n) == Block::Lava) {
      w.kill();
      return;
    }
  }
}

namespace {

void run_environment(BlockWorld& w) {
  apply_gravity(w);
  if (w.tick() > 0 && w.tick() % kLavaSpreadPeriod == 0) spread_lava(w);
  check_death(w);
}

}  // namespace

BlockWorld step_environment(const BlockWorld& world) {
  BlockWorld w = world;
  run_environment(w);
  return w;
}

BlockWorld apply_block_action(const BlockWorld& world, BlockAction action) {
  BlockWorld w = world;
  if (w.alive()) resolve_action(w, action);
  w.set_tick(w.tick() + 1);
  run_environment(w);
  return w;
}

BlockWorld generate_random_world(std::uint64_t seed, Vec3 dims) {
  Rng rng(seed);
  BlockWorld w(dims, {0, 0, 0});
  for (int z = 0; z < dims.z; ++z) {
    for (int y = 0; y < dims.y; ++y) {
      for (int x = 0; x < dims.x; ++x) {
        const double u = rng.unit();
        Block b = Block::Empty;
        if (u < 0.40) {
          b = Block::Earth;
        } else if (u < 0.42) {
          b = Block::Lava;
        }
        w.set({x, y, z}, b);
      }
    }
  }
  const auto cell = rng.below(w.cell_count());
  const int x = static_cast<int>(cell % dims.x);
  const int y = static_cast<int>(cell / dims.x % dims.y);
  const int z = static_cast<int>(cell / dims.x / dims.y);
  w.place_agent({x, y, z});
  return w;
}

SensorToken sensor_of(const BlockWorld& world) {
  const Vec3 p = world.agent();
  return SensorToken{static_cast<std::uint64_t>(p.x) |
                     static_cast<std::uint64_t>(p.y) << 21 |
                     static_cast<std::uint64_t>(p.z) << 42};
}

Vec3 position_of(SensorToken token) {
  constexpr std::uint64_t mask = (1ULL << 21) - 1;
  return {static_cast<int>(token.value & mask),
          static_cast<int>(token.value >> 21 & mask),
          static_cast<int>(token.value >> 42 & mask)};
}

}  // namespace empower::blockworld
