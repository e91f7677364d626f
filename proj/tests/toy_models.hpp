#pragma once

// Tiny forward models with closed-form answers.

#include <array>
#include <span>

#include "empower/forward_model.hpp"

namespace empower::toy {

/// A walker on the integer line: actions step left, stay, or step right.
/// After a first action d followed by n free steps the reachable positions
/// are d + [-n, n], so every first action reaches 2n + 1 states.
struct LineModel {
  using State = int;
  std::span<const ActionId> actions(const State&) const { return kActions; }
  State step(State s, ActionId a) const { return s + static_cast<int>(a) - 1; }
  SensorToken sensor(State s) const {
    return SensorToken{static_cast<std::uint64_t>(static_cast<std::int64_t>(s))};
  }

  static constexpr std::array<ActionId, 3> kActions{0, 1, 2};
};

/// A walker that stops for good at a wall on the right: states beyond
/// `wall` collapse onto it, so first actions differ in empowerment.
struct WallModel {
  using State = int;
  int wall = 1;
  std::span<const ActionId> actions(const State&) const { return kActions; }
  State step(State s, ActionId a) const {
    if (s >= wall) return wall;
    return s + static_cast<int>(a) - 1;
  }
  SensorToken sensor(State s) const {
    return SensorToken{static_cast<std::uint64_t>(static_cast<std::int64_t>(s))};
  }

  static constexpr std::array<ActionId, 3> kActions{0, 1, 2};
};

/// A walker that must step left or right every turn.
struct HopModel {
  using State = int;
  std::span<const ActionId> actions(const State&) const { return kActions; }
  State step(State s, ActionId a) const { return a == 0 ? s - 1 : s + 1; }
  SensorToken sensor(State s) const {
    return SensorToken{static_cast<std::uint64_t>(static_cast<std::int64_t>(s))};
  }

  static constexpr std::array<ActionId, 2> kActions{0, 1};
};

static_assert(ForwardModel<LineModel>);
static_assert(ForwardModel<HopModel>);
static_assert(ForwardModel<WallModel>);

}  // namespace empower::toy
