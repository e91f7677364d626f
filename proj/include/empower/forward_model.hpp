#pragma once

// Deterministic forward-model contract shared by every estimator.
//
// A model exposes a value-semantic State, a fixed action enumeration, a
// transition function and a sensor projection.  Only transitions cost
// anything: every call to apply() is billed against a CallCounter.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace empower {

using ActionId = std::uint32_t;

/// Hashable projection of a model state.  Two states with equal tokens count
/// as one reachable sensor state.
struct SensorToken {
  std::uint64_t value = 0;

  friend constexpr bool operator==(SensorToken, SensorToken) = default;
  friend constexpr auto operator<=>(SensorToken, SensorToken) = default;
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("forward-call budget of " + std::to_string(budget) +
                           " exhausted"),
        budget_(budget) {}

  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

/// Counts forward calls against an optional ceiling.
class CallCounter {
 public:
  CallCounter() = default;
  explicit CallCounter(std::optional<std::uint64_t> budget) : budget_(budget) {}

  static CallCounter unlimited() { return CallCounter{}; }
  static CallCounter with_budget(std::uint64_t budget) {
    return CallCounter{budget};
  }

  std::uint64_t used() const noexcept { return used_; }
  std::optional<std::uint64_t> budget() const noexcept { return budget_; }
  bool bounded() const noexcept { return budget_.has_value(); }

  /// Calls still available; max uint64 when unbounded.
  std::uint64_t remaining() const noexcept {
    if (!budget_) return UINT64_MAX;
    return *budget_ > used_ ? *budget_ - used_ : 0;
  }

  bool can_afford(std::uint64_t calls) const noexcept {
    return remaining() >= calls;
  }

  /// Bills one call.  Throws BudgetExhausted when the ceiling was already hit.
  void charge() {
    if (budget_ && used_ >= *budget_) throw BudgetExhausted(*budget_);
    ++used_;
  }

 private:
  std::uint64_t used_ = 0;
  std::optional<std::uint64_t> budget_;
};

template <typename M>
concept ForwardModel =
    std::copyable<typename M::State> &&
    requires(const M& model, const typename M::State& state, ActionId action) {
      { model.actions(state) } -> std::convertible_to<std::span<const ActionId>>;
      { model.step(state, action) } -> std::same_as<typename M::State>;
      { model.sensor(state) } -> std::same_as<SensorToken>;
    };

/// The billed transition.  The input state is left untouched.
template <ForwardModel M>
typename M::State apply(const M& model, const typename M::State& state,
                        ActionId action, CallCounter& counter) {
  counter.charge();
  return model.step(state, action);
}

}  // namespace empower

template <>
struct std::hash<empower::SensorToken> {
  std::size_t operator()(empower::SensorToken token) const noexcept {
    return std::hash<std::uint64_t>{}(token.value);
  }
};
