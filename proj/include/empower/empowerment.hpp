#pragma once

// n-step empowerment in deterministic models.
//
// With a deterministic transition every action sequence ends in exactly one
// sensor state, so channel capacity reduces to log2 of the number of
// distinct reachable sensor states.  Reports carry those counts per first
// action; bits are derived only for presentation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "empower/forward_model.hpp"
#include "empower/rng.hpp"

namespace empower {

struct EmpowermentReport {
  /// Root actions in enumeration order, with one count each.
  std::vector<ActionId> actions;
  std::vector<std::uint64_t> counts;
  std::uint64_t calls_used = 0;
  std::size_t horizon = 0;
  /// Set when the budget could not pay for a single sample.
  bool degenerate = false;

  std::uint64_t count_for(ActionId action) const {
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (actions[i] == action) return counts[i];
    }
    return 0;
  }

  static double bits(std::uint64_t count) {
    return count == 0 ? 0.0 : std::log2(static_cast<double>(count));
  }

  std::uint64_t best_count() const {
    std::uint64_t best = 0;
    for (auto c : counts) best = std::max(best, c);
    return best;
  }

  /// Action with the largest count; ties go to the lowest ActionId.
  ActionId best_action() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < actions.size(); ++i) {
      if (counts[i] > counts[best] ||
          (counts[i] == counts[best] && actions[i] < actions[best])) {
        best = i;
      }
    }
    return actions[best];
  }
};

namespace detail {

template <ForwardModel M>
void collect_endpoints(const M& model, const typename M::State& state,
                       std::size_t remaining, CallCounter& counter,
                       std::unordered_set<SensorToken>& out) {
  if (remaining == 0) {
    out.insert(model.sensor(state));
    return;
  }
  for (ActionId a : model.actions(state)) {
    collect_endpoints(model, apply(model, state, a, counter), remaining - 1,
                      counter, out);
  }
}

}  // namespace detail

/// Exact n-step empowerment of every successor of `root`, by depth-first
/// traversal of the full action tree.  Each tree edge is applied once, so an
/// unpruned run costs |A| + |A|^2 + ... + |A|^(n+1) forward calls.
/// Throws BudgetExhausted if a bounded counter runs dry.
template <ForwardModel M>
EmpowermentReport exhaustive_empowerment(const M& model,
                                         const typename M::State& root,
                                         std::size_t horizon,
                                         CallCounter& counter) {
  EmpowermentReport report;
  report.horizon = horizon;
  const std::uint64_t start = counter.used();
  std::unordered_set<SensorToken> endpoints;
  for (ActionId a : model.actions(root)) {
    endpoints.clear();
    detail::collect_endpoints(model, apply(model, root, a, counter), horizon,
                              counter, endpoints);
    report.actions.push_back(a);
    report.counts.push_back(endpoints.size());
  }
  report.calls_used = counter.used() - start;
  return report;
}

/// Closed-form call count of an unpruned exhaustive run.
inline std::uint64_t exhaustive_call_count(std::uint64_t action_count,
                                           std::size_t horizon) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t d = 1; d <= horizon + 1; ++d) {
    level *= action_count;
    total += level;
  }
  return total;
}

struct SamplingOptions {
  /// Cycle the first action round-robin instead of drawing it at random.
  bool balanced_first_action = false;
};

struct ActionChoice {
  ActionId action = 0;
  EmpowermentReport report;
};

/// Random-sequence estimator: draws uniformly random (n+1)-step action
/// sequences from the root while the budget pays for a whole sequence and
/// records each endpoint under the sequence's first action.  Sequences may
/// repeat.  With a budget below n+1 the choice is a uniformly random action
/// and the report is empty and flagged degenerate.
template <ForwardModel M>
ActionChoice basic_sampling_action(const M& model,
                                   const typename M::State& root,
                                   std::size_t horizon, CallCounter& counter,
                                   Rng& rng, SamplingOptions options = {}) {
  if (!counter.bounded()) {
    throw std::invalid_argument("random sampling needs a bounded call budget");
  }
  const std::span<const ActionId> first = model.actions(root);
  ActionChoice choice;
  EmpowermentReport& report = choice.report;
  report.horizon = horizon;
  report.actions.assign(first.begin(), first.end());
  report.counts.assign(first.size(), 0);

  const std::uint64_t start = counter.used();
  const std::uint64_t cost = horizon + 1;
  if (!counter.can_afford(cost)) {
    report.degenerate = true;
    choice.action = first[rng.below(first.size())];
    return choice;
  }

  std::vector<std::unordered_set<SensorToken>> reached(first.size());
  std::uint64_t draws = 0;
  while (counter.can_afford(cost)) {
    const std::size_t slot = options.balanced_first_action
                                 ? draws % first.size()
                                 : rng.below(first.size());
    ++draws;
    auto state = apply(model, root, first[slot], counter);
    for (std::size_t step = 0; step < horizon; ++step) {
      const auto acts = model.actions(state);
      state = apply(model, state, acts[rng.below(acts.size())], counter);
    }
    reached[slot].insert(model.sensor(state));
  }
  for (std::size_t i = 0; i < first.size(); ++i) report.counts[i] = reached[i].size();
  report.calls_used = counter.used() - start;
  choice.action = report.best_action();
  return choice;
}

}  // namespace empower
