#pragma once

// UCT tree search for the most empowered action.
//
// Each rollout descends from the root, expanding a random unexpanded child
// while one exists and otherwise following the child with the best
// uct_value, until it is branch_depth levels above the tree depth.  There
// the remaining levels are expanded exhaustively (or, with branch_depth 0,
// the node's own sensor token is recorded) and every token found is walked
// up the tree.  The answer is the root child with the largest reachability
// set, never the one with the best uct_value.

#include <cstdint>
#include <optional>
#include <vector>

#include "empower/empowerment.hpp"
#include "empower/forward_model.hpp"
#include "empower/rng.hpp"
#include "empower/search_tree.hpp"

namespace empower {

struct SearchOutcome {
  ActionId action = 0;
  /// Root-child reachability set sizes (0 for actions never expanded).
  EmpowermentReport report;
  SearchTree tree;
  std::uint64_t rollouts = 0;
  /// The budget could not pay for one rollout; action is a random pick.
  bool degenerate = false;
};

/// Worst-case forward calls of one rollout: the guided descent plus the
/// exhaustive tail of |A| + |A|^2 + ... + |A|^k calls.
inline std::uint64_t rollout_cost(const SearchConfig& config,
                                  std::uint64_t action_count) {
  std::uint64_t cost = config.tree_depth() - config.branch_depth;
  std::uint64_t level = 1;
  for (std::size_t d = 0; d < config.branch_depth; ++d) {
    level *= action_count;
    cost += level;
  }
  return cost;
}

/// Full expansion of the last `depth` levels below `node`; with depth 0 the
/// node's sensor token is recorded.  Children are reused when a node is
/// branched a second time.
template <ForwardModel M>
void branch(const M& model, SearchTree& tree, NodeId node,
            const typename M::State& world, std::size_t depth,
            const SearchConfig& config, CallCounter& counter) {
  if (depth == 0) {
    add_state(tree, node, model.sensor(world), config.novelty);
    return;
  }
  for (ActionId a : model.actions(world)) {
    auto next = apply(model, world, a, counter);
    NodeId child = tree.find_child(node, a).value_or(kNoNode);
    if (child == kNoNode) child = tree.add_child(node, a);
    branch(model, tree, child, next, depth - 1, config, counter);
  }
}

template <ForwardModel M>
SearchOutcome best_action(const M& model, const typename M::State& root_state,
                          const SearchConfig& config, CallCounter& counter) {
  config.validate();
  using State = typename M::State;

  SearchOutcome out;
  Rng rng(config.seed);
  SearchTree& tree = out.tree;
  const auto root_actions = model.actions(root_state);
  const std::uint64_t start = counter.used();
  const std::uint64_t cost = rollout_cost(config, root_actions.size());
  const std::size_t descent = config.tree_depth() - config.branch_depth;

  std::vector<std::optional<State>> cache;
  if (config.cache_successors) cache.emplace_back(root_state);

  while (!tree[SearchTree::root()].exhausted && counter.can_afford(cost)) {
    NodeId t = SearchTree::root();
    State test = root_state;
    try {
      for (std::size_t depth = 0; depth < descent; ++depth) {
        ++tree[t].visits;
        const auto acts = model.actions(test);
        tree[t].width = static_cast<std::uint32_t>(acts.size());
        if (tree[t].children.size() < acts.size()) {
          const ActionId a = random_unexpanded_action(tree, t, acts, rng);
          test = apply(model, test, a, counter);
          const NodeId child = tree.add_child(t, a);
          if (config.cache_successors) cache.emplace_back(test);
          if (config.aggregated) {
            add_state(tree, child, model.sensor(test), config.novelty);
          }
          t = child;
        } else {
          t = best_child(tree, t, config);
          if (config.cache_successors && cache[t]) {
            test = *cache[t];
          } else {
            test = apply(model, test, *tree[t].action, counter);
          }
        }
      }
      // The node a rollout ends on counts as visited too, so every node
      // the selection step can evaluate has at least one visit.
      ++tree[t].visits;
      branch(model, tree, t, test, config.branch_depth, config, counter);
      if (config.cache_successors) cache.resize(tree.size());
    } catch (const BudgetExhausted&) {
      break;
    }
    ++out.rollouts;

    // A deterministic model cannot yield anything new below a node whose
    // subtree is complete; mark completion from the end node upwards.
    tree[t].exhausted = true;
    for (NodeId p = tree[t].parent; p != kNoNode; p = tree[p].parent) {
      const SearchNode& n = tree[p];
      if (n.children.size() < n.width) break;
      bool done = true;
      for (NodeId c : n.children) done = done && tree[c].exhausted;
      if (!done) break;
      tree[p].exhausted = true;
    }
  }

  EmpowermentReport& report = out.report;
  report.horizon = config.horizon;
  report.actions.assign(root_actions.begin(), root_actions.end());
  report.counts.assign(root_actions.size(), 0);
  for (std::size_t i = 0; i < root_actions.size(); ++i) {
    if (auto c = tree.find_child(SearchTree::root(), root_actions[i])) {
      report.counts[i] = tree[*c].states.size();
    }
  }
  report.calls_used = counter.used() - start;

  if (out.rollouts == 0) {
    out.degenerate = true;
    report.degenerate = true;
    out.action = root_actions[rng.below(root_actions.size())];
  } else {
    out.action = report.best_action();
  }
  return out;
}

/// Runs with a counter built from config.budget.
template <ForwardModel M>
SearchOutcome best_action(const M& model, const typename M::State& root_state,
                          const SearchConfig& config) {
  CallCounter counter(config.budget);
  return best_action(model, root_state, config, counter);
}

}  // namespace empower
