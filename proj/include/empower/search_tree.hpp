#pragma once

// Tree storage and the model-independent pieces of the empowerment UCT
// search: reachability-set propagation, the selection value and the
// expansion draw.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "empower/forward_model.hpp"
#include "empower/rng.hpp"

namespace empower {

struct SearchConfig {
  /// Empowerment steps n.  The tree is n + 1 levels deep because the first
  /// level holds the successor states being compared.
  std::size_t horizon = 4;
  /// Credit children for tokens their parent had not seen yet.
  bool novelty = false;
  /// Record the sensor token of every newly expanded node, not only of
  /// the final one.
  bool aggregated = false;
  /// Levels expanded exhaustively at the end of every rollout (0 = off).
  std::size_t branch_depth = 0;
  double exploration = 0.01;
  /// Forward-call budget; nullopt runs until the tree is exhausted.
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  /// Keep successor states in the tree so re-descending an expanded edge is
  /// free.  Off by default: every descent re-applies its actions.
  bool cache_successors = false;

  std::size_t tree_depth() const { return horizon + 1; }
  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// Sorted-vector set of sensor tokens.  Reachability sets stay small (they
/// are bounded by the number of distinct sensor values), so a flat layout
/// beats node-based sets here.
class ReachabilitySet {
 public:
  bool contains(SensorToken token) const;
  /// Returns false if the token was already present.
  bool insert(SensorToken token);
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::span<const SensorToken> tokens() const { return tokens_; }

 private:
  std::vector<SensorToken> tokens_;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

struct SearchNode {
  std::optional<ActionId> action;  // empty for the root
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  std::uint64_t visits = 0;
  ReachabilitySet states;
  std::uint64_t unique = 0;
  std::uint32_t depth = 0;
  /// Number of actions available at this node's state, once visited.
  std::uint32_t width = 0;
  /// Nothing below this node can change any more.
  bool exhausted = false;
};

class SearchTree {
 public:
  SearchTree();

  static constexpr NodeId root() { return 0; }
  SearchNode& operator[](NodeId id) { return nodes_[id]; }
  const SearchNode& operator[](NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  NodeId add_child(NodeId parent, ActionId action);
  std::optional<NodeId> find_child(NodeId parent, ActionId action) const;

 private:
  std::vector<SearchNode> nodes_;
};

/// Inserts `token` at `node` and walks it up the parent chain, stopping at
/// the first node that already holds it.  With novelty on, a node whose
/// parent lacked the token at that moment gets its unique counter bumped.
void add_state(SearchTree& tree, NodeId node, SensorToken token, bool novelty);

/// (|states| + unique) / visits + c * sqrt(ln(root visits) / visits), the
/// unique term only when novelty is on.  Requires child.visits >= 1.
double uct_value(const SearchNode& child, const SearchNode& root,
                 const SearchConfig& config);

/// Child with the highest uct_value; ties go to the lowest ActionId.
NodeId best_child(const SearchTree& tree, NodeId node, const SearchConfig& config);

/// Uniform draw among `actions` that have no child under `node` yet.
ActionId random_unexpanded_action(const SearchTree& tree, NodeId node,
                                  std::span<const ActionId> actions, Rng& rng);

/// Root children as JSON: action, visits, states, unique.
nlohmann::json dump_root_children(const SearchTree& tree);

}  // namespace empower
