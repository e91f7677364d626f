#include "empower/search_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace empower {

void SearchConfig::validate() const {
  if (!(exploration > 0.0)) {
    throw std::invalid_argument("exploration constant must be positive");
  }
  if (branch_depth >= tree_depth()) {
    throw std::invalid_argument("branch depth must be below horizon + 1");
  }
}

bool ReachabilitySet::contains(SensorToken token) const {
  return std::binary_search(tokens_.begin(), tokens_.end(), token);
}

bool ReachabilitySet::insert(SensorToken token) {
  const auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
  if (it != tokens_.end() && *it == token) return false;
  tokens_.insert(it, token);
  return true;
}

SearchTree::SearchTree() { nodes_.emplace_back(); }

NodeId SearchTree::add_child(NodeId parent, ActionId action) {
  const auto id = static_cast<NodeId>(nodes_.size());
  SearchNode child;
  child.action = action;
  child.parent = parent;
  child.depth = nodes_[parent].depth + 1;
  nodes_.push_back(std::move(child));
  nodes_[parent].children.push_back(id);
  return id;
}

std::optional<NodeId> SearchTree::find_child(NodeId parent, ActionId action) const {
  for (NodeId c : nodes_[parent].children) {
    if (nodes_[c].action == action) return c;
  }
  return std::nullopt;
}

void add_state(SearchTree& tree, NodeId node, SensorToken token, bool novelty) {
  while (node != kNoNode) {
    SearchNode& n = tree[node];
    if (!n.states.insert(token)) return;
    if (novelty && n.parent != kNoNode && !tree[n.parent].states.contains(token)) {
      ++n.unique;
    }
    node = n.parent;
  }
}

double uct_value(const SearchNode& child, const SearchNode& root,
                 const SearchConfig& config) {
  const auto visits = static_cast<double>(child.visits);
  double found = static_cast<double>(child.states.size());
  if (config.novelty) found += static_cast<double>(child.unique);
  return found / visits +
         config.exploration *
             std::sqrt(std::log(static_cast<double>(root.visits)) / visits);
}

NodeId best_child(const SearchTree& tree, NodeId node, const SearchConfig& config) {
  const SearchNode& root = tree[SearchTree::root()];
  NodeId best = kNoNode;
  double best_value = 0.0;
  for (NodeId c : tree[node].children) {
    const double v = uct_value(tree[c], root, config);
    if (best == kNoNode || v > best_value ||
        (v == best_value && *tree[c].action < *tree[best].action)) {
      best = c;
      best_value = v;
    }
  }
  if (best == kNoNode) throw std::logic_error("best_child on a childless node");
  return best;
}

ActionId random_unexpanded_action(const SearchTree& tree, NodeId node,
                                  std::span<const ActionId> actions, Rng& rng) {
  std::vector<ActionId> open;
  open.reserve(actions.size());
  for (ActionId a : actions) {
    if (!tree.find_child(node, a)) open.push_back(a);
  }
  if (open.empty()) throw std::logic_error("node has no unexpanded action");
  return open[rng.below(open.size())];
}

nlohmann::json dump_root_children(const SearchTree& tree) {
  std::vector<NodeId> kids = tree[SearchTree::root()].children;
  std::sort(kids.begin(), kids.end(),
            [&](NodeId a, NodeId b) { return *tree[a].action < *tree[b].action; });
  nlohmann::json out = nlohmann::json::array();
  for (NodeId c : kids) {
    const SearchNode& n = tree[c];
    out.push_back({{"action", *n.action},
                   {"visits", n.visits},
                   {"states", n.states.size()},
                   {"unique", n.unique}});
  }
  return out;
}

}  // namespace empower
