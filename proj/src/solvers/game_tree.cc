#include "armac/solvers/game_tree.h"

#include <string>

namespace armac {

GameTree GameTree::build(const Game& game, uint64_t node_cap) {
  GameTree tree;
  tree.descriptor_ = game.descriptor();

  // Iterative depth-first expansion; children of a node are laid out
  // contiguously so the recursion in the solvers can index them directly.
  struct WorkItem {
    std::unique_ptr<State> state;
    int node_id;
  };

  tree.nodes_.push_back(Node{});
  std::vector<WorkItem> stack;
  {
    WorkItem root{game.new_initial_state(), 0};
    Node& n = tree.nodes_[0];
    n.player = root.state->current_player();
    n.action = -1;
    n.chance_prob = 1.0;
    stack.push_back(std::move(root));
  }

  while (!stack.empty()) {
    WorkItem item = std::move(stack.back());
    stack.pop_back();
    State& state = *item.state;
    const int node_id = item.node_id;

    if (state.is_terminal()) {
      Node& n = tree.nodes_[node_id];
      n.returns_offset = static_cast<int>(tree.returns_pool_.size());
      n.truncated = state.is_truncated();
      const auto& r = state.returns();
      tree.returns_pool_.insert(tree.returns_pool_.end(), r.begin(), r.end());
      continue;
    }

    std::vector<Action> actions;
    std::vector<double> probs;
    if (state.is_chance()) {
      for (const auto& [a, p] : state.chance_outcomes()) {
        actions.push_back(a);
        probs.push_back(p);
      }
    } else {
      actions = state.legal_actions();
      ARMAC_CHECK_MSG(!actions.empty(), "empty legal-action set");
      const InfoStateKey key = state.info_state_key(state.current_player());
      auto [it, inserted] = tree.info_state_ids_.emplace(
          key, static_cast<int>(tree.info_states_.size()));
      if (inserted) {
        InfoStateRecord rec;
        rec.key = key;
        rec.player = state.current_player();
        rec.legal = actions;
        tree.info_states_.push_back(std::move(rec));
      } else {
        ARMAC_CHECK_MSG(tree.info_states_[it->second].legal == actions,
                        "legal actions differ within an information state");
      }
      tree.nodes_[node_id].info_state = it->second;
      tree.info_states_[it->second].nodes.push_back(node_id);
    }

    const int first_child = static_cast<int>(tree.nodes_.size());
    if (tree.nodes_.size() + actions.size() > node_cap) {
      throw EnumerationCapError(
          "game tree exceeds the enumeration cap of " +
          std::to_string(node_cap) + " nodes");
    }
    tree.nodes_[node_id].first_child = first_child;
    tree.nodes_[node_id].num_children = static_cast<int>(actions.size());
    tree.nodes_.resize(tree.nodes_.size() + actions.size());

    // Push children in reverse so the depth-first order visits them in
    // ascending action order (deterministic discovery order for interning).
    for (int k = static_cast<int>(actions.size()) - 1; k >= 0; --k) {
      WorkItem child{state.clone(), first_child + k};
      child.state->apply_action(actions[k]);
      Node& n = tree.nodes_[first_child + k];
      n.player = child.state->current_player();
      n.action = actions[k];
      n.chance_prob = probs.empty() ? 1.0 : probs[k];
      n.parent = node_id;
      stack.push_back(std::move(child));
    }
  }
  return tree;
}

int GameTree::info_state_id(const InfoStateKey& key) const {
  auto it = info_state_ids_.find(key);
  return it == info_state_ids_.end() ? -1 : it->second;
}

std::vector<ActionDistribution> GameTree::table_to_local(
    const PolicyTable& t) const {
  std::vector<ActionDistribution> local(info_states_.size());
  for (size_t s = 0; s < info_states_.size(); ++s) {
    local[s] = t.get(info_states_[s].key,
                     static_cast<int>(info_states_[s].legal.size()));
  }
  return local;
}

PolicyTable GameTree::local_to_table(
    const std::vector<ActionDistribution>& local) const {
  ARMAC_CHECK(local.size() == info_states_.size());
  PolicyTable t;
  for (size_t s = 0; s < info_states_.size(); ++s) {
    t.set(info_states_[s].key, local[s]);
  }
  return t;
}

}  // namespace armac
