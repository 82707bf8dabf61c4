#include "stratprof/engine.hpp"

#include <algorithm>
#include <deque>

namespace stratprof {

std::size_t NodeSet::count() const {
  std::size_t n = 0;
  for (bool b : bits_) n += b;
  return n;
}

std::vector<NodeId> NodeSet::ids() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

bool NodeSet::subset_of(const NodeSet& b) const {
  for (NodeId i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !b.contains(i)) return false;
  return true;
}

namespace {

std::vector<std::vector<NodeId>> reverse_edges(const Profile& s,
                                               const std::vector<NodeId>& reach) {
  std::vector<std::vector<NodeId>> parents(s.size());
  for (NodeId id : reach) {
    if (s.is_leaf(id)) continue;
    parents[s.child(id, Choice::One)].push_back(id);
    parents[s.child(id, Choice::Two)].push_back(id);
  }
  return parents;
}

}  // namespace

NodeSet lfp_eval(const LocalRule& rule, const Profile& s, const std::vector<NodeId>& order) {
  std::vector<NodeId> reach = s.reachable();
  NodeSet in_reach(s.size());
  for (NodeId id : reach) in_reach.insert(id);
  auto parents = reverse_edges(s, reach);

  NodeSet set(s.size());
  std::deque<NodeId> work(order.empty() ? std::deque<NodeId>(reach.begin(), reach.end())
                                        : std::deque<NodeId>(order.begin(), order.end()));
  std::vector<bool> queued(s.size(), true);
  while (!work.empty()) {
    NodeId id = work.front();
    work.pop_front();
    queued[id] = false;
    if (!in_reach.contains(id) || set.contains(id)) continue;
    if (rule(s, id, set)) {
      set.insert(id);
      for (NodeId p : parents[id]) {
        if (!queued[p]) {
          queued[p] = true;
          work.push_back(p);
        }
      }
    }
  }
  return set;
}

NodeSet gfp_eval(const LocalRule& rule, const Profile& s, const std::vector<NodeId>& order) {
  std::vector<NodeId> reach = order.empty() ? s.reachable() : order;
  NodeSet set(s.size());
  for (NodeId id : reach) set.insert(id);
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId id : reach) {
      if (set.contains(id) && !rule(s, id, set)) {
        set.erase(id);
        changed = true;
      }
    }
  }
  return set;
}

bool convergence_rule(const Profile& s, NodeId id, const NodeSet& assumed) {
  if (s.is_leaf(id)) return true;
  return assumed.contains(s.chosen_child(id));
}

bool divergence_rule(const Profile& s, NodeId id, const NodeSet& assumed) {
  if (s.is_leaf(id)) return false;
  return assumed.contains(s.chosen_child(id));
}

NodeSet convergent_set(const Profile& s) { return lfp_eval(convergence_rule, s); }

bool convergent(const Profile& s) { return convergent_set(s).contains(s.root()); }

NodeSet always_convergent_set(const Profile& s) {
  NodeSet conv = convergent_set(s);
  // Box of convergence: remain in the set only while convergent and all
  // children stay in the set.
  return gfp_eval(
      [&conv](const Profile& p, NodeId id, const NodeSet& assumed) {
        if (!conv.contains(id)) return false;
        if (p.is_leaf(id)) return true;
        return assumed.contains(p.child(id, Choice::One)) &&
               assumed.contains(p.child(id, Choice::Two));
      },
      s);
}

bool always_convergent(const Profile& s) { return always_convergent_set(s).contains(s.root()); }

NodeSet divergent_set(const Profile& s) { return gfp_eval(divergence_rule, s); }

bool divergent(const Profile& s) { return divergent_set(s).contains(s.root()); }

std::vector<std::optional<std::vector<Rational>>> node_utilities(const Profile& s) {
  std::vector<std::optional<std::vector<Rational>>> u(s.size());
  NodeSet conv = convergent_set(s);
  // Chosen-child edges restricted to the convergent set are acyclic; resolve
  // by iterating until every convergent node has a value.
  std::vector<NodeId> todo = conv.ids();
  while (!todo.empty()) {
    std::vector<NodeId> next;
    for (NodeId id : todo) {
      if (s.is_leaf(id)) {
        u[id] = s.node(id).utilities;
      } else {
        NodeId c = s.chosen_child(id);
        if (u[c])
          u[id] = u[c];
        else
          next.push_back(id);
      }
    }
    if (next.size() == todo.size()) break;  // unreachable for a true lfp
    todo.swap(next);
  }
  return u;
}

namespace {

// PE at every node of `ac` given precomputed utilities; shared by pe/spe.
NodeSet pe_set_impl(const Profile& s, const NodeSet& ac,
                    const std::vector<std::optional<std::vector<Rational>>>& util) {
  NodeSet out(s.size());
  for (NodeId id : s.reachable()) {
    if (!ac.contains(id)) continue;
    if (s.is_leaf(id)) {
      out.insert(id);
      continue;
    }
    NodeId chosen = s.chosen_child(id);
    NodeId other = s.child(id, other_choice(s.choice(id)));
    std::uint32_t a = s.owner_index(id);
    // Always-convergence of this node implies both children carry utilities.
    if ((*util[chosen])[a] >= (*util[other])[a]) out.insert(id);
  }
  return out;
}

}  // namespace

NodeSet pe_set(const Profile& s) {
  return pe_set_impl(s, always_convergent_set(s), node_utilities(s));
}

bool pe(const Profile& s) { return pe_set(s).contains(s.root()); }

NodeSet spe_set(const Profile& s) {
  NodeSet pes = pe_set(s);
  // Box of PE: every reachable descendant is PE.
  return gfp_eval(
      [&pes](const Profile& p, NodeId id, const NodeSet& assumed) {
        if (!pes.contains(id)) return false;
        if (p.is_leaf(id)) return true;
        return assumed.contains(p.child(id, Choice::One)) &&
               assumed.contains(p.child(id, Choice::Two));
      },
      s);
}

bool spe(const Profile& s) { return spe_set(s).contains(s.root()); }

std::string Verdict::str() const {
  switch (kind) {
    case Holds:
      return "true";
    case Fails:
      return "false";
    default:
      return "unknown@" + std::to_string(bound);
  }
}

namespace {

// Does some choice reassignment of the subgraph rooted at `at` keep `at`'s
// current choice and satisfy spe? Exhaustive over reassignable nodes.
bool has_spe_witness(const Profile& s, NodeId at) {
  Profile sub = s.subprofile(at);
  std::vector<NodeId> internals;
  for (NodeId id : sub.reachable())
    if (!sub.is_leaf(id) && id != at) internals.push_back(id);
  Choice fixed = s.choice(at);
  std::size_t combos = std::size_t{1} << internals.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    auto store = std::make_shared<Profile::Store>(*sub.store());
    for (std::size_t i = 0; i < internals.size(); ++i)
      store->nodes[internals[i]].choice = (mask >> i) & 1 ? Choice::Two : Choice::One;
    store->nodes[at].choice = fixed;
    Profile candidate(store, at);
    if (spe(candidate)) return true;
  }
  return false;
}

}  // namespace

Verdict rat_inf(const Profile& s, std::size_t max_internal) {
  std::vector<bool> visited(s.size(), false);
  NodeId at = s.root();
  while (!s.is_leaf(at)) {
    if (visited[at]) break;  // cycle: every distinct path node has been checked
    visited[at] = true;
    Profile sub = s.subprofile(at);
    std::size_t internal_count = 0;
    for (NodeId id : sub.reachable())
      if (!sub.is_leaf(id)) ++internal_count;
    if (internal_count > max_internal)
      return Verdict::unknown(max_internal, "subgraph exceeds the witness search bound");
    if (!has_spe_witness(s, at))
      return Verdict::fails("no subgame-perfect witness keeps the choice at node " +
                            std::to_string(at));
    at = s.chosen_child(at);
  }
  return Verdict::holds();
}

}  // namespace stratprof
