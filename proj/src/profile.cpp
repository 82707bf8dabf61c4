#include "stratprof/profile.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace stratprof {

Profile::Profile(std::shared_ptr<const Store> store, NodeId root)
    : store_(std::move(store)), root_(root) {
  if (!store_) throw InvalidProfileError("profile without a node store");
  if (root_ >= store_->nodes.size()) throw InvalidNodeError("root id out of range");
}

const Profile::Node& Profile::node(NodeId id) const {
  if (!store_ || id >= store_->nodes.size())
    throw InvalidNodeError("node id " + std::to_string(id) + " out of range");
  return store_->nodes[id];
}

const Agent& Profile::owner(NodeId id) const {
  const Node& n = node(id);
  if (n.leaf) throw InvalidNodeError("leaf has no owner");
  return store_->agents[n.owner];
}

std::uint32_t Profile::owner_index(NodeId id) const {
  const Node& n = node(id);
  if (n.leaf) throw InvalidNodeError("leaf has no owner");
  return n.owner;
}

Choice Profile::choice(NodeId id) const {
  const Node& n = node(id);
  if (n.leaf) throw InvalidNodeError("leaf has no choice");
  return n.choice;
}

NodeId Profile::child(NodeId id, Choice c) const {
  const Node& n = node(id);
  if (n.leaf) throw InvalidNodeError("leaf has no children");
  return c == Choice::One ? n.child1 : n.child2;
}

UtilityAssignment Profile::leaf_utilities(NodeId id) const {
  const Node& n = node(id);
  if (!n.leaf) throw InvalidNodeError("internal node has no utilities");
  UtilityAssignment u;
  for (std::size_t i = 0; i < store_->agents.size(); ++i) u[store_->agents[i]] = n.utilities[i];
  return u;
}

const Rational& Profile::leaf_utility(NodeId id, std::uint32_t agent_index) const {
  const Node& n = node(id);
  if (!n.leaf) throw InvalidNodeError("internal node has no utilities");
  if (agent_index >= n.utilities.size()) throw InvalidNodeError("agent index out of range");
  return n.utilities[agent_index];
}

std::optional<std::uint32_t> Profile::agent_index(const Agent& a) const {
  const auto& ag = store_->agents;
  auto it = std::lower_bound(ag.begin(), ag.end(), a);
  if (it == ag.end() || *it != a) return std::nullopt;
  return static_cast<std::uint32_t>(it - ag.begin());
}

std::vector<NodeId> Profile::reachable() const {
  std::vector<NodeId> order;
  std::vector<bool> seen(store_->nodes.size(), false);
  std::deque<NodeId> queue{root_};
  seen[root_] = true;
  while (!queue.empty()) {
    NodeId id = queue.front();
    queue.pop_front();
    order.push_back(id);
    const Node& n = store_->nodes[id];
    if (n.leaf) continue;
    for (NodeId c : {n.child1, n.child2}) {
      if (!seen[c]) {
        seen[c] = true;
        queue.push_back(c);
      }
    }
  }
  return order;
}

Profile Profile::subprofile(NodeId at) const {
  if (at >= store_->nodes.size()) throw InvalidNodeError("subprofile id out of range");
  return Profile(store_, at);
}

Profile Profile::with_choice(NodeId at, Choice c) const {
  const Node& n = node(at);
  if (n.leaf) throw InvalidNodeError("cannot set a choice on a leaf");
  auto store = std::make_shared<Store>(*store_);
  store->nodes[at].choice = c;
  return Profile(std::move(store), root_);
}

NodeId ProfileBuilder::reserve() {
  pending_.emplace_back();
  return static_cast<NodeId>(pending_.size() - 1);
}

NodeId ProfileBuilder::add_leaf(const UtilityAssignment& u) {
  NodeId id = reserve();
  define_leaf(id, u);
  return id;
}

NodeId ProfileBuilder::add_internal(const Agent& owner, Choice c, NodeId child1, NodeId child2) {
  NodeId id = reserve();
  define_internal(id, owner, c, child1, child2);
  return id;
}

void ProfileBuilder::define_leaf(NodeId id, const UtilityAssignment& u) {
  if (id >= pending_.size()) throw InvalidNodeError("undeclared node id");
  if (pending_[id].defined) throw InvalidProfileError("node defined twice");
  if (u.empty()) throw InvalidProfileError("leaf with empty utility assignment");
  pending_[id].defined = true;
  pending_[id].leaf = true;
  pending_[id].utilities = u;
}

void ProfileBuilder::define_internal(NodeId id, const Agent& owner, Choice c, NodeId child1,
                                     NodeId child2) {
  if (id >= pending_.size()) throw InvalidNodeError("undeclared node id");
  if (pending_[id].defined) throw InvalidProfileError("node defined twice");
  if (owner.empty()) throw InvalidProfileError("internal node with empty owner label");
  Pending& p = pending_[id];
  p.defined = true;
  p.leaf = false;
  p.owner = owner;
  p.choice = c;
  p.child1 = child1;
  p.child2 = child2;
}

Profile ProfileBuilder::finish(NodeId root) {
  if (root >= pending_.size()) throw InvalidNodeError("root id out of range");
  std::set<Agent> agent_set;
  const UtilityAssignment* first_leaf = nullptr;
  for (const Pending& p : pending_) {
    if (!p.defined) throw InvalidProfileError("reserved node left undefined");
    if (p.leaf) {
      if (!first_leaf) first_leaf = &p.utilities;
      for (const auto& [a, _] : p.utilities) agent_set.insert(a);
    } else {
      agent_set.insert(p.owner);
      if (p.child1 >= pending_.size() || p.child2 >= pending_.size())
        throw InvalidProfileError("child id out of range");
    }
  }
  auto store = std::make_shared<Profile::Store>();
  store->agents.assign(agent_set.begin(), agent_set.end());
  for (const Pending& p : pending_) {
    Profile::Node n;
    n.leaf = p.leaf;
    if (p.leaf) {
      // Totality: every leaf carries a value for every agent of the profile.
      if (p.utilities.size() != store->agents.size())
        throw InvalidProfileError("leaf assignment does not cover every agent");
      for (const Agent& a : store->agents) {
        auto it = p.utilities.find(a);
        if (it == p.utilities.end())
          throw InvalidProfileError("leaf assignment missing agent '" + a + "'");
        n.utilities.push_back(it->second);
      }
    } else {
      auto it = std::lower_bound(store->agents.begin(), store->agents.end(), p.owner);
      n.owner = static_cast<std::uint32_t>(it - store->agents.begin());
      n.choice = p.choice;
      n.child1 = p.child1;
      n.child2 = p.child2;
    }
    store->nodes.push_back(std::move(n));
  }
  return Profile(std::move(store), root);
}

Profile build_leaf(const UtilityAssignment& u) {
  ProfileBuilder b;
  return b.finish(b.add_leaf(u));
}

Profile build_internal(const Agent& owner, Choice c, const Profile& s1, const Profile& s2) {
  if (s1.agents() != s2.agents())
    throw InvalidProfileError("cannot compose profiles with different agent sets");
  ProfileBuilder b;
  // Copy both stores; remap ids.
  auto copy = [&b](const Profile& p) {
    std::vector<NodeId> remap(p.size());
    for (NodeId id = 0; id < p.size(); ++id) remap[id] = b.reserve();
    for (NodeId id = 0; id < p.size(); ++id) {
      if (p.is_leaf(id)) {
        b.define_leaf(remap[id], p.leaf_utilities(id));
      } else {
        b.define_internal(remap[id], p.owner(id), p.choice(id), remap[p.child(id, Choice::One)],
                          remap[p.child(id, Choice::Two)]);
      }
    }
    return remap[p.root()];
  };
  NodeId r1 = copy(s1);
  NodeId r2 = copy(s2);
  return b.finish(b.add_internal(owner, c, r1, r2));
}

UtilityAssignment utility_assignment(const Profile& s) {
  std::vector<bool> visited(s.size(), false);
  NodeId at = s.root();
  while (!s.is_leaf(at)) {
    if (visited[at]) throw DivergentError("chosen path never reaches a leaf");
    visited[at] = true;
    at = s.chosen_child(at);
  }
  return s.leaf_utilities(at);
}

bool same_game(const Profile& a, const Profile& b) {
  // Greatest bisimulation on the product of the reachable graphs, choices
  // ignored. Start from all locally-compatible pairs and prune.
  std::vector<NodeId> ra = a.reachable(), rb = b.reachable();
  std::vector<std::int32_t> pos_a(a.size(), -1), pos_b(b.size(), -1);
  for (std::size_t i = 0; i < ra.size(); ++i) pos_a[ra[i]] = static_cast<std::int32_t>(i);
  for (std::size_t i = 0; i < rb.size(); ++i) pos_b[rb[i]] = static_cast<std::int32_t>(i);

  auto compatible = [&](NodeId x, NodeId y) {
    if (a.is_leaf(x) != b.is_leaf(y)) return false;
    if (a.is_leaf(x)) return a.leaf_utilities(x) == b.leaf_utilities(y);
    return a.owner(x) == b.owner(y);
  };

  std::vector<bool> rel(ra.size() * rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j) rel[i * rb.size() + j] = compatible(ra[i], rb[j]);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      NodeId x = ra[i];
      if (a.is_leaf(x)) continue;
      for (std::size_t j = 0; j < rb.size(); ++j) {
        std::size_t idx = i * rb.size() + j;
        if (!rel[idx]) continue;
        NodeId y = rb[j];
        auto holds = [&](Choice c) {
          std::int32_t ci = pos_a[a.child(x, c)];
          std::int32_t cj = pos_b[b.child(y, c)];
          return ci >= 0 && cj >= 0 && rel[ci * rb.size() + cj];
        };
        if (!holds(Choice::One) || !holds(Choice::Two)) {
          rel[idx] = false;
          changed = true;
        }
      }
    }
  }
  return rel[pos_a[a.root()] * rb.size() + pos_b[b.root()]];
}

}  // namespace stratprof
