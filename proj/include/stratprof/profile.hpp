// Strategy profiles as first-class objects: rooted graphs of dyadic decision
// nodes and utility leaves. Cycles encode infinite (rational-tree) profiles;
// the underlying game is the profile with choices erased, compared up to
// bisimulation. Profiles are immutable; subprofiles share the node store.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stratprof/rational.hpp"

namespace stratprof {

struct InvalidProfileError : Error {
  using Error::Error;
};
struct InvalidNodeError : Error {
  using Error::Error;
};
// Raised when a utility assignment is demanded of a profile whose chosen path
// never reaches a leaf.
struct DivergentError : Error {
  using Error::Error;
};

using Agent = std::string;
using NodeId = std::uint32_t;

enum class Choice : std::uint8_t { One = 1, Two = 2 };

inline Choice other_choice(Choice c) { return c == Choice::One ? Choice::Two : Choice::One; }

// Total map from the profile's agents to exact utilities.
using UtilityAssignment = std::map<Agent, Rational>;

class Profile {
 public:
  struct Node {
    bool leaf = false;
    std::vector<Rational> utilities;  // leaf: aligned to Store::agents
    std::uint32_t owner = 0;          // internal: index into Store::agents
    Choice choice = Choice::One;      // internal
    NodeId child1 = 0, child2 = 0;    // internal
  };

  struct Store {
    std::vector<Agent> agents;  // sorted, unique
    std::vector<Node> nodes;
  };

  Profile() = default;
  Profile(std::shared_ptr<const Store> store, NodeId root);

  NodeId root() const { return root_; }
  std::size_t size() const { return store_->nodes.size(); }
  const std::vector<Agent>& agents() const { return store_->agents; }

  bool is_leaf(NodeId id) const { return node(id).leaf; }
  const Agent& owner(NodeId id) const;
  Choice choice(NodeId id) const;
  NodeId child(NodeId id, Choice c) const;
  NodeId chosen_child(NodeId id) const { return child(id, choice(id)); }
  UtilityAssignment leaf_utilities(NodeId id) const;
  // Leaf utility for one agent, by agent index; avoids building maps in hot paths.
  const Rational& leaf_utility(NodeId id, std::uint32_t agent_index) const;
  std::uint32_t owner_index(NodeId id) const;
  std::optional<std::uint32_t> agent_index(const Agent& a) const;

  // Nodes reachable from the root through both children, in BFS order.
  std::vector<NodeId> reachable() const;

  const Node& node(NodeId id) const;
  const std::shared_ptr<const Store>& store() const { return store_; }

  // Same store, new root.
  Profile subprofile(NodeId at) const;

  // Copy of this profile with the given choice at one internal node.
  Profile with_choice(NodeId at, Choice c) const;

 private:
  std::shared_ptr<const Store> store_;
  NodeId root_ = 0;
};

// Graph-building interface; supports forward references and cycles.
// Agent set = union of leaf keys and owners; every leaf must assign a utility
// to every agent of the profile.
class ProfileBuilder {
 public:
  NodeId reserve();
  NodeId add_leaf(const UtilityAssignment& u);
  NodeId add_internal(const Agent& owner, Choice c, NodeId child1, NodeId child2);
  void define_leaf(NodeId id, const UtilityAssignment& u);
  void define_internal(NodeId id, const Agent& owner, Choice c, NodeId child1, NodeId child2);
  Profile finish(NodeId root);

 private:
  struct Pending {
    bool defined = false;
    bool leaf = false;
    UtilityAssignment utilities;
    Agent owner;
    Choice choice = Choice::One;
    NodeId child1 = 0, child2 = 0;
  };
  std::vector<Pending> pending_;
};

// Single-leaf profile. The assignment must be nonempty.
Profile build_leaf(const UtilityAssignment& u);

// Tree composition: new root owned by `owner` choosing `c`, children are the
// roots of s1 and s2 (stores are merged). Both children must have the same
// agent set, which must contain `owner`.
Profile build_internal(const Agent& owner, Choice c, const Profile& s1, const Profile& s2);

// Utilities of the leaf reached by following chosen children from the root.
// Throws DivergentError when the chosen path re-enters a visited node.
UtilityAssignment utility_assignment(const Profile& s);

// True when the profiles denote the same game: bisimilar graphs comparing
// owners and leaf utilities but ignoring choices.
bool same_game(const Profile& a, const Profile& b);

}  // namespace stratprof
