// Fixpoint evaluation of node predicates over profile graphs, and the
// predicates built from it: convergence (least fixpoint), always-convergence,
// divergence (greatest fixpoints), local equilibrium (PE) and subgame-perfect
// equilibrium (PE everywhere).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratprof/profile.hpp"

namespace stratprof {

// Set of node ids of one profile's store.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe, false) {}

  bool contains(NodeId id) const { return id < bits_.size() && bits_[id]; }
  void insert(NodeId id) { bits_[id] = true; }
  void erase(NodeId id) { bits_[id] = false; }
  std::size_t count() const;
  std::size_t universe() const { return bits_.size(); }
  std::vector<NodeId> ids() const;

  friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.bits_ == b.bits_; }
  // a is a subset of b.
  bool subset_of(const NodeSet& b) const;

 private:
  std::vector<bool> bits_;
};

// One monotone step of a predicate definition: may this node be in the set,
// assuming membership as given? Monotone in the assumed set.
using LocalRule = std::function<bool(const Profile&, NodeId, const NodeSet&)>;

// Least fixpoint over the nodes reachable from the root: start empty, add
// nodes the rule admits until stable (worklist; result is order-independent
// for monotone rules). `order` optionally fixes the initial worklist order.
NodeSet lfp_eval(const LocalRule& rule, const Profile& s,
                 const std::vector<NodeId>& order = {});

// Greatest fixpoint over the reachable nodes: start full, remove nodes the
// rule rejects until stable.
NodeSet gfp_eval(const LocalRule& rule, const Profile& s,
                 const std::vector<NodeId>& order = {});

// The rule of convergence: a leaf, or an internal node whose chosen child
// already converges.
bool convergence_rule(const Profile& s, NodeId id, const NodeSet& assumed);
// The rule of divergence: an internal node whose chosen child still diverges.
bool divergence_rule(const Profile& s, NodeId id, const NodeSet& assumed);

// Nodes whose chosen path reaches a leaf.
NodeSet convergent_set(const Profile& s);
bool convergent(const Profile& s);

// Nodes all of whose reachable descendants converge.
NodeSet always_convergent_set(const Profile& s);
bool always_convergent(const Profile& s);

// Nodes whose chosen path never reaches a leaf.
NodeSet divergent_set(const Profile& s);
bool divergent(const Profile& s);

// Utility assignments of every convergent reachable node (undefined
// elsewhere), computed along chosen paths.
std::vector<std::optional<std::vector<Rational>>> node_utilities(const Profile& s);

// Local equilibrium at the root: the subprofile is always-convergent and the
// owner's chosen-child utility is at least the other child's.
bool pe(const Profile& s);
NodeSet pe_set(const Profile& s);

// PE at every reachable node.
bool spe(const Profile& s);
NodeSet spe_set(const Profile& s);

// Three-valued answer for bounded decision procedures.
struct Verdict {
  enum Kind { Holds, Fails, UnknownAtBound } kind = Fails;
  std::size_t bound = 0;  // meaningful for UnknownAtBound
  std::string detail;

  bool definite() const { return kind != UnknownAtBound; }
  std::string str() const;

  static Verdict holds(std::string detail = "") { return {Holds, 0, std::move(detail)}; }
  static Verdict fails(std::string detail = "") { return {Fails, 0, std::move(detail)}; }
  static Verdict unknown(std::size_t bound, std::string detail = "") {
    return {UnknownAtBound, bound, std::move(detail)};
  }
};

// Path rationality over the profile's own game graph: at every node along the
// chosen path there is a choice reassignment of that node's subgraph which
// keeps the node's choice and is subgame-perfect. Witnesses range over
// reassignments of the given graph (regular strategies); the search is
// exhaustive, bounded by `max_internal` reassignable nodes per subgraph.
Verdict rat_inf(const Profile& s, std::size_t max_internal = 12);

}  // namespace stratprof
