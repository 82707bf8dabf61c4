// Finite-profile predicates: backward induction, finite rationality, and
// exhaustive enumeration of all choice assignments of a game template.
#pragma once

#include <cstddef>
#include <vector>

#include "stratprof/profile.hpp"

namespace stratprof {

// Construction of a FiniteProfile from a cyclic graph.
class NotFiniteError : public Error {
 public:
  using Error::Error;
};

// Enumeration or witness search over more internal nodes than the bound.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A profile whose reachable graph is acyclic; validated at construction.
class FiniteProfile {
 public:
  explicit FiniteProfile(Profile s);

  const Profile& profile() const { return s_; }

  // Reachable nodes with every child before its parents; root comes last.
  const std::vector<NodeId>& topo_order() const { return topo_; }

  // Reachable internal nodes, in topo_order order.
  const std::vector<NodeId>& internal_nodes() const { return internals_; }

 private:
  Profile s_;
  std::vector<NodeId> topo_;
  std::vector<NodeId> internals_;
};

// The underlying game of a finite profile; choices are present but ignored.
// Two profiles instantiate the same template iff same_game holds.
using GameTemplate = FiniteProfile;

// Backward induction: at every node the owner's choice weakly maximizes the
// owner's utility given the values of both subprofiles.
bool bi(const FiniteProfile& s);

// Which subprofile the rationality recursion descends into once a witness for
// the current node is found: the original profile's chosen child (literal
// reading, default) or the witness's chosen child.
enum class WitnessReading { OriginalChild, WitnessChild };

inline constexpr std::size_t kEnumerationBound = 20;

// Finite rationality: at every node along the chosen path there is a profile
// of the same game, sharing that node's choice, satisfying bi. The witness
// space is every choice assignment of the node's reachable subgraph.
// Throws TooLargeError when a witness search would exceed `bound` internal
// nodes.
bool rat_f(const FiniteProfile& s,
           WitnessReading reading = WitnessReading::OriginalChild,
           std::size_t bound = kEnumerationBound);

// All 2^k choice assignments of the template's graph (k = reachable internal
// nodes), each same_game-equal to the template. Throws TooLargeError when
// k > bound.
std::vector<FiniteProfile> enumerate_profiles(const GameTemplate& g,
                                              std::size_t bound = kEnumerationBound);

// True iff the bi and rat_f profile sets of the template coincide over
// enumerate_profiles(g).
bool aumann_equivalence(const GameTemplate& g, std::size_t bound = kEnumerationBound);

}  // namespace stratprof
