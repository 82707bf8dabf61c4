#include "stratprof/finite.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace stratprof {

namespace {

// Nodes reachable from `at`, children before parents; nullopt on a cycle.
std::optional<std::vector<NodeId>> topo_from(const Profile& s, NodeId at) {
  std::vector<NodeId> topo;
  std::vector<std::uint8_t> color(s.size(), 0);  // 0 white, 1 gray, 2 black
  std::vector<std::pair<NodeId, int>> stack;
  stack.push_back({at, 0});
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    if (next == 0) color[id] = 1;
    if (s.is_leaf(id) || next == 2) {
      color[id] = 2;
      topo.push_back(id);
      stack.pop_back();
      continue;
    }
    NodeId c = s.child(id, next == 0 ? Choice::One : Choice::Two);
    ++next;
    if (color[c] == 1) return std::nullopt;  // back edge
    if (color[c] == 0) stack.push_back({c, 0});
  }
  return topo;
}

// Scratch space for repeated bi evaluations over one store.
struct BiScratch {
  std::vector<NodeId> rep;  // leaf whose utilities the node's chosen path reaches
  std::vector<bool> ok;

  explicit BiScratch(std::size_t n) : rep(n, 0), ok(n, false) {}
};

// Backward induction over `topo` (children first) with choices taken from
// `choice_of` (indexed by NodeId; only internal entries are read).
bool bi_eval(const Profile& s, const std::vector<NodeId>& topo,
             const std::vector<Choice>& choice_of, BiScratch& scratch) {
  for (NodeId id : topo) {
    if (s.is_leaf(id)) {
      scratch.rep[id] = id;
      scratch.ok[id] = true;
      continue;
    }
    Choice c = choice_of[id];
    NodeId chosen = s.child(id, c);
    NodeId other = s.child(id, other_choice(c));
    scratch.rep[id] = scratch.rep[chosen];
    std::uint32_t a = s.owner_index(id);
    scratch.ok[id] = scratch.ok[chosen] && scratch.ok[other] &&
                     s.leaf_utility(scratch.rep[chosen], a) >=
                         s.leaf_utility(scratch.rep[other], a);
  }
  return scratch.ok[topo.back()];
}

std::vector<NodeId> internals_of(const Profile& s, const std::vector<NodeId>& topo) {
  std::vector<NodeId> out;
  for (NodeId id : topo)
    if (!s.is_leaf(id)) out.push_back(id);
  return out;
}

void check_bound(std::size_t k, std::size_t bound) {
  if (k > bound)
    throw TooLargeError("choice enumeration over " + std::to_string(k) +
                        " internal nodes exceeds the bound of " + std::to_string(bound));
}

// Is there a choice assignment of the subgraph at `at`, keeping `fixed` at
// `at`, that satisfies backward induction? When `out_choices` is nonnull the
// first witness's choices are written there.
bool has_bi_witness(const Profile& s, NodeId at, Choice fixed, std::size_t bound,
                    std::vector<Choice>* out_choices = nullptr) {
  auto topo = topo_from(s, at);
  if (!topo) throw NotFiniteError("witness search requires an acyclic subgraph");
  std::vector<NodeId> internals = internals_of(s, *topo);
  check_bound(internals.size(), bound);
  std::vector<NodeId> free_nodes;
  for (NodeId id : internals)
    if (id != at) free_nodes.push_back(id);

  std::vector<Choice> choice_of(s.size(), Choice::One);
  choice_of[at] = fixed;
  BiScratch scratch(s.size());
  std::uint64_t combos = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      choice_of[free_nodes[i]] = (mask >> i) & 1 ? Choice::Two : Choice::One;
    if (bi_eval(s, *topo, choice_of, scratch)) {
      if (out_choices) *out_choices = choice_of;
      return true;
    }
  }
  return false;
}

Profile with_choices(const Profile& s, const std::vector<NodeId>& internals,
                     const std::vector<Choice>& choice_of, NodeId root) {
  auto store = std::make_shared<Profile::Store>(*s.store());
  for (NodeId id : internals) store->nodes[id].choice = choice_of[id];
  return Profile(store, root);
}

// Witness-child reading: the recursion follows the witness's subprofile, so
// each step must materialize the witness before descending.
bool ratf_witness_child(const Profile& s, NodeId at, std::size_t bound) {
  if (s.is_leaf(at)) return true;
  auto topo = topo_from(s, at);
  if (!topo) throw NotFiniteError("witness search requires an acyclic subgraph");
  std::vector<NodeId> internals = internals_of(s, *topo);
  check_bound(internals.size(), bound);
  Choice fixed = s.choice(at);
  std::vector<NodeId> free_nodes;
  for (NodeId id : internals)
    if (id != at) free_nodes.push_back(id);

  std::vector<Choice> choice_of(s.size(), Choice::One);
  choice_of[at] = fixed;
  BiScratch scratch(s.size());
  std::uint64_t combos = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      choice_of[free_nodes[i]] = (mask >> i) & 1 ? Choice::Two : Choice::One;
    if (!bi_eval(s, *topo, choice_of, scratch)) continue;
    Profile witness = with_choices(s, internals, choice_of, at);
    if (ratf_witness_child(witness, witness.chosen_child(at), bound)) return true;
  }
  return false;
}

}  // namespace

FiniteProfile::FiniteProfile(Profile s) : s_(std::move(s)) {
  auto topo = topo_from(s_, s_.root());
  if (!topo) throw NotFiniteError("profile graph has a reachable cycle");
  topo_ = std::move(*topo);
  internals_ = internals_of(s_, topo_);
}

bool bi(const FiniteProfile& s) {
  const Profile& p = s.profile();
  std::vector<Choice> choice_of(p.size(), Choice::One);
  for (NodeId id : s.internal_nodes()) choice_of[id] = p.choice(id);
  BiScratch scratch(p.size());
  return bi_eval(p, s.topo_order(), choice_of, scratch);
}

bool rat_f(const FiniteProfile& s, WitnessReading reading, std::size_t bound) {
  const Profile& p = s.profile();
  if (reading == WitnessReading::WitnessChild)
    return ratf_witness_child(p, p.root(), bound);

  NodeId at = p.root();
  while (!p.is_leaf(at)) {
    if (!has_bi_witness(p, at, p.choice(at), bound)) return false;
    at = p.chosen_child(at);
  }
  return true;
}

std::vector<FiniteProfile> enumerate_profiles(const GameTemplate& g, std::size_t bound) {
  const Profile& p = g.profile();
  const std::vector<NodeId>& internals = g.internal_nodes();
  check_bound(internals.size(), bound);
  std::vector<FiniteProfile> out;
  std::uint64_t combos = std::uint64_t{1} << internals.size();
  out.reserve(combos);
  std::vector<Choice> choice_of(p.size(), Choice::One);
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    for (std::size_t i = 0; i < internals.size(); ++i)
      choice_of[internals[i]] = (mask >> i) & 1 ? Choice::Two : Choice::One;
    out.push_back(FiniteProfile(with_choices(p, internals, choice_of, p.root())));
  }
  return out;
}

bool aumann_equivalence(const GameTemplate& g, std::size_t bound) {
  for (const FiniteProfile& s : enumerate_profiles(g, bound))
    if (bi(s) != rat_f(s, WitnessReading::OriginalChild, bound)) return false;
  return true;
}

}  // namespace stratprof
