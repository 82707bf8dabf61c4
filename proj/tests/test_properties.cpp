#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "profile_gen.hpp"
#include "stratprof/engine.hpp"
#include "stratprof/finite.hpp"
#include "stratprof/textio.hpp"

using namespace stratprof;
using testgen::random_graph;
using testgen::random_tree;

namespace {

std::vector<NodeId> internal_ids(const Profile& s) {
  std::vector<NodeId> out;
  for (NodeId id : s.reachable())
    if (!s.is_leaf(id)) out.push_back(id);
  return out;
}

}  // namespace

TEST_CASE("predicate laws hold on random graph profiles") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 1000; ++trial) {
    Profile s = random_graph(rng);
    CAPTURE(trial);

    NodeSet conv = convergent_set(s), div = divergent_set(s);
    NodeSet ac = always_convergent_set(s);
    NodeSet p = pe_set(s), sp = spe_set(s);

    // Divergence is the exact complement of convergence.
    for (NodeId id : s.reachable()) REQUIRE(conv.contains(id) != div.contains(id));
    REQUIRE(divergent(s) == !convergent(s));

    // Always-convergent nodes are convergent; equilibria are payoff-optimal.
    REQUIRE(ac.subset_of(conv));
    REQUIRE(sp.subset_of(p));
    REQUIRE((spe(s) ? pe(s) : true));

    // A utility assignment exists exactly on convergence.
    bool has_value = true;
    try {
      utility_assignment(s);
    } catch (const DivergentError&) {
      has_value = false;
    }
    REQUIRE(has_value == convergent(s));
  }
}

TEST_CASE("fixpoints are independent of the seed order") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Profile s = random_graph(rng);
    std::vector<NodeId> order = s.reachable();
    std::shuffle(order.begin(), order.end(), rng);
    REQUIRE(lfp_eval(convergence_rule, s, order) == convergent_set(s));
    REQUIRE(gfp_eval(divergence_rule, s, order) == divergent_set(s));
  }
}

TEST_CASE("choices never change the game") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    Profile s = random_graph(rng);
    std::vector<NodeId> ints = internal_ids(s);
    std::uniform_int_distribution<std::size_t> pick(0, ints.size() - 1);
    NodeId at = ints[pick(rng)];
    Profile t = s.with_choice(at, other_choice(s.choice(at)));
    REQUIRE(same_game(s, t));
  }
}

TEST_CASE("equilibrium coincides with induction on finite profiles") {
  std::mt19937 rng(451);
  int nontrivial = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Profile s = random_tree(rng, 6);
    if (!s.is_leaf(s.root())) nontrivial++;
    REQUIRE(spe(s) == bi(FiniteProfile(s)));
  }
  CHECK(nontrivial > 100);  // the generator produces real trees, not just leaves
}

TEST_CASE("serialization round-trips random graphs faithfully") {
  std::mt19937 rng(20240812);
  for (int trial = 0; trial < 300; ++trial) {
    Profile s = random_graph(rng);
    std::string text = serialize_profile(s);
    Profile back = parse_profile(text);
    CAPTURE(trial);
    CAPTURE(text);
    REQUIRE(same_game(back, s));
    REQUIRE(serialize_profile(back) == text);  // names, choices, utilities all stable
    REQUIRE(convergent(back) == convergent(s));
    REQUIRE(spe(back) == spe(s));
  }
}

TEST_CASE("the parser survives arbitrary input") {
  std::mt19937 rng(31337);
  const std::string alphabet = "abAB01:;,()->=.#/ \n\tleafchoose";
  std::uniform_int_distribution<std::size_t> len(0, 60);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  int parsed = 0, rejected = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string doc;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) doc.push_back(alphabet[pick(rng)]);
    try {
      parse_profile(doc);
      parsed++;
    } catch (const ParseError&) {
      rejected++;
    }
  }
  CHECK(parsed + rejected == 2000);
  CHECK(rejected > 0);
}
