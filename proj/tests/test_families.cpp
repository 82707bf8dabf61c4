#include <vector>

#include "doctest.h"
#include "stratprof/comb.hpp"
#include "stratprof/engine.hpp"
#include "stratprof/families.hpp"
#include "stratprof/finite.hpp"

using namespace stratprof;

namespace {

// Spine nodes of an unfolded comb: stage j's node, following push children.
std::vector<NodeId> spine_of(const Profile& p, std::size_t depth) {
  std::vector<NodeId> spine;
  NodeId at = p.root();
  for (std::size_t j = 0; j < depth; ++j) {
    spine.push_back(at);
    at = p.child(at, Choice::Two);
  }
  return spine;
}

}  // namespace

TEST_CASE("unknown names and bad parameters are rejected") {
  CHECK_THROWS_AS(build_family("nosuch"), BadFamilyError);
  CHECK_THROWS_AS(build_family("omegapede"), BadFamilyError);  // omega required
  CHECK_THROWS_AS(build_family("omegapede", {{"omega", Rational(0)}}), BadFamilyError);
  CHECK_THROWS_AS(build_family("omegapede", {{"omega", Rational(1, 2)}}), BadFamilyError);
  CHECK_THROWS_AS(build_family("dollar_auction", {{"step", Rational(0)}}), BadFamilyError);
  CHECK_THROWS_AS(build_family("infpede", {{"pot", Rational(3)}}), BadFamilyError);
}

TEST_CASE("two-stage centipede bundle") {
  FamilyBundle fb = build_family("centipede158");
  REQUIRE(fb.graph_profiles.count("left"));
  REQUIRE(fb.graph_profiles.count("right"));
  const Profile& left = fb.graph_profiles.at("left");
  const Profile& right = fb.graph_profiles.at("right");
  CHECK(same_game(left, right));
  REQUIRE(fb.finite_game.has_value());
  CHECK(same_game(*fb.finite_game, left));

  CHECK(utility_assignment(left).at("A") == Rational(1));
  CHECK(utility_assignment(left).at("B") == Rational(2));
  CHECK(utility_assignment(right).at("A") == Rational(2));
  CHECK(utility_assignment(right).at("B") == Rational(1));

  // Both displayed profiles are backward-induction equilibria.
  CHECK(bi(FiniteProfile(left)));
  CHECK(bi(FiniteProfile(right)));
  CHECK(spe(left));
  CHECK(spe(right));
}

TEST_CASE("cyclic demonstration graphs") {
  FamilyBundle fb = build_family("fig1");
  const Profile& sbox = fb.graph_profiles.at("s_box2");
  const Profile& s1box = fb.graph_profiles.at("s_1box2");
  CHECK(divergent(sbox));
  CHECK_FALSE(convergent(sbox));
  CHECK_FALSE(spe(sbox));
  CHECK(convergent(s1box));
  CHECK_FALSE(always_convergent(s1box));
  CHECK_FALSE(divergent(s1box));
}

TEST_CASE("infinite centipede: doubling piles") {
  FamilyBundle fb = build_family("infpede");
  REQUIRE(fb.comb.has_value());
  const CombSpec& spec = *fb.comb;
  CHECK(spec.take_utilities(0) == std::vector<Rational>{4, 1});
  CHECK(spec.take_utilities(1) == std::vector<Rational>{2, 8});
  CHECK(spec.take_utilities(2) == std::vector<Rational>{16, 4});
  CHECK(spec.take_utilities(3) == std::vector<Rational>{8, 32});
  CHECK(spec.take_utilities(4) == std::vector<Rational>{64, 16});
  CHECK(spec.take_utilities(5) == std::vector<Rational>{32, 128});
  CHECK_FALSE(spec.is_capped());

  const CombChoiceWord& p0 = fb.comb_profiles.at("p0");
  const CombChoiceWord& d0 = fb.comb_profiles.at("d0");
  CHECK(comb_spe(spec, p0).valid());
  CHECK_FALSE(comb_divergent(spec, p0));
  CHECK(comb_divergent(spec, d0));
  CHECK_FALSE(comb_spe(spec, d0).valid());
  CHECK(comb_rat_inf(spec, p0).kind == Verdict::Holds);
  CHECK(comb_rat_inf(spec, d0).kind == Verdict::Fails);
}

TEST_CASE("capped centipede: piles freeze at the cap") {
  FamilyBundle fb = build_family("omegapede", {{"omega", Rational(3)}});
  const CombSpec& spec = *fb.comb;
  CHECK(spec.is_capped());
  CHECK(spec.take_utilities(0) == std::vector<Rational>{4, 1});
  CHECK(spec.take_utilities(1) == std::vector<Rational>{2, 8});
  CHECK(spec.take_utilities(2) == std::vector<Rational>{8, 4});
  CHECK(spec.take_utilities(3) == std::vector<Rational>{8, 8});
  CHECK(spec.take_utilities(4) == std::vector<Rational>{8, 8});
  CHECK(spec.take_utilities(17) == std::vector<Rational>{8, 8});

  CHECK(comb_spe(spec, fb.comb_profiles.at("alltake")).valid());
  CHECK(comb_spe(spec, fb.comb_profiles.at("pushuntilcap")).valid());

  const CombChoiceWord& allpush = fb.comb_profiles.at("allpush");
  CHECK(comb_divergent(spec, allpush));
  CHECK_FALSE(comb_spe(spec, allpush).valid());  // never converges
  CHECK(comb_rat_inf(spec, allpush).kind == Verdict::Holds);

  // The frozen tail makes the profile a rational graph; the graph views agree.
  Profile exported = export_profile(spec, allpush);
  CHECK(divergent(exported));
  CHECK(rat_inf(exported).kind == Verdict::Holds);
}

TEST_CASE("capped centipede at other caps") {
  for (long long omega : {1, 6}) {
    FamilyBundle fb = build_family("omegapede", {{"omega", Rational(omega)}});
    const CombChoiceWord& allpush = fb.comb_profiles.at("allpush");
    CHECK(comb_divergent(*fb.comb, allpush));
    CHECK(comb_rat_inf(*fb.comb, allpush).kind == Verdict::Holds);
    CHECK(divergent(export_profile(*fb.comb, allpush)));
  }
  FamilyBundle one = build_family("omegapede", {{"omega", Rational(1)}});
  CHECK(one.comb->take_utilities(0) == std::vector<Rational>{2, 1});
  CHECK(one.comb->take_utilities(1) == std::vector<Rational>{2, 2});
  CHECK(one.comb->take_utilities(9) == std::vector<Rational>{2, 2});
}

TEST_CASE("constant-stakes game") {
  FamilyBundle fb = build_family("zero_one");
  const CombSpec& spec = *fb.comb;
  CHECK(spec.take_utilities(0) == std::vector<Rational>{0, 1});
  CHECK(spec.take_utilities(1) == std::vector<Rational>{1, 0});
  CHECK(spec.take_utilities(8) == std::vector<Rational>{0, 1});

  CHECK(comb_spe(spec, fb.comb_profiles.at("a_push_b_take")).valid());
  CHECK(comb_spe(spec, fb.comb_profiles.at("a_take_b_push")).valid());
  const CombChoiceWord& bothpush = fb.comb_profiles.at("bothpush");
  CHECK_FALSE(comb_spe(spec, bothpush).valid());
  CHECK(comb_divergent(spec, bothpush));
  CHECK(comb_rat_inf(spec, bothpush).kind == Verdict::Holds);
}

TEST_CASE("escalation game") {
  FamilyBundle fb = build_family("dollar_auction");
  const CombSpec& spec = *fb.comb;
  CHECK(spec.take_utilities(0) == std::vector<Rational>{0, 100});
  CHECK(spec.take_utilities(1) == std::vector<Rational>{95, 0});
  CHECK(spec.take_utilities(2) == std::vector<Rational>{-5, 95});
  CHECK(spec.take_utilities(3) == std::vector<Rational>{90, -5});
  CHECK(spec.take_utilities(4) == std::vector<Rational>{-10, 90});
  CHECK(spec.take_utilities(5) == std::vector<Rational>{85, -10});

  CHECK(comb_spe(spec, fb.comb_profiles.at("a_take_b_push")).valid());
  CHECK(comb_spe(spec, fb.comb_profiles.at("a_push_b_take")).valid());
  const CombChoiceWord& bothpush = fb.comb_profiles.at("bothpush");
  CHECK(comb_divergent(spec, bothpush));
  CHECK(comb_rat_inf(spec, bothpush).kind == Verdict::Holds);

  FamilyBundle small =
      build_family("dollar_auction", {{"pot", Rational(10)}, {"step", Rational(2)}});
  CHECK(small.comb->take_utilities(0) == std::vector<Rational>{0, 10});
  CHECK(small.comb->take_utilities(1) == std::vector<Rational>{8, 0});
  CHECK(small.comb->take_utilities(2) == std::vector<Rational>{-2, 8});
}

TEST_CASE("unfolding cuts the comb at a stage") {
  FamilyBundle fb = build_family("infpede");
  const CombSpec& spec = *fb.comb;

  CHECK_THROWS_AS(unfold(spec, 0, EndingOption::TakeAll), BadFamilyError);

  GameTemplate one = unfold(spec, 1, EndingOption::TakeAll);
  CHECK(one.internal_nodes().size() == 1);
  const Profile& p1 = one.profile();
  CHECK(p1.leaf_utilities(p1.child(p1.root(), Choice::One)) ==
        UtilityAssignment{{"A", Rational(4)}, {"B", Rational(1)}});
  CHECK(p1.leaf_utilities(p1.child(p1.root(), Choice::Two)) ==
        UtilityAssignment{{"A", Rational(2)}, {"B", Rational(8)}});

  // Spine take leaves reproduce the spec's stage utilities exactly.
  GameTemplate five = unfold(spec, 5, EndingOption::TakeAll);
  const Profile& p5 = five.profile();
  std::vector<NodeId> spine = spine_of(p5, 5);
  for (std::size_t j = 0; j < 5; ++j) {
    NodeId take = p5.child(spine[j], Choice::One);
    CHECK(p5.leaf_utility(take, 0) == spec.take_utilities(j)[0]);
    CHECK(p5.leaf_utility(take, 1) == spec.take_utilities(j)[1]);
  }
  CHECK(p5.is_leaf(p5.child(spine[4], Choice::Two)));

  // The zero ending pays nothing at the cut.
  GameTemplate none = unfold(spec, 2, EndingOption::Nothing);
  const Profile& pn = none.profile();
  NodeId cut = pn.child(spine_of(pn, 2)[1], Choice::Two);
  CHECK(pn.leaf_utility(cut, 0) == Rational(0));
  CHECK(pn.leaf_utility(cut, 1) == Rational(0));

  // The shared ending adds one more decision: take, or split evenly.
  GameTemplate shared = unfold(spec, 2, EndingOption::Choice2b);
  const Profile& ps = shared.profile();
  NodeId last = ps.child(spine_of(ps, 2)[1], Choice::Two);
  CHECK_FALSE(ps.is_leaf(last));
  CHECK(ps.owner(last) == "A");  // stage-2 owner
  CHECK(ps.leaf_utility(ps.child(last, Choice::One), 0) == Rational(16));
  CHECK(ps.leaf_utility(ps.child(last, Choice::Two), 0) == Rational(8));
  CHECK(ps.leaf_utility(ps.child(last, Choice::Two), 1) == Rational(8));
}

TEST_CASE("induction forces immediate taking on the doubling comb") {
  FamilyBundle fb = build_family("infpede");
  GameTemplate g = unfold(*fb.comb, 2, EndingOption::Choice2b);
  std::vector<FiniteProfile> all = enumerate_profiles(g);
  CHECK(all.size() == 8);
  std::size_t found = 0;
  for (const FiniteProfile& f : all) {
    if (!bi(f)) continue;
    found++;
    CHECK(f.profile().choice(f.profile().root()) == Choice::One);
  }
  CHECK(found == 1);
}

TEST_CASE("induction tolerates pushing across the frozen region") {
  FamilyBundle fb = build_family("omegapede", {{"omega", Rational(3)}});
  GameTemplate g = unfold(*fb.comb, 6, EndingOption::Nothing);
  std::vector<FiniteProfile> all = enumerate_profiles(g);
  CHECK(all.size() == 64);
  std::size_t count = 0;
  bool pushes_beyond_cap = false;
  for (const FiniteProfile& f : all) {
    if (!bi(f)) continue;
    count++;
    const Profile& p = f.profile();
    std::vector<NodeId> spine = spine_of(p, 6);
    CHECK(p.choice(spine[5]) == Choice::One);  // final take is forced
    for (std::size_t j = 3; j < 5; ++j)
      if (p.choice(spine[j]) == Choice::Two) pushes_beyond_cap = true;
  }
  CHECK(count == 12);
  CHECK(pushes_beyond_cap);
}
