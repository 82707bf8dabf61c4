#include "stratprof/families.hpp"

#include <utility>

namespace stratprof {

namespace {

const Agent kA = "A";
const Agent kB = "B";

UtilityAssignment pair_u(Rational a, Rational b) { return {{kA, a}, {kB, b}}; }

Rational require_integer(const std::map<std::string, Rational>& params, const std::string& key,
                         std::optional<Rational> fallback = std::nullopt) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw BadFamilyError("missing required parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const std::map<std::string, Rational>& params,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) throw BadFamilyError("unknown parameter '" + key + "'");
  }
}

FamilyBundle centipede158() {
  FamilyBundle fb;
  fb.name = "centipede158";
  ProfileBuilder b;
  NodeId la = b.add_leaf(pair_u(1, 2));
  NodeId lb = b.add_leaf(pair_u(0, 1));
  NodeId le = b.add_leaf(pair_u(2, 1));
  NodeId nb = b.add_internal(kB, Choice::One, lb, le);
  NodeId na = b.add_internal(kA, Choice::One, la, nb);
  Profile tmpl = b.finish(na);
  fb.finite_game = tmpl;
  // The example's two displayed profiles: take-take and push-push.
  fb.graph_profiles.emplace("left", tmpl);
  fb.graph_profiles.emplace("right", tmpl.with_choice(na, Choice::Two).with_choice(nb, Choice::Two));
  return fb;
}

FamilyBundle fig1() {
  FamilyBundle fb;
  fb.name = "fig1";
  {
    ProfileBuilder b;
    NodeId n0 = b.reserve(), n1 = b.reserve();
    b.define_internal(n0, kA, Choice::Two, b.add_leaf(pair_u(1, 0)), n1);
    b.define_internal(n1, kB, Choice::Two, b.add_leaf(pair_u(0, 1)), n0);
    fb.graph_profiles.emplace("s_box2", b.finish(n0));
  }
  {
    ProfileBuilder b;
    NodeId n0 = b.reserve(), n1 = b.reserve(), n2 = b.reserve(), n3 = b.reserve();
    b.define_internal(n0, kA, Choice::One, b.add_leaf(pair_u(0, 1)), n1);
    b.define_internal(n1, kB, Choice::Two, b.add_leaf(pair_u(1, 0)), n2);
    b.define_internal(n2, kA, Choice::Two, b.add_leaf(pair_u(0, 1)), n3);
    b.define_internal(n3, kB, Choice::Two, b.add_leaf(pair_u(1, 0)), n2);
    fb.graph_profiles.emplace("s_1box2", b.finish(n0));
  }
  return fb;
}

FamilyBundle infpede() {
  FamilyBundle fb;
  fb.name = "infpede";
  // Even stages: the owner takes 2^(k+2), the other keeps 2^k; owners swap.
  std::vector<std::vector<StageExpr>> classes = {
      {StageExpr::geometric(1, 2, 2), StageExpr::geometric(1, 2, 0)},
      {StageExpr::geometric(1, 2, 1), StageExpr::geometric(1, 2, 3)},
  };
  fb.comb = CombSpec({kA, kB}, {0, 1}, {}, std::move(classes));
  fb.comb_profiles.emplace("p0", CombChoiceWord::always(Move::Take));
  fb.comb_profiles.emplace("d0", CombChoiceWord::always(Move::Push));
  return fb;
}

FamilyBundle omegapede(const std::map<std::string, Rational>& params) {
  reject_unknown(params, {"omega"});
  Rational omega_q = require_integer(params, "omega");
  if (!omega_q.is_integer() || omega_q < Rational(1))
    throw BadFamilyError("omegapede needs an integer parameter omega >= 1");
  long long omega = omega_q.num();
  Rational cap = Rational::pow2(omega);
  FamilyBundle fb;
  fb.name = "omegapede";
  std::vector<std::vector<Rational>> prefix;
  for (long long k = 0; k < omega; ++k) {
    Rational own = k + 2 <= omega ? Rational::pow2(k + 2) : cap;
    Rational other = k <= omega ? Rational::pow2(k) : cap;
    std::uint32_t o = static_cast<std::uint32_t>(k % 2);
    prefix.push_back(o == 0 ? std::vector<Rational>{own, other}
                            : std::vector<Rational>{other, own});
  }
  std::vector<std::vector<StageExpr>> classes = {
      {StageExpr::constant(cap), StageExpr::constant(cap)}};
  fb.comb = CombSpec({kA, kB}, {0, 1}, std::move(prefix), std::move(classes));
  fb.comb_profiles.emplace("allpush", CombChoiceWord::always(Move::Push));
  fb.comb_profiles.emplace("alltake", CombChoiceWord::always(Move::Take));
  fb.comb_profiles.emplace(
      "pushuntilcap",
      CombChoiceWord(std::vector<Move>(static_cast<std::size_t>(omega), Move::Push),
                     {Move::Take}));
  return fb;
}

FamilyBundle zero_one() {
  FamilyBundle fb;
  fb.name = "zero_one";
  std::vector<std::vector<StageExpr>> classes = {
      {StageExpr::constant(0), StageExpr::constant(1)},
      {StageExpr::constant(1), StageExpr::constant(0)},
  };
  fb.comb = CombSpec({kA, kB}, {0, 1}, {}, std::move(classes));
  fb.comb_profiles.emplace("bothpush", CombChoiceWord::always(Move::Push));
  fb.comb_profiles.emplace("a_push_b_take", CombChoiceWord({}, {Move::Push, Move::Take}));
  fb.comb_profiles.emplace("a_take_b_push", CombChoiceWord({}, {Move::Take, Move::Push}));
  return fb;
}

FamilyBundle dollar_auction(const std::map<std::string, Rational>& params) {
  reject_unknown(params, {"pot", "step"});
  Rational pot = require_integer(params, "pot", Rational(100));
  Rational step = require_integer(params, "step", Rational(5));
  if (!(step > Rational(0))) throw BadFamilyError("dollar_auction needs step > 0");
  FamilyBundle fb;
  fb.name = "dollar_auction";
  // Quitting at your n-th turn forfeits your n bets; the other keeps the pot
  // less their own bets so far.
  std::vector<std::vector<StageExpr>> classes = {
      {StageExpr::affine(0, -step), StageExpr::affine(pot, -step)},
      {StageExpr::affine(pot - step, -step), StageExpr::affine(0, -step)},
  };
  fb.comb = CombSpec({kA, kB}, {0, 1}, {}, std::move(classes));
  fb.comb_profiles.emplace("bothpush", CombChoiceWord::always(Move::Push));
  fb.comb_profiles.emplace("a_push_b_take", CombChoiceWord({}, {Move::Push, Move::Take}));
  fb.comb_profiles.emplace("a_take_b_push", CombChoiceWord({}, {Move::Take, Move::Push}));
  return fb;
}

}  // namespace

FamilyBundle build_family(const std::string& name,
                          const std::map<std::string, Rational>& params) {
  if (name == "centipede158") {
    reject_unknown(params, {});
    return centipede158();
  }
  if (name == "fig1") {
    reject_unknown(params, {});
    return fig1();
  }
  if (name == "infpede") {
    reject_unknown(params, {});
    return infpede();
  }
  if (name == "omegapede") return omegapede(params);
  if (name == "zero_one") {
    reject_unknown(params, {});
    return zero_one();
  }
  if (name == "dollar_auction") return dollar_auction(params);
  throw BadFamilyError("unknown family '" + name + "'");
}

GameTemplate unfold(const CombSpec& spec, std::size_t depth, EndingOption ending) {
  if (depth < 1) throw BadFamilyError("unfold needs depth >= 1");
  const auto& agents = spec.agents();
  auto assignment = [&](const std::vector<Rational>& u) {
    UtilityAssignment ua;
    for (std::size_t i = 0; i < agents.size(); ++i) ua[agents[i]] = u[i];
    return ua;
  };

  ProfileBuilder b;
  std::vector<NodeId> spine(depth);
  for (NodeId& id : spine) id = b.reserve();

  NodeId continuation = 0;
  std::vector<Rational> cut = spec.take_utilities(depth);
  switch (ending) {
    case EndingOption::TakeAll:
      continuation = b.add_leaf(assignment(cut));
      break;
    case EndingOption::Nothing: {
      UtilityAssignment zeros;
      for (const Agent& a : agents) zeros[a] = Rational(0);
      continuation = b.add_leaf(zeros);
      break;
    }
    case EndingOption::Choice2b: {
      std::uint32_t o = spec.owner_at(depth);
      Rational share = cut[o] / Rational(2);
      UtilityAssignment shared;
      for (const Agent& a : agents) shared[a] = share;
      NodeId take = b.add_leaf(assignment(cut));
      NodeId split = b.add_leaf(shared);
      continuation = b.add_internal(agents[o], Choice::One, take, split);
      break;
    }
  }

  for (std::size_t k = depth; k-- > 0;) {
    NodeId leaf = b.add_leaf(assignment(spec.take_utilities(k)));
    NodeId next = k + 1 < depth ? spine[k + 1] : continuation;
    b.define_internal(spine[k], agents[spec.owner_at(k)], Choice::One, leaf, next);
  }
  return GameTemplate(b.finish(spine[0]));
}

}  // namespace stratprof
