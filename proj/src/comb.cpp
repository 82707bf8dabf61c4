#include "stratprof/comb.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace stratprof {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigRat to_big(const Rational& r) { return BigRat(BigInt(r.num()), BigInt(r.den())); }

BigRat pow2_big(long long e) {
  if (e >= 0) return BigRat(BigInt(1) << static_cast<unsigned>(e));
  return BigRat(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
}

}  // namespace

// --- CombChoiceWord ---------------------------------------------------------

CombChoiceWord::CombChoiceWord(std::vector<Move> prefix, std::vector<Move> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw InvalidCombError("choice word needs a nonempty period");
}

Move CombChoiceWord::at(std::size_t stage) const {
  if (stage < prefix_.size()) return prefix_[stage];
  return period_[(stage - prefix_.size()) % period_.size()];
}

bool CombChoiceWord::period_has_take() const {
  return std::find(period_.begin(), period_.end(), Move::Take) != period_.end();
}

bool CombChoiceWord::has_take() const {
  return period_has_take() ||
         std::find(prefix_.begin(), prefix_.end(), Move::Take) != prefix_.end();
}

std::optional<std::size_t> CombChoiceWord::next_take(std::size_t from) const {
  for (std::size_t k = from; k < prefix_.size(); ++k)
    if (prefix_[k] == Move::Take) return k;
  std::size_t start = std::max(from, prefix_.size());
  for (std::size_t i = 0; i < period_.size(); ++i)
    if (at(start + i) == Move::Take) return start + i;
  return std::nullopt;
}

// --- StageExpr ---------------------------------------------------------------

StageExpr StageExpr::constant(Rational v) {
  StageExpr e;
  e.c0_ = v;
  return e;
}

StageExpr StageExpr::affine(Rational c0, Rational c1) {
  StageExpr e;
  e.c0_ = c0;
  e.c1_ = c1;
  return e;
}

StageExpr StageExpr::geometric(Rational q, long long a, long long b, Rational c) {
  if (a < 0) throw InvalidCombError("geometric stage rate must be nonnegative");
  StageExpr e;
  e.q_ = q;
  e.a_ = a;
  e.b_ = b;
  e.c0_ = c;
  return e;
}

Rational StageExpr::value_at(std::size_t n) const {
  Rational v = c0_ + c1_ * Rational(static_cast<long long>(n));
  if (!(q_ == Rational(0))) {
    __int128 e = static_cast<__int128>(a_) * static_cast<__int128>(n) + b_;
    if (e > 62 || e < -62) throw OverflowError("stage value 2^" + std::to_string(a_) +
                                               "n+... exceeds the exact range");
    v = v + q_ * Rational::pow2(static_cast<long long>(e));
  }
  return v;
}

StageExpr StageExpr::shifted(long long offset, long long stride) const {
  StageExpr e;
  e.q_ = q_;
  e.a_ = a_ * stride;
  e.b_ = a_ * offset + b_;
  e.c0_ = c0_ + c1_ * Rational(offset);
  e.c1_ = c1_ * Rational(stride);
  return e;
}

bool StageExpr::is_constant() const {
  return c1_ == Rational(0) && (q_ == Rational(0) || a_ == 0);
}

std::string StageExpr::str() const {
  std::string out;
  if (!(q_ == Rational(0))) {
    out += q_.str() + "*2^(" + std::to_string(a_) + "n" +
           (b_ >= 0 ? "+" + std::to_string(b_) : std::to_string(b_)) + ")";
  }
  if (!(c0_ == Rational(0)) || out.empty()) {
    if (!out.empty()) out += " + ";
    out += c0_.str();
  }
  if (!(c1_ == Rational(0))) out += " + " + c1_.str() + "*n";
  return out;
}

// --- ForAllVerdict / stage_compare ------------------------------------------

bool operator==(const ForAllVerdict& a, const ForAllVerdict& b) {
  if (a.kind != b.kind) return false;
  return a.kind != ForAllVerdict::Kind::FailsAt || a.fail_index == b.fail_index;
}

std::string ForAllVerdict::str() const {
  switch (kind) {
    case Kind::AlwaysGE:
      return "forall-ge";
    case Kind::AlwaysGT:
      return "forall-gt";
    case Kind::AlwaysEQ:
      return "forall-eq";
    default:
      return "fails@" + std::to_string(fail_index);
  }
}

ForAllVerdict stage_compare(const StageExpr& lhs, const StageExpr& rhs) {
  struct GeoTerm {
    BigRat g;
    long long a;
  };
  BigRat alpha = to_big(lhs.affine_const()) - to_big(rhs.affine_const());
  BigRat beta = to_big(lhs.affine_slope()) - to_big(rhs.affine_slope());
  std::vector<GeoTerm> geos;
  auto add_geo = [&](const StageExpr& e, int sgn) {
    if (e.geo_coeff() == Rational(0)) return;
    BigRat g = to_big(e.geo_coeff()) * pow2_big(e.geo_shift()) * sgn;
    if (e.geo_rate() == 0) {
      alpha += g;
      return;
    }
    for (auto& t : geos)
      if (t.a == e.geo_rate()) {
        t.g += g;
        return;
      }
    geos.push_back({g, e.geo_rate()});
  };
  add_geo(lhs, +1);
  add_geo(rhs, -1);
  geos.erase(std::remove_if(geos.begin(), geos.end(),
                            [](const GeoTerm& t) { return t.g == 0; }),
             geos.end());
  std::sort(geos.begin(), geos.end(),
            [](const GeoTerm& x, const GeoTerm& y) { return x.a > y.a; });

  if (geos.empty()) {
    if (beta == 0) {
      if (alpha > 0) return ForAllVerdict::gt();
      if (alpha == 0) return ForAllVerdict::eq();
      return ForAllVerdict::fails_at(0);
    }
    if (beta > 0) {
      if (alpha > 0) return ForAllVerdict::gt();
      if (alpha == 0) return ForAllVerdict::ge();
      return ForAllVerdict::fails_at(0);
    }
    // beta < 0: the difference eventually drops below zero.
    if (alpha < 0) return ForAllVerdict::fails_at(0);
    BigRat bound = alpha / -beta;
    BigInt nstar = numerator(bound) / denominator(bound) + 1;
    return ForAllVerdict::fails_at(nstar.convert_to<std::size_t>());
  }

  const int sigma = geos.front().g > 0 ? 1 : -1;
  const BigRat abs_alpha = abs(alpha), abs_beta = abs(beta);
  bool saw_eq = false;
  constexpr std::size_t kScanCap = 4096;
  for (std::size_t n = 0; n <= kScanCap; ++n) {
    BigRat v = alpha + beta * static_cast<long long>(n);
    for (const auto& t : geos) v += t.g * pow2_big(t.a * static_cast<long long>(n));
    if (v < 0) return ForAllVerdict::fails_at(n);
    if (v == 0) saw_eq = true;
    if (sigma > 0 && n >= 1) {
      // Once the leading term is at least twice everything else, each later
      // step doubles the lead faster than the rest can grow: positive forever.
      BigRat lead = geos.front().g * pow2_big(geos.front().a * static_cast<long long>(n));
      BigRat rest = abs_alpha + abs_beta * static_cast<long long>(n);
      for (std::size_t i = 1; i < geos.size(); ++i)
        rest += abs(geos[i].g) * pow2_big(geos[i].a * static_cast<long long>(n));
      if (lead >= 2 * rest) return saw_eq ? ForAllVerdict::ge() : ForAllVerdict::gt();
    }
  }
  throw Error("stage comparison did not stabilize within the scan cap");
}

// --- CombSpec ----------------------------------------------------------------

CombSpec::CombSpec(std::vector<Agent> agents, std::vector<std::uint32_t> owners,
                   std::vector<std::vector<Rational>> prefix_take,
                   std::vector<std::vector<StageExpr>> class_take)
    : agents_(std::move(agents)),
      owners_(std::move(owners)),
      prefix_take_(std::move(prefix_take)),
      class_take_(std::move(class_take)) {
  if (agents_.empty()) throw InvalidCombError("comb needs at least one agent");
  if (!std::is_sorted(agents_.begin(), agents_.end()) ||
      std::adjacent_find(agents_.begin(), agents_.end()) != agents_.end())
    throw InvalidCombError("agent labels must be sorted and distinct");
  if (owners_.empty()) throw InvalidCombError("comb needs a nonempty owner cycle");
  for (std::uint32_t o : owners_)
    if (o >= agents_.size()) throw InvalidCombError("owner index out of range");
  for (const auto& row : prefix_take_)
    if (row.size() != agents_.size())
      throw InvalidCombError("prefix utility row must cover every agent");
  if (class_take_.empty()) throw InvalidCombError("comb needs at least one stage class");
  for (const auto& row : class_take_)
    if (row.size() != agents_.size())
      throw InvalidCombError("class utility row must cover every agent");
}

std::vector<Rational> CombSpec::take_utilities(std::size_t stage) const {
  if (stage < prefix_take_.size()) return prefix_take_[stage];
  std::size_t j = stage - prefix_take_.size();
  const auto& row = class_take_[j % class_take_.size()];
  std::vector<Rational> out;
  out.reserve(row.size());
  for (const StageExpr& e : row) out.push_back(e.value_at(j / class_take_.size()));
  return out;
}

StageExpr CombSpec::take_expr(std::size_t stage, std::uint32_t agent, long long stride) const {
  if (stage < prefix_take_.size())
    throw InvalidCombError("take_expr is defined for stages at or past the prefix");
  std::size_t j = stage - prefix_take_.size();
  return class_take_[j % class_take_.size()][agent].shifted(
      static_cast<long long>(j / class_take_.size()), stride);
}

bool CombSpec::is_capped() const {
  for (const auto& row : class_take_)
    for (const StageExpr& e : row)
      if (!e.is_constant()) return false;
  return true;
}

CombSpec CombSpec::shifted_by(std::size_t k) const {
  std::vector<std::uint32_t> owners(owners_.size());
  for (std::size_t i = 0; i < owners_.size(); ++i) owners[i] = owners_[(k + i) % owners_.size()];
  if (k <= prefix_take_.size()) {
    std::vector<std::vector<Rational>> prefix(prefix_take_.begin() + k, prefix_take_.end());
    return CombSpec(agents_, std::move(owners), std::move(prefix), class_take_);
  }
  std::size_t d = k - prefix_take_.size();
  std::size_t p = class_take_.size();
  std::vector<std::vector<StageExpr>> classes(p);
  for (std::size_t j0 = 0; j0 < p; ++j0) {
    const auto& row = class_take_[(d + j0) % p];
    classes[j0].reserve(row.size());
    for (const StageExpr& e : row)
      classes[j0].push_back(e.shifted(static_cast<long long>((d + j0) / p), 1));
  }
  return CombSpec(agents_, std::move(owners), {}, std::move(classes));
}

// --- SpeCertificate ----------------------------------------------------------

bool SpeCertificate::valid() const {
  if (!converges_everywhere) return false;
  for (const SpeRecord& r : records)
    if (!r.verdict.holds()) return false;
  return true;
}

std::optional<std::size_t> SpeCertificate::first_failure_stage() const {
  std::optional<std::size_t> best;
  for (const SpeRecord& r : records) {
    if (r.verdict.holds()) continue;
    std::size_t stage = r.stage + r.stride * r.verdict.fail_index;
    if (!best || stage < *best) best = stage;
  }
  return best;
}

// --- comb_spe ----------------------------------------------------------------

namespace {

// When `symbolic`, the spec stands for a whole family of stage-shifted combs
// (its class expressions pre-shifted with stride 1) and every record —
// including the concrete-stage ones — is checked for all shifts at once.
// Requires an empty prefix in that mode.
SpeCertificate comb_spe_impl(const CombSpec& spec, const CombChoiceWord& w, bool symbolic) {
  SpeCertificate cert;
  cert.converges_everywhere = w.period_has_take();
  if (!cert.converges_everywhere) return cert;

  const std::size_t L = spec.prefix_length();
  const std::size_t p = spec.class_period();
  const std::size_t A = spec.owner_period();
  const std::size_t Pw = w.prefix().size();
  const std::size_t pw = w.period().size();
  const std::size_t S = std::max(L, Pw);
  const std::size_t Q = std::lcm(std::lcm(p, pw), A);

  auto make_record = [&](std::size_t k, std::size_t stride_stages, long long expr_stride) {
    std::uint32_t o = spec.owner_at(k);
    std::size_t t = *w.next_take(k + 1);
    bool take_here = w.at(k) == Move::Take;
    std::size_t chosen_stage = take_here ? k : t;
    std::size_t other_stage = take_here ? t : k;
    SpeRecord rec;
    rec.stage = k;
    rec.stride = stride_stages;
    rec.owner = o;
    if (expr_stride == 0) {
      // One concrete stage; compare exact values.
      std::vector<Rational> uc = spec.take_utilities(chosen_stage);
      std::vector<Rational> uo = spec.take_utilities(other_stage);
      rec.verdict = uc[o] > uo[o]   ? ForAllVerdict::gt()
                    : uc[o] == uo[o] ? ForAllVerdict::eq()
                                     : ForAllVerdict::fails_at(0);
    } else {
      rec.verdict = stage_compare(spec.take_expr(chosen_stage, o, expr_stride),
                                  spec.take_expr(other_stage, o, expr_stride));
    }
    return rec;
  };

  for (std::size_t k = 0; k < S; ++k)
    cert.records.push_back(make_record(k, 0, symbolic ? 1 : 0));
  const long long tail_stride = symbolic ? 1 : static_cast<long long>(Q / p);
  for (std::size_t r = 0; r < Q; ++r)
    cert.records.push_back(make_record(S + r, Q, tail_stride));
  return cert;
}

}  // namespace

SpeCertificate comb_spe(const CombSpec& spec, const CombChoiceWord& w) {
  return comb_spe_impl(spec, w, false);
}

bool comb_divergent(const CombSpec&, const CombChoiceWord& w) { return !w.has_take(); }

// --- comb_rat_inf ------------------------------------------------------------

namespace {

// Does taking strictly beat the immediately-following take for the stage owner
// at every stage? If so, a subgame-perfect profile can never push: right
// before its next take the owner would prefer to take early, so takes
// propagate backward and the only subgame-perfect word takes everywhere.
bool pbt_everywhere(const CombSpec& spec) {
  const std::size_t L = spec.prefix_length();
  for (std::size_t k = 0; k < L; ++k) {
    std::uint32_t o = spec.owner_at(k);
    if (!(spec.take_utilities(k)[o] > spec.take_utilities(k + 1)[o])) return false;
  }
  const std::size_t R = std::lcm(spec.class_period(), spec.owner_period());
  const long long stride = static_cast<long long>(R / spec.class_period());
  for (std::size_t r = 0; r < R; ++r) {
    std::size_t k = L + r;
    std::uint32_t o = spec.owner_at(k);
    ForAllVerdict v = stage_compare(spec.take_expr(k, o, stride),
                                    spec.take_expr(k + 1, o, stride));
    if (v.kind != ForAllVerdict::Kind::AlwaysGT) return false;
  }
  return true;
}

bool witness_exists(const CombSpec& sub, Move forced, const RatInfBounds& bounds,
                    bool symbolic) {
  std::vector<std::vector<Move>> periods;
  for (std::size_t len = 1; len <= bounds.max_period; ++len) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      std::vector<Move> q(len);
      bool any_take = false;
      for (std::size_t i = 0; i < len; ++i) {
        q[i] = (mask >> i) & 1 ? Move::Push : Move::Take;
        any_take |= q[i] == Move::Take;
      }
      if (any_take) periods.push_back(std::move(q));  // all-push tails never converge
    }
  }
  std::size_t offset_bound = bounds.offset_slack + sub.prefix_length();
  for (std::size_t o = 0; o <= offset_bound; ++o) {
    std::vector<Move> prefix;
    prefix.reserve(o + 1);
    prefix.push_back(forced);
    prefix.insert(prefix.end(), o, Move::Push);
    for (const auto& q : periods)
      if (comb_spe_impl(sub, CombChoiceWord(prefix, q), symbolic).valid()) return true;
  }
  return false;
}

}  // namespace

Verdict comb_rat_inf(const CombSpec& spec, const CombChoiceWord& w, const RatInfBounds& bounds) {
  std::optional<bool> pbt;
  auto fail_or_unknown = [&](std::size_t stage) -> Verdict {
    if (!pbt) pbt = pbt_everywhere(spec);
    if (*pbt)
      return Verdict::fails(
          "no subgame-perfect witness shares the choice at stage " + std::to_string(stage) +
          ": taking strictly beats pushing-then-taking at every stage, so the only "
          "subgame-perfect profiles take immediately");
    return Verdict::unknown(bounds.max_period,
                            "no witness found at stage " + std::to_string(stage) +
                                " within the period/offset bounds");
  };

  if (auto first = w.next_take(0)) {
    for (std::size_t k = 0; k <= *first; ++k)
      if (!witness_exists(spec.shifted_by(k), w.at(k), bounds, false))
        return fail_or_unknown(k);
    return Verdict::holds();
  }
  // Divergent word: justify each prefix stage, then each periodic stage class
  // (one symbolic check covers all of the class's infinitely many stages).
  const std::size_t L = spec.prefix_length();
  for (std::size_t k = 0; k < L; ++k)
    if (!witness_exists(spec.shifted_by(k), Move::Push, bounds, false))
      return fail_or_unknown(k);
  const std::size_t R = std::lcm(spec.class_period(), spec.owner_period());
  for (std::size_t r = 0; r < R; ++r)
    if (!witness_exists(spec.shifted_by(L + r), Move::Push, bounds, true))
      return fail_or_unknown(L + r);
  return Verdict::holds();
}

// --- export_profile ----------------------------------------------------------

Profile export_profile(const CombSpec& spec, const CombChoiceWord& w) {
  if (!spec.is_capped())
    throw NotRationalError(
        "comb tail utilities vary with the stage; no finite-graph profile exists");
  const std::size_t L = spec.prefix_length();
  const std::size_t S = std::max(L, w.prefix().size());
  const std::size_t Q =
      std::lcm(std::lcm(spec.class_period(), w.period().size()), spec.owner_period());
  const std::size_t total = S + Q;

  ProfileBuilder b;
  std::vector<NodeId> spine(total);
  for (NodeId& id : spine) id = b.reserve();
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<Rational> u = spec.take_utilities(k);
    UtilityAssignment ua;
    for (std::size_t i = 0; i < spec.agents().size(); ++i) ua[spec.agents()[i]] = u[i];
    NodeId leaf = b.add_leaf(ua);
    NodeId next = k + 1 < total ? spine[k + 1] : spine[S];
    b.define_internal(spine[k], spec.agents()[spec.owner_at(k)],
                      w.at(k) == Move::Take ? Choice::One : Choice::Two, leaf, next);
  }
  return b.finish(spine[0]);
}

}  // namespace stratprof
