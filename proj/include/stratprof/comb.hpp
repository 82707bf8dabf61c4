// Symbolic analysis of infinite "comb" games: a spine of decision stages where
// each stage offers a take leaf (ending the game) or a push to the next stage.
// Stage utilities are closed-form expressions in the stage index, so SPE and
// rationality verdicts quantify over all stages at once instead of sampling.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratprof/engine.hpp"
#include "stratprof/profile.hpp"

namespace stratprof {

// Malformed comb construction (empty owner cycle, ragged utility rows, ...).
class InvalidCombError : public Error {
 public:
  using Error::Error;
};

// Export of a comb whose tail utilities vary with the stage index: such a
// comb has no finite-graph profile representation.
class NotRationalError : public Error {
 public:
  using Error::Error;
};

enum class Move { Take, Push };

// Eventually periodic word over {Take, Push}: the choice at every spine stage.
class CombChoiceWord {
 public:
  CombChoiceWord(std::vector<Move> prefix, std::vector<Move> period);

  static CombChoiceWord always(Move m) { return CombChoiceWord({}, {m}); }

  Move at(std::size_t stage) const;
  const std::vector<Move>& prefix() const { return prefix_; }
  const std::vector<Move>& period() const { return period_; }

  bool period_has_take() const;
  bool has_take() const;  // a Take anywhere in the word

  // Least stage >= from whose letter is Take.
  std::optional<std::size_t> next_take(std::size_t from) const;

 private:
  std::vector<Move> prefix_, period_;
};

// q·2^(a·n + b) + c0 + c1·n with rational q, c0, c1; integer b; a >= 0.
// Covers the constant, affine, and geometric stage-utility shapes, and is
// closed under the index substitution n := offset + stride·m.
class StageExpr {
 public:
  StageExpr() = default;

  static StageExpr constant(Rational v);
  static StageExpr affine(Rational c0, Rational c1);
  // q·2^(a·n + b) + c
  static StageExpr geometric(Rational q, long long a, long long b, Rational c = Rational(0));

  // Exact value; throws OverflowError when 2^(a·n+b) leaves the exact range.
  Rational value_at(std::size_t n) const;

  // The expression in m after substituting n := offset + stride·m.
  StageExpr shifted(long long offset, long long stride) const;

  bool is_constant() const;

  const Rational& geo_coeff() const { return q_; }
  long long geo_rate() const { return a_; }
  long long geo_shift() const { return b_; }
  const Rational& affine_const() const { return c0_; }
  const Rational& affine_slope() const { return c1_; }

  std::string str() const;

 private:
  Rational q_{0};
  long long a_ = 0, b_ = 0;
  Rational c0_{0}, c1_{0};
};

// Comparison of two stage expressions over every index n >= 0.
struct ForAllVerdict {
  enum class Kind { AlwaysGE, AlwaysGT, AlwaysEQ, FailsAt };

  Kind kind = Kind::AlwaysEQ;
  std::size_t fail_index = 0;  // least violating index when kind == FailsAt

  bool holds() const { return kind != Kind::FailsAt; }
  std::string str() const;

  static ForAllVerdict ge() { return {Kind::AlwaysGE, 0}; }
  static ForAllVerdict gt() { return {Kind::AlwaysGT, 0}; }
  static ForAllVerdict eq() { return {Kind::AlwaysEQ, 0}; }
  static ForAllVerdict fails_at(std::size_t n) { return {Kind::FailsAt, n}; }
};

bool operator==(const ForAllVerdict& a, const ForAllVerdict& b);

// Sign of lhs(n) − rhs(n) decided exactly for all n >= 0: small indices are
// evaluated outright and the tail is settled by growth-rate dominance.
ForAllVerdict stage_compare(const StageExpr& lhs, const StageExpr& rhs);

// An infinite comb game: stage k is a decision node owned cyclically, whose
// take leaf pays `take_utilities(k)`. Stages below the prefix length carry
// explicit utility rows; later stages are grouped into classes cycling with
// `class_period`, each agent's utility a StageExpr in the class index
// n = (k − prefix) / period.
class CombSpec {
 public:
  CombSpec(std::vector<Agent> agents, std::vector<std::uint32_t> owners,
           std::vector<std::vector<Rational>> prefix_take,
           std::vector<std::vector<StageExpr>> class_take);

  const std::vector<Agent>& agents() const { return agents_; }
  std::size_t owner_period() const { return owners_.size(); }
  std::uint32_t owner_at(std::size_t stage) const { return owners_[stage % owners_.size()]; }

  std::size_t prefix_length() const { return prefix_take_.size(); }
  std::size_t class_period() const { return class_take_.size(); }
  const std::vector<std::vector<StageExpr>>& classes() const { return class_take_; }

  // Exact take-leaf utilities of stage k, aligned to agents().
  std::vector<Rational> take_utilities(std::size_t stage) const;

  // Take utility of `agent` at stages prefix+j, prefix+j+period, ... as an
  // expression in m after substituting the class index n := offset + stride·m,
  // where offset = floor(j / period). Requires stage >= prefix_length().
  StageExpr take_expr(std::size_t stage, std::uint32_t agent, long long stride) const;

  // Every class expression constant: the tail repeats exactly, so the comb is
  // a rational profile (exportable as a finite graph).
  bool is_capped() const;

  // The comb whose stage j is this comb's stage k + j.
  CombSpec shifted_by(std::size_t k) const;

 private:
  std::vector<Agent> agents_;
  std::vector<std::uint32_t> owners_;
  std::vector<std::vector<Rational>> prefix_take_;
  std::vector<std::vector<StageExpr>> class_take_;
};

// One payoff-optimality check: the word's choice at `stage` (and, when
// stride > 0, at every later stage congruent modulo stride) weakly beats the
// alternative for the stage owner.
struct SpeRecord {
  std::size_t stage = 0;
  std::size_t stride = 0;  // 0: single stage; else the class stage + stride·m
  std::uint32_t owner = 0;
  ForAllVerdict verdict;
};

// Subgame-perfection certificate: always-convergence plus one PE record per
// stage class. Valid iff convergence holds and no record fails.
struct SpeCertificate {
  bool converges_everywhere = false;
  std::vector<SpeRecord> records;

  bool valid() const;
  // Stage of the earliest failing record, when one exists.
  std::optional<std::size_t> first_failure_stage() const;
};

// True iff the chosen path never reaches a leaf: no Take anywhere in w.
bool comb_divergent(const CombSpec& spec, const CombChoiceWord& w);

// Subgame-perfection of the profile (spec, w), certified for all stages:
// concrete records for stages below the prefix/word alignment point, symbolic
// records (one per class) for the periodic tail.
SpeCertificate comb_spe(const CombSpec& spec, const CombChoiceWord& w);

// Bounds for the rationality witness search: candidate words are a forced
// first letter, then up to offset_slack + remaining-prefix pushes, then any
// period of length <= max_period containing a Take.
struct RatInfBounds {
  std::size_t max_period = 4;
  std::size_t offset_slack = 4;
};

// Rationality of (spec, w): every stage along the chosen path must admit a
// subgame-perfect witness sharing that stage's choice. Holds on a successful
// bounded search at every path stage; Fails when the search is empty and
// taking strictly beats every push-then-take at every stage (which rules out
// all eventually-taking witnesses); UnknownAtBound otherwise.
Verdict comb_rat_inf(const CombSpec& spec, const CombChoiceWord& w,
                     const RatInfBounds& bounds = {});

// Finite-graph profile of a capped comb under an eventually periodic word:
// distinct spine nodes up to the alignment point, then a cycle. Throws
// NotRationalError when the spec is not capped.
Profile export_profile(const CombSpec& spec, const CombChoiceWord& w);

}  // namespace stratprof
