// Named game/profile families: the finite two-stage centipede example, the
// Fig.-style cyclic graphs, and the four infinite combs (infinite centipede,
// capped centipede, 0-1 game, dollar auction), plus depth-bounded unfolding
// of a comb into a finite game with a choice of ending convention.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "stratprof/comb.hpp"
#include "stratprof/finite.hpp"
#include "stratprof/profile.hpp"

namespace stratprof {

// Unknown family name, or missing/invalid parameters.
class BadFamilyError : public Error {
 public:
  using Error::Error;
};

// Terminal convention when a comb is cut after a fixed number of stages:
//   TakeAll  - the cut position pays the stage's take utilities outright;
//   Choice2b - the stage owner still decides: take, or share the take evenly
//              (every agent receives half the owner's take value);
//   Nothing  - every agent receives zero.
enum class EndingOption { TakeAll, Choice2b, Nothing };

// A family bundles one game with its named profiles. Comb families carry a
// spec plus choice words; graph families carry finite-graph profiles (fig1
// holds two separate one-profile games, so its game fields are empty).
struct FamilyBundle {
  std::string name;
  std::optional<CombSpec> comb;
  std::optional<Profile> finite_game;  // template: choices are placeholders
  std::map<std::string, CombChoiceWord> comb_profiles;
  std::map<std::string, Profile> graph_profiles;
};

// Families: centipede158, fig1, infpede, omegapede (param omega >= 1),
// zero_one, dollar_auction (params pot, step; default 100, 5).
FamilyBundle build_family(const std::string& name,
                          const std::map<std::string, Rational>& params = {});

// Finite game with `depth` spine stages of the comb and the chosen ending.
GameTemplate unfold(const CombSpec& spec, std::size_t depth, EndingOption ending);

}  // namespace stratprof
