// stratprof: decide convergence, equilibrium, and rationality predicates on
// finite and infinite strategy profiles, from files or built-in families.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stratprof/comb.hpp"
#include "stratprof/engine.hpp"
#include "stratprof/families.hpp"
#include "stratprof/finite.hpp"
#include "stratprof/textio.hpp"

namespace sp = stratprof;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

const std::vector<std::string> kPredNames = {"conv", "always-conv", "div",  "pe",
                                             "spe",  "bi",          "ratf", "ratinf"};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw sp::ParseError("cannot open file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int report_bool(bool v) {
  std::cout << (v ? "true" : "false") << "\n";
  return 0;
}

int report_verdict(const sp::Verdict& v) {
  std::cout << v.str() << "\n";
  return v.definite() ? 0 : kExitUnknown;
}

struct UsageError {
  std::string message;
};

// Evaluate a root predicate on an explicit (possibly cyclic) profile graph.
int check_graph(const sp::Profile& s, const std::string& pred, std::size_t bound) {
  if (pred == "conv") return report_bool(sp::convergent(s));
  if (pred == "always-conv") return report_bool(sp::always_convergent(s));
  if (pred == "div") return report_bool(sp::divergent(s));
  if (pred == "pe") return report_bool(sp::pe(s));
  if (pred == "spe") return report_bool(sp::spe(s));
  if (pred == "ratinf") return report_verdict(sp::rat_inf(s, bound));
  try {
    sp::FiniteProfile f(s);
    if (pred == "bi") return report_bool(sp::bi(f));
    return report_bool(sp::rat_f(f));
  } catch (const sp::NotFiniteError&) {
    throw UsageError{"predicate '" + pred + "' needs a finite (acyclic) profile"};
  }
}

// Evaluate a predicate on a symbolic comb profile. Divergence, equilibrium,
// and infinite rationality are decided symbolically; anything else requires a
// capped spec whose frozen tail can be exported as a rational graph.
int check_comb(const sp::CombSpec& spec, const sp::CombChoiceWord& w,
               const std::string& pred, std::size_t bound) {
  if (pred == "div") return report_bool(sp::comb_divergent(spec, w));
  if (pred == "spe") return report_bool(sp::comb_spe(spec, w).valid());
  if (pred == "ratinf") return report_verdict(sp::comb_rat_inf(spec, w));
  if (spec.is_capped()) return check_graph(sp::export_profile(spec, w), pred, bound);
  throw UsageError{"predicate '" + pred +
                   "' needs a materialized profile; this family's stage utilities never "
                   "stabilize, so only div, spe and ratinf apply (or use 'unfold')"};
}

std::map<std::string, sp::Rational> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, sp::Rational> params;
  for (const std::string& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError{"--param expects key=value, got '" + kv + "'"};
    try {
      params[kv.substr(0, eq)] = sp::Rational::parse(kv.substr(eq + 1));
    } catch (const sp::Error& e) {
      throw UsageError{"bad value in --param " + kv + ": " + e.what()};
    }
  }
  return params;
}

int emit_profile(const sp::Profile& s, const std::string& format) {
  std::cout << sp::serialize_profile(
      s, format == "dot" ? sp::SerializeFormat::Dot : sp::SerializeFormat::Text);
  return 0;
}

int run_check(const std::string& input, const std::string& pred, std::size_t bound) {
  sp::Profile s = sp::parse_profile(read_input(input));
  return check_graph(s, pred, bound);
}

int run_enumerate(const std::string& input, const std::string& pred, std::size_t bound) {
  sp::Profile s = sp::parse_profile(read_input(input));
  std::optional<sp::GameTemplate> game;
  try {
    game.emplace(s);
  } catch (const sp::NotFiniteError&) {
    throw UsageError{"enumerate needs a finite (acyclic) game"};
  }
  std::size_t shown = 0;
  for (const sp::FiniteProfile& f : sp::enumerate_profiles(*game)) {
    bool keep = false;
    const sp::Profile& p = f.profile();
    if (pred == "conv")
      keep = sp::convergent(p);
    else if (pred == "always-conv")
      keep = sp::always_convergent(p);
    else if (pred == "div")
      keep = sp::divergent(p);
    else if (pred == "pe")
      keep = sp::pe(p);
    else if (pred == "spe")
      keep = sp::spe(p);
    else if (pred == "bi")
      keep = sp::bi(f);
    else if (pred == "ratf")
      keep = sp::rat_f(f);
    else
      keep = sp::rat_inf(p, bound).kind == sp::Verdict::Holds;
    if (!keep) continue;
    shown++;
    std::string line;
    std::size_t internals = 0;
    for (sp::NodeId id : p.reachable()) {
      if (p.is_leaf(id)) continue;
      if (!line.empty()) line += " ";
      line += "n" + std::to_string(internals++) + "=" +
              (p.choice(id) == sp::Choice::One ? "1" : "2");
    }
    std::cout << (line.empty() ? "(no decisions)" : line) << "\n";
  }
  std::cout << "count: " << shown << "\n";
  return 0;
}

int run_family(const std::string& name, const std::vector<std::string>& raw_params,
               const std::string& profile, const std::string& pred,
               const std::string& emit, std::size_t bound) {
  sp::FamilyBundle bundle = sp::build_family(name, parse_params(raw_params));
  if (profile.empty()) {
    std::cout << "family " << bundle.name << " profiles:";
    for (const auto& [pname, w] : bundle.comb_profiles) std::cout << " " << pname;
    for (const auto& [pname, g] : bundle.graph_profiles) std::cout << " " << pname;
    std::cout << "\n";
    return 0;
  }
  if (auto it = bundle.comb_profiles.find(profile); it != bundle.comb_profiles.end()) {
    if (!emit.empty()) {
      if (!bundle.comb->is_capped())
        throw UsageError{
            "this profile is infinite and non-repeating; it has no finite graph form "
            "(use 'unfold' for a truncation)"};
      return emit_profile(sp::export_profile(*bundle.comb, it->second), emit);
    }
    return check_comb(*bundle.comb, it->second, pred, bound);
  }
  if (auto it = bundle.graph_profiles.find(profile); it != bundle.graph_profiles.end()) {
    if (!emit.empty()) return emit_profile(it->second, emit);
    return check_graph(it->second, pred, bound);
  }
  throw UsageError{"family '" + name + "' has no profile named '" + profile + "'"};
}

int run_unfold(const std::string& name, const std::vector<std::string>& raw_params,
               std::size_t depth, const std::string& ending, const std::string& emit) {
  sp::FamilyBundle bundle = sp::build_family(name, parse_params(raw_params));
  if (!bundle.comb)
    throw UsageError{"family '" + name + "' is already finite; nothing to unfold"};
  sp::EndingOption opt = sp::EndingOption::TakeAll;
  if (ending == "choice2b")
    opt = sp::EndingOption::Choice2b;
  else if (ending == "nothing")
    opt = sp::EndingOption::Nothing;
  else if (ending != "takeall")
    throw UsageError{"--ending must be takeall, choice2b or nothing"};
  sp::GameTemplate g = sp::unfold(*bundle.comb, depth, opt);
  return emit_profile(g.profile(), emit.empty() ? "profiledoc" : emit);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for extensive-form strategy profiles"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string pred = "conv", input = "-", family, profile, emit, ending = "takeall";
  std::vector<std::string> raw_params;
  std::size_t bound = 12, depth = 1;

  auto add_pred = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--pred", pred, "predicate to decide")
                  ->check(CLI::IsMember(kPredNames));
    if (required) o->required();
  };
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--param", raw_params, "family parameter as key=value (repeatable)");
  };

  CLI::App* check = app.add_subcommand("check", "decide a predicate on a profile document");
  add_pred(check, true);
  check->add_option("input", input, "profile file, or - for standard input");
  check->add_option("--bound", bound, "search bound for ratinf witness subgames");

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list the satisfying profiles of a finite game");
  add_pred(enumerate, true);
  enumerate->add_option("input", input, "game file, or - for standard input");
  enumerate->add_option("--bound", bound, "search bound for ratinf witness subgames");

  CLI::App* fam = app.add_subcommand("family", "work with a built-in game family");
  fam->add_option("name", family, "family name")->required();
  fam->add_option("--profile", profile, "named profile within the family");
  add_pred(fam, false);
  fam->add_option("--emit", emit, "write the profile instead of checking")
      ->check(CLI::IsMember({"profiledoc", "dot"}));
  fam->add_option("--bound", bound, "search bound for ratinf witness subgames");
  add_params(fam);

  CLI::App* unfold =
      app.add_subcommand("unfold", "truncate a family's infinite game to a finite one");
  unfold->add_option("name", family, "family name")->required();
  unfold->add_option("--depth", depth, "number of spine stages (>= 1)")->required();
  unfold->add_option("--ending", ending, "terminal convention: takeall, choice2b, nothing");
  unfold->add_option("--emit", emit, "output format")
      ->check(CLI::IsMember({"profiledoc", "dot"}));
  add_params(unfold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(input, pred, bound);
    if (*enumerate) return run_enumerate(input, pred, bound);
    if (*fam) return run_family(family, raw_params, profile, pred, emit, bound);
    return run_unfold(family, raw_params, depth, ending, emit);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const sp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sp::BadFamilyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
