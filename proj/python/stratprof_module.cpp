// Python bindings for the profile decision procedures.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "stratprof/comb.hpp"
#include "stratprof/engine.hpp"
#include "stratprof/families.hpp"
#include "stratprof/finite.hpp"
#include "stratprof/textio.hpp"

namespace py = pybind11;
namespace sp = stratprof;

namespace {

std::string tf(bool v) { return v ? "true" : "false"; }

std::map<std::string, sp::Rational> to_params(const py::dict& d) {
  std::map<std::string, sp::Rational> out;
  for (auto item : d)
    out[py::cast<std::string>(item.first)] = sp::Rational(py::cast<long long>(item.second));
  return out;
}

sp::EndingOption to_ending(const std::string& name) {
  if (name == "takeall") return sp::EndingOption::TakeAll;
  if (name == "choice2b") return sp::EndingOption::Choice2b;
  if (name == "nothing") return sp::EndingOption::Nothing;
  throw py::value_error("ending must be takeall, choice2b or nothing");
}

// A built family plus the same predicate routing the CLI uses: symbolic comb
// checks where they exist, graph/finite checks otherwise.
struct Family {
  sp::FamilyBundle bundle;

  std::vector<std::string> profiles() const {
    std::vector<std::string> names;
    for (const auto& [n, w] : bundle.comb_profiles) names.push_back(n);
    for (const auto& [n, g] : bundle.graph_profiles) names.push_back(n);
    return names;
  }

  std::string check_graph(const sp::Profile& s, const std::string& pred,
                          std::size_t bound) const {
    if (pred == "conv") return tf(sp::convergent(s));
    if (pred == "always-conv") return tf(sp::always_convergent(s));
    if (pred == "div") return tf(sp::divergent(s));
    if (pred == "pe") return tf(sp::pe(s));
    if (pred == "spe") return tf(sp::spe(s));
    if (pred == "ratinf") return sp::rat_inf(s, bound).str();
    sp::FiniteProfile f(s);
    if (pred == "bi") return tf(sp::bi(f));
    if (pred == "ratf") return tf(sp::rat_f(f));
    throw py::value_error("unknown predicate '" + pred + "'");
  }

  std::string check(const std::string& profile, const std::string& pred,
                    std::size_t bound) const {
    if (auto it = bundle.comb_profiles.find(profile); it != bundle.comb_profiles.end()) {
      if (pred == "div") return tf(sp::comb_divergent(*bundle.comb, it->second));
      if (pred == "spe") return tf(sp::comb_spe(*bundle.comb, it->second).valid());
      if (pred == "ratinf") return sp::comb_rat_inf(*bundle.comb, it->second).str();
      if (!bundle.comb->is_capped())
        throw py::value_error("predicate '" + pred +
                              "' needs a materialized profile; only div, spe and ratinf "
                              "apply to this family's symbolic profiles");
      return check_graph(sp::export_profile(*bundle.comb, it->second), pred, bound);
    }
    if (auto it = bundle.graph_profiles.find(profile); it != bundle.graph_profiles.end())
      return check_graph(it->second, pred, bound);
    throw py::key_error("no profile named '" + profile + "'");
  }

  sp::Profile get(const std::string& profile) const {
    if (auto it = bundle.comb_profiles.find(profile); it != bundle.comb_profiles.end())
      return sp::export_profile(*bundle.comb, it->second);
    if (auto it = bundle.graph_profiles.find(profile); it != bundle.graph_profiles.end())
      return it->second;
    throw py::key_error("no profile named '" + profile + "'");
  }

  sp::Profile unfold_to(std::size_t depth, const std::string& ending) const {
    if (!bundle.comb) throw py::value_error("family is already finite; nothing to unfold");
    return sp::unfold(*bundle.comb, depth, to_ending(ending)).profile();
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "decision procedures for extensive-form strategy profiles";

  py::register_exception<sp::ParseError>(m, "ProfileParseError", PyExc_ValueError);
  py::register_exception<sp::NotFiniteError>(m, "NotFiniteError", PyExc_ValueError);
  py::register_exception<sp::BadFamilyError>(m, "BadFamilyError", PyExc_ValueError);

  py::class_<sp::Profile>(m, "Profile")
      .def("__repr__",
           [](const sp::Profile& s) {
             return "<Profile with " + std::to_string(s.reachable().size()) + " nodes>";
           })
      .def("__str__", [](const sp::Profile& s) { return sp::serialize_profile(s); })
      .def_property_readonly("agents", [](const sp::Profile& s) { return s.agents(); });

  m.def("parse", &sp::parse_profile, py::arg("text"), "parse a profile document");
  m.def(
      "serialize",
      [](const sp::Profile& s, const std::string& format) {
        return sp::serialize_profile(
            s, format == "dot" ? sp::SerializeFormat::Dot : sp::SerializeFormat::Text);
      },
      py::arg("profile"), py::arg("format") = "text",
      "serialize a profile back to document or dot form");

  m.def("convergent", [](const sp::Profile& s) { return sp::convergent(s); });
  m.def("always_convergent", [](const sp::Profile& s) { return sp::always_convergent(s); });
  m.def("divergent", [](const sp::Profile& s) { return sp::divergent(s); });
  m.def("pe", [](const sp::Profile& s) { return sp::pe(s); });
  m.def("spe", [](const sp::Profile& s) { return sp::spe(s); });
  m.def("bi", [](const sp::Profile& s) { return sp::bi(sp::FiniteProfile(s)); });
  m.def(
      "rat_f", [](const sp::Profile& s) { return sp::rat_f(sp::FiniteProfile(s)); },
      "finite rationality: every chosen step is justified by some equilibrium of the "
      "same game making that step");
  m.def(
      "rat_inf",
      [](const sp::Profile& s, std::size_t bound) { return sp::rat_inf(s, bound).str(); },
      py::arg("profile"), py::arg("bound") = 12,
      "infinite rationality verdict: 'true', 'false' or 'unknown@k'");

  m.def(
      "enumerate_profiles",
      [](const sp::Profile& game) {
        std::vector<sp::Profile> out;
        for (const sp::FiniteProfile& f : sp::enumerate_profiles(sp::GameTemplate(game)))
          out.push_back(f.profile());
        return out;
      },
      py::arg("game"), "all choice assignments of a finite game");

  py::class_<Family>(m, "Family")
      .def_property_readonly("name", [](const Family& f) { return f.bundle.name; })
      .def_property_readonly("profiles", &Family::profiles)
      .def("check", &Family::check, py::arg("profile"), py::arg("pred"),
           py::arg("bound") = 12,
           "run a predicate on a named profile; returns 'true', 'false' or 'unknown@k'")
      .def("profile", &Family::get, py::arg("name"),
           "materialize a named profile as a graph (capped/finite families only)")
      .def("unfold", &Family::unfold_to, py::arg("depth"), py::arg("ending") = "takeall",
           "truncate the family's infinite game to a finite one");

  m.def(
      "family",
      [](const std::string& name, const py::dict& params) {
        return Family{sp::build_family(name, to_params(params))};
      },
      py::arg("name"), py::arg("params") = py::dict(),
      "build a named game family (centipede158, fig1, infpede, omegapede, zero_one, "
      "dollar_auction)");
}
