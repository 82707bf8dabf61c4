#include <string>

#include "doctest.h"
#include "stratprof/engine.hpp"
#include "stratprof/families.hpp"
#include "stratprof/textio.hpp"

using namespace stratprof;

namespace {

const char* kTwoStage = R"(
# take/push two-stage game
root = n0;
n0: A choose 1 -> la, n1;
n1: B choose 2 -> lb, le;
la: leaf(A: 1, B: 2);
lb: leaf(A: 0, B: 1);
le: leaf(A: 2, B: 1);
)";

const char* kLoop = R"(
root = n0;
n0: A choose 2 -> la, n1;   # forward reference
n1: B choose 2 -> lb, n0;   # cycle back to the root
la: leaf(A: 1, B: 0);
lb: leaf(A: 0, B: 1);
)";

}  // namespace

TEST_CASE("documents parse into profiles") {
  Profile s = parse_profile(kTwoStage);
  CHECK(s.agents() == std::vector<Agent>{"A", "B"});
  CHECK(s.reachable().size() == 5);
  CHECK(s.owner(s.root()) == "A");
  CHECK(s.choice(s.root()) == Choice::One);
  CHECK(utility_assignment(s).at("B") == Rational(2));
}

TEST_CASE("forward references and cycles parse") {
  Profile s = parse_profile(kLoop);
  CHECK(divergent(s));
  CHECK(s.chosen_child(s.chosen_child(s.root())) == s.root());
}

TEST_CASE("utilities accept integer, fraction and decimal literals") {
  Profile s = parse_profile(
      "root = l;\n l: leaf(A: -3, B: 7/2, C: 0.25);\n");
  NodeId l = s.root();
  CHECK(s.leaf_utilities(l) == UtilityAssignment{
                                   {"A", Rational(-3)}, {"B", Rational(7, 2)},
                                   {"C", Rational(1, 4)}});
}

TEST_CASE("parse errors carry the offending line") {
  auto fails_at = [](const std::string& doc, std::size_t line) {
    try {
      parse_profile(doc);
      FAIL_CHECK("expected a parse error for:\n" << doc);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find("line " + std::to_string(line)) !=
            std::string::npos);
    }
  };
  fails_at("root = n0;\nn0: A choose 3 -> a, b;\na: leaf(A: 0);\nb: leaf(A: 0);\n", 2);
  fails_at("root = n0;\nn0: A choose 1 -> a, missing;\na: leaf(A: 0);\n", 2);
  fails_at("n0: leaf(A: 0);\n", 1);                               // no root
  fails_at("root = ghost;\nn0: leaf(A: 0);\n", 1);                // bad root ref
  fails_at("root = n0;\nn0: leaf(A: 0);\nn0: leaf(A: 1);\n", 3);  // duplicate
  fails_at("root = n0;\nn0: leaf(A: 1/0);\n", 2);                 // bad literal
  fails_at("root = n0;\nn0: leaf(A: 1, A: 2);\n", 2);             // agent twice
  fails_at("root = n0;\nn0: leaf(A: 1) extra;\n", 2);             // trailing junk
  fails_at("root = n0;\nn0: leaf(A: 1)\n", 2);                    // missing ';'
}

TEST_CASE("comments and whitespace are insignificant") {
  Profile a = parse_profile("root=l;l:leaf(A:1);");
  Profile b = parse_profile("# doc\n root   =  l ;\n\n l : leaf( A : 1 ) ; # done\n");
  CHECK(same_game(a, b));
}

TEST_CASE("serialization is deterministic and parses back") {
  Profile s = parse_profile(kTwoStage);
  std::string text = serialize_profile(s);
  CHECK(text == "root = n0;\n"
                "n0: A choose 1 -> l0, n1;\n"
                "l0: leaf(A: 1, B: 2);\n"
                "n1: B choose 2 -> l1, l2;\n"
                "l1: leaf(A: 0, B: 1);\n"
                "l2: leaf(A: 2, B: 1);\n");
  Profile back = parse_profile(text);
  CHECK(same_game(back, s));
  CHECK(serialize_profile(back) == text);
}

TEST_CASE("cyclic profiles round-trip") {
  FamilyBundle fb = build_family("fig1");
  for (const auto& [name, s] : fb.graph_profiles) {
    Profile back = parse_profile(serialize_profile(s));
    CHECK(same_game(back, s));
    CHECK(divergent(back) == divergent(s));
    CHECK(convergent(back) == convergent(s));
    CHECK(serialize_profile(parse_profile(serialize_profile(back))) ==
          serialize_profile(back));
  }
}

TEST_CASE("fraction utilities round-trip without loss") {
  Profile s = parse_profile("root = l;\nl: leaf(A: 22/7, B: -1/3);\n");
  Profile back = parse_profile(serialize_profile(s));
  CHECK(back.leaf_utilities(back.root()) ==
        UtilityAssignment{{"A", Rational(22, 7)}, {"B", Rational(-1, 3)}});
}

TEST_CASE("dot export marks structure and chosen edges") {
  Profile s = parse_profile(kLoop);
  std::string dot = serialize_profile(s, SerializeFormat::Dot);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);     // leaves
  CHECK(dot.find("shape=circle") != std::string::npos);  // decision nodes
  CHECK(dot.find("style=bold") != std::string::npos);    // chosen edges
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  CHECK(dot.find("n1 -> n0") != std::string::npos);
}

TEST_CASE("error text names the line") {
  ParseError e("boom", 12);
  CHECK(std::string(e.what()) == "line 12: boom");
  CHECK(e.line() == 12);
}
