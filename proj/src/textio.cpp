#include "stratprof/textio.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <vector>

namespace stratprof {

namespace {

struct Statement {
  std::string text;
  std::size_t line = 1;  // line of the statement's first significant character
};

// Split on ';' outside comments, remembering source lines.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  Statement cur;
  std::size_t line = 1;
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '\n') {
      line++;
      in_comment = false;
      ch = ' ';
    }
    if (in_comment) continue;
    if (ch == '#') {
      in_comment = true;
      continue;
    }
    if (ch == ';') {
      out.push_back(cur);
      cur = Statement{};
      continue;
    }
    if (cur.text.empty()) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      cur.line = line;
    }
    cur.text.push_back(ch);
  }
  if (!cur.text.empty()) throw ParseError("statement missing terminating ';'", cur.line);
  return out;
}

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  std::size_t line;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }
  bool eat(char ch) {
    skip_ws();
    if (pos < s.size() && s[pos] == ch) {
      pos++;
      return true;
    }
    return false;
  }
  void expect(char ch, const std::string& what) {
    if (!eat(ch)) throw ParseError("expected '" + std::string(1, ch) + "' " + what, line);
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) == 0) {
      std::size_t end = pos + w.size();
      if (end >= s.size() || !std::isalnum(static_cast<unsigned char>(s[end]))) {
        pos = end;
        return true;
      }
    }
    return false;
  }
  std::string identifier(const std::string& what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      pos++;
    if (pos == start) throw ParseError("expected " + what, line);
    return s.substr(start, pos - start);
  }
  std::string number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '-' ||
            s[pos] == '+' || s[pos] == '.' || s[pos] == '/'))
      pos++;
    if (pos == start) throw ParseError("expected a numeric utility", line);
    return s.substr(start, pos - start);
  }
  bool at_end() {
    skip_ws();
    return pos == s.size();
  }
};

struct NodeDecl {
  std::size_t line = 1;
  bool leaf = false;
  UtilityAssignment utilities;
  Agent owner;
  Choice choice = Choice::One;
  std::string ref1, ref2;
};

}  // namespace

Profile parse_profile(const std::string& text) {
  std::map<std::string, NodeDecl> decls;
  std::vector<std::string> order;  // declaration order, for deterministic ids
  std::string root_name;
  std::size_t root_line = 0;
  bool have_root = false;

  for (const Statement& st : split_statements(text)) {
    Cursor c{st.text, 0, st.line};
    std::string head = c.identifier("a node name or 'root'");
    if (head == "root" && c.eat('=')) {
      if (have_root) throw ParseError("duplicate root declaration", st.line);
      root_name = c.identifier("the root node name");
      root_line = st.line;
      have_root = true;
      if (!c.at_end()) throw ParseError("unexpected text after root declaration", st.line);
      continue;
    }
    c.expect(':', "after the node name");
    if (decls.count(head)) throw ParseError("duplicate node name '" + head + "'", st.line);

    NodeDecl d;
    d.line = st.line;
    if (c.eat_word("leaf")) {
      d.leaf = true;
      c.expect('(', "after 'leaf'");
      if (!c.eat(')')) {
        while (true) {
          std::string agent = c.identifier("an agent label");
          c.expect(':', "after the agent label");
          std::string num = c.number();
          Rational v;
          try {
            v = Rational::parse(num);
          } catch (const Error& e) {
            throw ParseError(std::string(e.what()), st.line);
          }
          if (!d.utilities.emplace(agent, v).second)
            throw ParseError("agent '" + agent + "' listed twice in a leaf", st.line);
          if (c.eat(')')) break;
          c.expect(',', "between leaf utilities");
        }
      }
    } else {
      d.owner = c.identifier("an agent label");
      if (!c.eat_word("choose")) throw ParseError("expected 'choose'", st.line);
      std::string cv = c.identifier("choice 1 or 2");
      if (cv == "1")
        d.choice = Choice::One;
      else if (cv == "2")
        d.choice = Choice::Two;
      else
        throw ParseError("choice must be 1 or 2, got '" + cv + "'", st.line);
      c.expect('-', "before '->'");
      c.expect('>', "to form '->'");
      d.ref1 = c.identifier("the first child name");
      c.expect(',', "between the two children");
      d.ref2 = c.identifier("the second child name");
    }
    if (!c.at_end()) throw ParseError("unexpected text at end of statement", st.line);
    decls.emplace(head, d);
    order.push_back(head);
  }

  if (!have_root) throw ParseError("missing 'root = name;' declaration", 1);
  if (!decls.count(root_name))
    throw ParseError("root references undeclared node '" + root_name + "'", root_line);

  ProfileBuilder b;
  std::map<std::string, NodeId> ids;
  for (const std::string& name : order) ids[name] = b.reserve();
  for (const std::string& name : order) {
    const NodeDecl& d = decls[name];
    if (d.leaf) {
      b.define_leaf(ids[name], d.utilities);
      continue;
    }
    for (const std::string& ref : {d.ref1, d.ref2})
      if (!ids.count(ref))
        throw ParseError("node '" + name + "' references undeclared node '" + ref + "'",
                         d.line);
    b.define_internal(ids[name], d.owner, d.choice, ids[d.ref1], ids[d.ref2]);
  }
  try {
    return b.finish(ids[root_name]);
  } catch (const Error& e) {
    throw ParseError(e.what(), root_line);
  }
}

namespace {

// Deterministic display names: breadth-first from the root, n# for internal
// nodes and l# for leaves.
std::map<NodeId, std::string> display_names(const Profile& s) {
  std::map<NodeId, std::string> names;
  std::size_t internals = 0, leaves = 0;
  for (NodeId id : s.reachable()) {
    if (s.is_leaf(id))
      names[id] = "l" + std::to_string(leaves++);
    else
      names[id] = "n" + std::to_string(internals++);
  }
  return names;
}

std::string leaf_values(const Profile& s, NodeId id, const char* sep) {
  std::string out;
  const auto& agents = s.agents();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (i) out += sep;
    out += agents[i] + ": " + s.leaf_utility(id, static_cast<std::uint32_t>(i)).str();
  }
  return out;
}

std::string to_text(const Profile& s) {
  auto names = display_names(s);
  std::ostringstream out;
  out << "root = " << names.at(s.root()) << ";\n";
  for (NodeId id : s.reachable()) {
    out << names.at(id) << ": ";
    if (s.is_leaf(id)) {
      out << "leaf(" << leaf_values(s, id, ", ") << ");\n";
    } else {
      out << s.owner(id) << " choose " << (s.choice(id) == Choice::One ? 1 : 2) << " -> "
          << names.at(s.child(id, Choice::One)) << ", " << names.at(s.child(id, Choice::Two))
          << ";\n";
    }
  }
  return out.str();
}

std::string to_dot(const Profile& s) {
  auto names = display_names(s);
  std::ostringstream out;
  out << "digraph profile {\n  rankdir=LR;\n";
  for (NodeId id : s.reachable()) {
    if (s.is_leaf(id))
      out << "  " << names.at(id) << " [shape=box,label=\"" << leaf_values(s, id, "\\n")
          << "\"];\n";
    else
      out << "  " << names.at(id) << " [shape=circle,label=\"" << s.owner(id) << "\"];\n";
  }
  for (NodeId id : s.reachable()) {
    if (s.is_leaf(id)) continue;
    for (Choice c : {Choice::One, Choice::Two}) {
      out << "  " << names.at(id) << " -> " << names.at(s.child(id, c)) << " [label=\""
          << (c == Choice::One ? 1 : 2) << "\"";
      if (c == s.choice(id)) out << ",style=bold,color=blue,penwidth=2";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string serialize_profile(const Profile& s, SerializeFormat format) {
  return format == SerializeFormat::Text ? to_text(s) : to_dot(s);
}

}  // namespace stratprof
