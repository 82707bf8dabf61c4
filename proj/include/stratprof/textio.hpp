// Text format for profiles, cycles included, plus DOT export.
//
// Document grammar (UTF-8, '#' starts a line comment, ';' ends a statement):
//   root = name;
//   name: AGENT choose C -> ref1, ref2;      C in {1, 2}
//   name: leaf(AGENT: value, ...);           value: integer, fraction, decimal
// References may point forward or form cycles; exactly one root is required.
#pragma once

#include <cstddef>
#include <string>

#include "stratprof/profile.hpp"

namespace stratprof {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Profile parse_profile(const std::string& text);

enum class SerializeFormat { Text, Dot };

// Text output round-trips through parse_profile (same game, same choices);
// DOT output draws chosen edges bold for graph renderers.
std::string serialize_profile(const Profile& s, SerializeFormat format = SerializeFormat::Text);

}  // namespace stratprof
