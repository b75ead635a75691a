#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "recpair/term.hpp"

namespace recpair {

// Which rewrite semantics a run should exercise.
enum class ModeChoice { Trs, Lp, Both };

std::string_view to_string(ModeChoice choice);
std::optional<ModeChoice> parse_mode_choice(std::string_view text);

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct ParsedRule {
  Rule rule;
  SourcePos pos;
};

// A parsed program file:
//   (VAR x y ...)      optional variable declarations, before any rule
//   (MODE trs|lp|both) optional semantics hint
//   lhs -> rhs         one rule per line; comments start with '#'
// Identifiers are [A-Za-z0-9_']+; undeclared identifiers are function
// symbols whose arity is fixed by first use.
struct ProgramFile {
  std::vector<std::string> variables;  // declaration order
  std::vector<ParsedRule> rules;
  std::optional<ModeChoice> mode_hint;
  std::map<std::string, std::size_t> arities;

  Program program() const;
  std::string format() const;  // canonical text; format(parse(.)) is a fixed point
};

ProgramFile parse_program(std::string_view text);

// Parses one term with the given variable declarations, checking symbol
// uses against (and extending) the arity table.
Term parse_term(std::string_view text, const std::vector<std::string>& variables,
                std::map<std::string, std::size_t>& arities);

}  // namespace recpair
