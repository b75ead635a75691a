#include "recpair/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace recpair {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

enum class TokKind { Ident, LParen, RParen, Comma, Arrow, Hole };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;  // comment to end of line
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back({TokKind::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({TokKind::LParen, "(", col});
        ++i;
        continue;
      case ')':
        out.push_back({TokKind::RParen, ")", col});
        ++i;
        continue;
      case ',':
        out.push_back({TokKind::Comma, ",", col});
        ++i;
        continue;
      case '-':
        if (i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({TokKind::Arrow, "->", col});
          i += 2;
          continue;
        }
        throw ParseError(line_no, col, "stray '-' (expected '->')");
      case '[':
        if (i + 1 < line.size() && line[i + 1] == ']') {
          out.push_back({TokKind::Hole, "[]", col});
          i += 2;
          continue;
        }
        throw ParseError(line_no, col, "stray '['");
      default:
        throw ParseError(line_no, col,
                         std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

class TermParser {
public:
  TermParser(const std::set<std::string>& variables,
             std::map<std::string, std::size_t>& arities, std::size_t line)
      : variables_(variables), arities_(arities), line_(line) {}

  // Parses tokens[begin..end) as one complete term.
  Term parse(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    if (begin >= end) throw ParseError(line_, 1, "expected a term");
    pos_ = begin;
    Term t = parse_term(tokens, end);
    if (pos_ != end)
      throw ParseError(line_, tokens[pos_].column, "trailing input after term");
    return t;
  }

private:
  const std::set<std::string>& variables_;
  std::map<std::string, std::size_t>& arities_;
  std::size_t line_;
  std::size_t pos_ = 0;

  // Iterative nested-application parser; the frame stack replaces recursion
  // so machine-generated deeply nested inputs cannot overflow the stack.
  Term parse_term(const std::vector<Token>& tokens, std::size_t end) {
    struct Frame {
      std::string symbol;
      std::size_t column;
      std::vector<Term> args;
    };
    std::vector<Frame> stack;
    std::optional<Term> pending;  // completed subterm waiting for its parent

    auto finish_atom = [&](const Token& tok) -> Term {
      if (variables_.count(tok.text)) return Term::var(tok.text);
      check_arity(tok, 0);
      return Term::app(tok.text);
    };

    while (true) {
      if (!pending) {
        if (pos_ >= end) throw ParseError(line_, 1, "unexpected end of term");
        const Token& tok = tokens[pos_];
        if (tok.kind == TokKind::Hole)
          throw ParseError(line_, tok.column, "the hole symbol '[]' is reserved");
        if (tok.kind != TokKind::Ident)
          throw ParseError(line_, tok.column, "expected an identifier");
        ++pos_;
        if (pos_ < end && tokens[pos_].kind == TokKind::LParen) {
          if (variables_.count(tok.text))
            throw ParseError(line_, tok.column,
                             "variable '" + tok.text + "' used as a function symbol");
          ++pos_;  // consume '('
          if (pos_ < end && tokens[pos_].kind == TokKind::RParen)
            throw ParseError(line_, tokens[pos_].column, "empty argument list");
          stack.push_back(Frame{tok.text, tok.column, {}});
          continue;
        }
        pending = finish_atom(tok);
      }
      // Attach the pending term to its parent frame, or return it.
      if (stack.empty()) return std::move(*pending);
      stack.back().args.push_back(std::move(*pending));
      pending.reset();
      if (pos_ >= end)
        throw ParseError(line_, 1, "unbalanced parentheses: missing ')'");
      const Token& sep = tokens[pos_];
      if (sep.kind == TokKind::Comma) {
        ++pos_;
        continue;
      }
      if (sep.kind == TokKind::RParen) {
        ++pos_;
        Frame frame = std::move(stack.back());
        stack.pop_back();
        Token head{TokKind::Ident, frame.symbol, frame.column};
        check_arity(head, frame.args.size());
        pending = Term::app(std::move(frame.symbol), std::move(frame.args));
        continue;
      }
      throw ParseError(line_, sep.column, "expected ',' or ')'");
    }
  }

  void check_arity(const Token& tok, std::size_t arity) {
    auto [it, inserted] = arities_.try_emplace(tok.text, arity);
    if (!inserted && it->second != arity) {
      throw ParseError(line_, tok.column,
                       "symbol '" + tok.text + "' used with arity " +
                           std::to_string(arity) + " but previously with arity " +
                           std::to_string(it->second));
    }
  }
};

}  // namespace

std::string_view to_string(ModeChoice choice) {
  switch (choice) {
    case ModeChoice::Trs:
      return "trs";
    case ModeChoice::Lp:
      return "lp";
    default:
      return "both";
  }
}

std::optional<ModeChoice> parse_mode_choice(std::string_view text) {
  if (text == "trs") return ModeChoice::Trs;
  if (text == "lp") return ModeChoice::Lp;
  if (text == "both") return ModeChoice::Both;
  return std::nullopt;
}

Program ProgramFile::program() const {
  Program out;
  out.reserve(rules.size());
  for (const ParsedRule& r : rules) out.push_back(r.rule);
  return out;
}

std::string ProgramFile::format() const {
  std::string out;
  if (!variables.empty()) {
    out += "(VAR";
    for (const std::string& v : variables) {
      out += ' ';
      out += v;
    }
    out += ")\n";
  }
  if (mode_hint) {
    out += "(MODE ";
    out += to_string(*mode_hint);
    out += ")\n";
  }
  for (const ParsedRule& r : rules) {
    out += to_string(r.rule);
    out += '\n';
  }
  return out;
}

ProgramFile parse_program(std::string_view text) {
  ProgramFile file;
  std::set<std::string> declared;
  bool saw_rule = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::vector<Token> tokens = lex_line(line, line_no);
    if (tokens.empty()) continue;

    if (tokens.front().kind == TokKind::LParen) {
      // Header: (VAR ...) or (MODE ...)
      if (tokens.size() < 2 || tokens[1].kind != TokKind::Ident)
        throw ParseError(line_no, tokens.front().column, "malformed header");
      if (tokens.back().kind != TokKind::RParen)
        throw ParseError(line_no, tokens.front().column, "unterminated header");
      const std::string& head = tokens[1].text;
      if (head == "VAR") {
        if (saw_rule)
          throw ParseError(line_no, tokens.front().column,
                           "variable declarations must precede all rules");
        for (std::size_t k = 2; k + 1 < tokens.size(); ++k) {
          if (tokens[k].kind != TokKind::Ident)
            throw ParseError(line_no, tokens[k].column, "expected a variable name");
          if (declared.insert(tokens[k].text).second)
            file.variables.push_back(tokens[k].text);
        }
      } else if (head == "MODE") {
        if (tokens.size() != 4 || tokens[2].kind != TokKind::Ident)
          throw ParseError(line_no, tokens[1].column, "expected (MODE trs|lp|both)");
        auto choice = parse_mode_choice(tokens[2].text);
        if (!choice)
          throw ParseError(line_no, tokens[2].column,
                           "unknown mode '" + tokens[2].text + "'");
        file.mode_hint = *choice;
      } else {
        throw ParseError(line_no, tokens[1].column, "unknown header '" + head + "'");
      }
      continue;
    }

    // Rule line: lhs -> rhs
    std::size_t arrow = tokens.size();
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (tokens[k].kind == TokKind::Arrow) {
        if (arrow != tokens.size())
          throw ParseError(line_no, tokens[k].column, "more than one '->' in rule");
        arrow = k;
      }
    }
    if (arrow == tokens.size())
      throw ParseError(line_no, tokens.back().column + 1, "expected '->' in rule");
    TermParser parser(declared, file.arities, line_no);
    Term lhs = parser.parse(tokens, 0, arrow);
    if (arrow + 1 >= tokens.size())
      throw ParseError(line_no, tokens[arrow].column, "missing right-hand side");
    Term rhs = parser.parse(tokens, arrow + 1, tokens.size());
    file.rules.push_back(
        ParsedRule{Rule{std::move(lhs), std::move(rhs)}, SourcePos{line_no, tokens[0].column}});
    saw_rule = true;
  }
  if (file.rules.empty()) throw ParseError(line_no, 1, "program contains no rules");
  return file;
}

Term parse_term(std::string_view text, const std::vector<std::string>& variables,
                std::map<std::string, std::size_t>& arities) {
  std::set<std::string> declared(variables.begin(), variables.end());
  if (text.find('\n') != std::string_view::npos)
    throw ParseError(1, text.find('\n') + 1, "term must be a single line");
  std::vector<Token> tokens = lex_line(text, 1);
  if (tokens.empty()) throw ParseError(1, 1, "expected a term");
  TermParser parser(declared, arities, 1);
  return parser.parse(tokens, 0, tokens.size());
}

}  // namespace recpair
