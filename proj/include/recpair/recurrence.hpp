#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recpair/term.hpp"

namespace recpair {

enum class TKind { IsX, IsS };

std::string_view to_string(TKind kind);

// Certificate of mutual recursion between two rules of a program:
//   r1 = ( f(x, c[y]),  f(c^n1[x], y) )        with x != y
//   r2 = ( f(x, s),     f(c^n2[t], c^n3[x]) )  with t = x or t = s
// where c is a ground context and s a ground term. r1 drains a c-tower from
// the second into the first argument of f, r2 copies one back.
struct RecurrentPair {
  Rule r1;
  Rule r2;
  std::size_t r1_index = 0;
  std::size_t r2_index = 0;
  std::string root_symbol;  // f, binary on both sides of both rules
  Term context;             // c: ground, at least one hole, not the bare hole
  Term base;                // s: ground
  TKind t_kind = TKind::IsS;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;
};

// Replaces every occurrence of variable y in t by the hole, provided y is
// the only variable of t. The bare hole is a legal result here; template
// matching rejects it separately.
std::optional<Term> abstract_context(const Term& t, const std::string& y);

// All decompositions u = c^n[w], ordered by descending n; (0, u) is always
// included. c must be a ground context other than the bare hole.
std::vector<std::pair<std::size_t, Term>> peel(const Term& c, const Term& u);

struct R1Match {
  std::string x;
  std::string y;
  Term context;
  std::size_t n1;
};

struct R2Match {
  std::string x;
  Term base;
  TKind t_kind;
  std::size_t n2;
  std::size_t n3;
};

// Instantiations of the r1 template for one rule.
std::vector<R1Match> match_r1(const Rule& r);

// Instantiations of the r2 template for one rule, against a fixed context.
std::vector<R2Match> match_r2(const Rule& r, const Term& c);

// Rebuilds the template rules from certificate parameters, with canonical
// variable names; used to cross-check every candidate before emission.
Rule rebuild_r1(const RecurrentPair& pair);
Rule rebuild_r2(const RecurrentPair& pair);

// Scans every ordered rule pair of the program, diagonal included, and
// returns all certificates whose reconstruction matches the source rules
// modulo renaming. Output order is (r1_index, r2_index) lexicographic, so
// the result is identical to detect_serial.
std::vector<RecurrentPair> detect(const Program& program);

// Plain nested-loop reference implementation.
std::vector<RecurrentPair> detect_serial(const Program& program);

}  // namespace recpair
