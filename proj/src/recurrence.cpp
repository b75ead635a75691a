#include "recpair/recurrence.hpp"

#include <cassert>
#include <cstdint>
#include <vector>

#include "recpair/unify.hpp"

namespace recpair {

namespace {

// One-level decomposition u = c[w]; the residual must agree across all
// holes of c.
std::optional<Term> strip_context(const Term& c, const Term& u) {
  std::optional<Term> residual;
  std::vector<std::pair<Term, Term>> work{{c, u}};
  for (std::size_t i = 0; i < work.size(); ++i) {
    const Term cc = work[i].first;
    const Term uu = work[i].second;
    if (cc.is_hole()) {
      if (residual && *residual != uu) return std::nullopt;
      residual = uu;
      continue;
    }
    if (!cc.has_hole()) {
      if (cc != uu) return std::nullopt;
      continue;
    }
    if (uu.is_var() || cc.name() != uu.name() || cc.arity() != uu.arity())
      return std::nullopt;
    for (std::size_t k = 0; k < cc.arity(); ++k)
      work.emplace_back(cc.args()[k], uu.args()[k]);
  }
  return residual;
}

bool is_binary_app(const Term& t, const std::string& symbol) {
  return t.is_app() && t.name() == symbol && t.arity() == 2;
}

bool reconstruction_matches(const Program& program, const RecurrentPair& pair) {
  return variant_of(program[pair.r1_index], rebuild_r1(pair)).has_value() &&
         variant_of(program[pair.r2_index], rebuild_r2(pair)).has_value();
}

std::vector<RecurrentPair> certificates_for_pair(const Program& program, std::size_t i,
                                                 std::size_t j,
                                                 const std::vector<R1Match>& r1_matches) {
  std::vector<RecurrentPair> out;
  for (const R1Match& m1 : r1_matches) {
    const std::string& f = program[i].lhs.name();
    if (!is_binary_app(program[j].lhs, f)) continue;
    for (const R2Match& m2 : match_r2(program[j], m1.context)) {
      RecurrentPair pair{program[i], program[j], i,     j,     f,
                         m1.context, m2.base,    m2.t_kind, m1.n1, m2.n2, m2.n3};
      if (reconstruction_matches(program, pair)) out.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(TKind kind) { return kind == TKind::IsX ? "x" : "s"; }

std::optional<Term> abstract_context(const Term& t, const std::string& y) {
  VarSet vs = vars(t);
  if (vs.size() != 1 || *vs.begin() != y) return std::nullopt;
  return apply(t, Substitution::of({{y, Term::hole()}}));
}

std::vector<std::pair<std::size_t, Term>> peel(const Term& c, const Term& u) {
  assert(is_context(c) && !c.is_hole() && is_ground(c));
  std::vector<std::pair<std::size_t, Term>> chain{{0, u}};
  Term current = u;
  while (auto residual = strip_context(c, current)) {
    current = *residual;
    chain.emplace_back(chain.size(), current);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<R1Match> match_r1(const Rule& r) {
  std::vector<R1Match> out;
  if (!r.lhs.is_app() || r.lhs.arity() != 2) return out;
  if (!is_binary_app(r.rhs, r.lhs.name())) return out;
  const Term& x = r.lhs.args()[0];
  if (!x.is_var()) return out;
  const Term& lowered = r.lhs.args()[1];  // c[y]
  VarSet lowered_vars = vars(lowered);
  if (lowered_vars.size() != 1) return out;
  const std::string y = *lowered_vars.begin();
  if (y == x.name()) return out;
  auto context = abstract_context(lowered, y);
  if (!context || context->is_hole()) return out;  // degenerate c = hole
  if (!(r.rhs.args()[1].is_var() && r.rhs.args()[1].name() == y)) return out;
  for (const auto& [n, residual] : peel(*context, r.rhs.args()[0])) {
    if (residual.is_var() && residual.name() == x.name())
      out.push_back(R1Match{x.name(), y, *context, n});
  }
  return out;
}

std::vector<R2Match> match_r2(const Rule& r, const Term& c) {
  std::vector<R2Match> out;
  if (!r.lhs.is_app() || r.lhs.arity() != 2) return out;
  if (!is_binary_app(r.rhs, r.lhs.name())) return out;
  const Term& x = r.lhs.args()[0];
  if (!x.is_var()) return out;
  const Term& base = r.lhs.args()[1];  // s
  if (!is_ground(base)) return out;
  std::optional<std::size_t> n3;
  for (const auto& [n, residual] : peel(c, r.rhs.args()[1])) {
    if (residual.is_var() && residual.name() == x.name()) {
      n3 = n;
      break;
    }
  }
  if (!n3) return out;
  for (const auto& [n, residual] : peel(c, r.rhs.args()[0])) {
    if (residual.is_var() && residual.name() == x.name()) {
      out.push_back(R2Match{x.name(), base, TKind::IsX, n, *n3});
    } else if (residual == base) {
      out.push_back(R2Match{x.name(), base, TKind::IsS, n, *n3});
    }
  }
  return out;
}

Rule rebuild_r1(const RecurrentPair& pair) {
  Term x = Term::var("x");
  Term y = Term::var("y");
  return Rule{Term::app(pair.root_symbol, {x, plug(pair.context, y)}),
              Term::app(pair.root_symbol,
                        {plug(context_power(pair.context, pair.n1), x), y})};
}

Rule rebuild_r2(const RecurrentPair& pair) {
  Term x = Term::var("x");
  Term t = pair.t_kind == TKind::IsX ? x : pair.base;
  return Rule{Term::app(pair.root_symbol, {x, pair.base}),
              Term::app(pair.root_symbol,
                        {plug(context_power(pair.context, pair.n2), t),
                         plug(context_power(pair.context, pair.n3), x)})};
}

std::vector<RecurrentPair> detect(const Program& program) {
  const std::int64_t n = static_cast<std::int64_t>(program.size());
  std::vector<std::vector<RecurrentPair>> rows(program.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<R1Match> r1_matches = match_r1(program[i]);
    if (r1_matches.empty()) continue;
    auto& row = rows[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < program.size(); ++j) {
      for (RecurrentPair& pair :
           certificates_for_pair(program, static_cast<std::size_t>(i), j, r1_matches))
        row.push_back(std::move(pair));
    }
  }
  std::vector<RecurrentPair> out;
  for (auto& row : rows)
    for (RecurrentPair& pair : row) out.push_back(std::move(pair));
  return out;
}

std::vector<RecurrentPair> detect_serial(const Program& program) {
  std::vector<RecurrentPair> out;
  for (std::size_t i = 0; i < program.size(); ++i) {
    std::vector<R1Match> r1_matches = match_r1(program[i]);
    if (r1_matches.empty()) continue;
    for (std::size_t j = 0; j < program.size(); ++j) {
      for (RecurrentPair& pair : certificates_for_pair(program, i, j, r1_matches))
        out.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace recpair
