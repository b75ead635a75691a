#include "recpair/unify.hpp"

#include <cassert>
#include <unordered_set>
#include <vector>

namespace recpair {

namespace {

// Resolves top-level variable chains against the triangular bindings.
Term walk(Term t, const std::map<std::string, Term>& bindings) {
  while (t.is_var()) {
    auto it = bindings.find(t.name());
    if (it == bindings.end()) break;
    t = it->second;
  }
  return t;
}

// Does variable x occur in t once all bindings are chased?
bool occurs(const std::string& x, const Term& t, const std::map<std::string, Term>& bindings) {
  if (t.ground()) return false;
  std::vector<const detail::Node*> stack{t.node()};
  std::unordered_set<const detail::Node*> visited;
  while (!stack.empty()) {
    const detail::Node* n = stack.back();
    stack.pop_back();
    if (!n->has_var || !visited.insert(n).second) continue;
    if (n->is_var) {
      if (n->name == x) return true;
      auto it = bindings.find(n->name);
      if (it != bindings.end()) stack.push_back(it->second.node());
      continue;
    }
    for (const Term& a : n->args) stack.push_back(a.node());
  }
  return false;
}

// Fully applies the triangular bindings to t. Cycle-free by the occurs check;
// recursion depth is bounded by the number of bound variables.
Term resolve_full(const Term& t, const std::map<std::string, Term>& bindings,
                  std::map<std::string, Term>& cache);

Term resolve_var(const std::string& name, const std::map<std::string, Term>& bindings,
                 std::map<std::string, Term>& cache) {
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  Term out = resolve_full(bindings.at(name), bindings, cache);
  cache.emplace(name, out);
  return out;
}

Term resolve_full(const Term& t, const std::map<std::string, Term>& bindings,
                  std::map<std::string, Term>& cache) {
  Substitution step;
  for (const std::string& name : vars_in_order(t)) {
    if (bindings.count(name)) step.bind(name, resolve_var(name, bindings, cache));
  }
  return apply(t, step);
}

}  // namespace

std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
  std::map<std::string, Term> bound;
  std::vector<std::pair<Term, Term>> work{{pattern, subject}};
  for (std::size_t i = 0; i < work.size(); ++i) {
    const Term p = work[i].first;
    const Term s = work[i].second;
    if (p.is_var()) {
      auto it = bound.find(p.name());
      if (it == bound.end()) {
        bound.emplace(p.name(), s);
      } else if (it->second != s) {
        return std::nullopt;
      }
      continue;
    }
    if (s.is_var()) return std::nullopt;
    if (p.name() != s.name() || p.arity() != s.arity()) return std::nullopt;
    for (std::size_t k = 0; k < p.arity(); ++k)
      work.emplace_back(p.args()[k], s.args()[k]);
  }
  Substitution out;
  for (auto& [name, value] : bound) out.bind(name, std::move(value));
  return out;
}

UnifyOutcome mgu(const Term& s, const Term& t) {
  std::map<std::string, Term> bindings;
  std::vector<std::pair<Term, Term>> work{{s, t}};
  for (std::size_t i = 0; i < work.size(); ++i) {
    Term a = walk(work[i].first, bindings);
    Term b = walk(work[i].second, bindings);
    if (a == b) continue;
    if (a.is_var()) {
      if (occurs(a.name(), b, bindings)) return UnifyOutcome::failure(UnifyFailure::OccursCheck);
      bindings.emplace(a.name(), b);
      continue;
    }
    if (b.is_var()) {
      if (occurs(b.name(), a, bindings)) return UnifyOutcome::failure(UnifyFailure::OccursCheck);
      bindings.emplace(b.name(), a);
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity())
      return UnifyOutcome::failure(UnifyFailure::Clash);
    for (std::size_t k = 0; k < a.arity(); ++k)
      work.emplace_back(a.args()[k], b.args()[k]);
  }
  Substitution solved;
  std::map<std::string, Term> cache;
  for (const auto& [name, value] : bindings)
    solved.bind(name, resolve_var(name, bindings, cache));
  return UnifyOutcome::success(std::move(solved));
}

namespace {

// Simultaneous variable-to-variable matching over a list of term pairs,
// consistent in both directions.
std::optional<std::map<std::string, std::string>> variant_map(
    std::span<const std::pair<Term, Term>> pairs) {
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
  std::vector<std::pair<Term, Term>> work(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    const Term a = work[i].first;
    const Term b = work[i].second;
    if (a.is_var() != b.is_var()) return std::nullopt;
    if (a.is_var()) {
      auto f = fwd.find(a.name());
      if (f != fwd.end() && f->second != b.name()) return std::nullopt;
      auto g = bwd.find(b.name());
      if (g != bwd.end() && g->second != a.name()) return std::nullopt;
      fwd.emplace(a.name(), b.name());
      bwd.emplace(b.name(), a.name());
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t k = 0; k < a.arity(); ++k)
      work.emplace_back(a.args()[k], b.args()[k]);
  }
  return fwd;
}

// Closes an injective variable map into a permutation of the touched
// variables by mapping every chain end back to its chain start.
Substitution close_to_permutation(const std::map<std::string, std::string>& fwd) {
  std::map<std::string, std::string> inv;
  for (const auto& [from, to] : fwd) inv.emplace(to, from);
  Substitution out;
  for (const auto& [from, to] : fwd) out.bind(from, Term::var(to));
  for (const auto& [from, to] : fwd) {
    if (fwd.count(to)) continue;  // not a chain end
    std::string start = to;
    while (inv.count(start)) start = inv.at(start);
    out.bind(to, Term::var(start));
  }
  return out;
}

}  // namespace

std::optional<Renaming> variant_of(const Rule& r, const Rule& other) {
  const std::pair<Term, Term> pairs[] = {{other.lhs, r.lhs}, {other.rhs, r.rhs}};
  auto fwd = variant_map(pairs);
  if (!fwd) return std::nullopt;
  auto renaming = Renaming::from(close_to_permutation(*fwd));
  assert(renaming.has_value());
  return renaming;
}

bool equal_modulo_renaming(const Term& a, const Term& b) {
  if (a.ground() && b.ground()) return a == b;
  const std::pair<Term, Term> pairs[] = {{a, b}};
  return variant_map(pairs).has_value();
}

}  // namespace recpair
