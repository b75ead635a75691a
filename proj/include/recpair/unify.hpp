#pragma once

#include <optional>
#include <span>
#include <utility>

#include "recpair/term.hpp"

namespace recpair {

enum class UnifyFailure { Clash, OccursCheck };

// Result of mgu(). On success the unifier is idempotent: the triangular
// solved form is fully applied and identity bindings are pruned, so equal
// problems yield structurally equal answers.
class UnifyOutcome {
public:
  static UnifyOutcome success(Substitution subst) {
    return UnifyOutcome(std::move(subst), UnifyFailure::Clash);
  }
  static UnifyOutcome failure(UnifyFailure reason) {
    return UnifyOutcome(std::nullopt, reason);
  }

  bool ok() const { return subst_.has_value(); }
  const Substitution& subst() const { return *subst_; }
  UnifyFailure failure_reason() const { return reason_; }

private:
  UnifyOutcome(std::optional<Substitution> subst, UnifyFailure reason)
      : subst_(std::move(subst)), reason_(reason) {}
  std::optional<Substitution> subst_;
  UnifyFailure reason_;
};

// Instance check: Some(theta) with apply(pattern, theta) == subject and
// Dom(theta) a subset of vars(pattern), iff subject is an instance of pattern.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);

// Most general unifier with occurs check.
UnifyOutcome mgu(const Term& s, const Term& t);

// Some(gamma) iff r equals other renamed by gamma on both sides at once.
std::optional<Renaming> variant_of(const Rule& r, const Rule& other);

// True iff a bijective variable-to-variable renaming maps a onto b.
bool equal_modulo_renaming(const Term& a, const Term& b);

}  // namespace recpair
