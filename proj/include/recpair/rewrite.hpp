#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "recpair/term.hpp"
#include "recpair/unify.hpp"

namespace recpair {

// The two root-rewrite semantics: instantiation (term rewriting) and
// narrowing against a renamed-apart rule (logic programming).
enum class Mode { Trs, Lp };

std::string_view to_string(Mode mode);

// One executed root step. Replaying applied_rule.rhs under subst reproduces
// result exactly; for TRS steps applied_rule is the program rule itself, for
// LP steps it is the fresh variant that was unified against.
struct StepTrace {
  Term start;
  std::size_t rule_index;
  Rule applied_rule;
  Substitution subst;
  Term result;
  Mode mode;
};

// Root rewrite by instantiation; None when t is not an instance of r.lhs.
// The matching substitution is restricted to vars(r.lhs), so right-hand-side
// variables outside the left-hand side pass through unchanged.
std::optional<Term> trs_step(const Rule& r, const Term& t);

// Root rewrite by narrowing: r is renamed apart from t, then unified with it.
// The result is unique up to the names drawn from the supply.
std::optional<Term> lp_step(const Rule& r, const Term& t, FreshNameSupply& supply);

std::optional<Term> step(Mode mode, const Rule& r, const Term& t, FreshNameSupply& supply);

// Left-to-right composition over a non-empty rule sequence; None as soon as
// one step fails. Throws std::invalid_argument on an empty sequence.
std::optional<Term> step_seq(Mode mode, std::span<const Rule> rules, const Term& t,
                             FreshNameSupply& supply);

// n-fold application of one rule; n = 0 returns t.
std::optional<Term> iterate_rule(Mode mode, const Rule& r, const Term& t, std::size_t n,
                                 FreshNameSupply& supply);

struct ExploreResult {
  std::vector<Term> terms;       // start first, then discovery order, deduplicated
  std::vector<StepTrace> steps;  // every executed edge
  bool budget_exhausted = false;
};

// Breadth-first enumeration of all root reductions reachable within
// max_depth steps, deduplicating terms modulo renaming. Successors follow
// program order, so traces are deterministic.
ExploreResult explore(Mode mode, const Program& program, const Term& start,
                      std::size_t max_depth, FreshNameSupply& supply);

}  // namespace recpair
