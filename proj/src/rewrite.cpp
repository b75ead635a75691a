#include "recpair/rewrite.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace recpair {

namespace {

struct FullStep {
  Term result;
  Rule applied_rule;
  Substitution subst;
};

std::optional<FullStep> trs_step_full(const Rule& r, const Term& t) {
  auto theta = match_term(r.lhs, t);
  if (!theta) return std::nullopt;
  Term result = apply(r.rhs, *theta);
  return FullStep{std::move(result), r, std::move(*theta)};
}

std::optional<FullStep> lp_step_full(const Rule& r, const Term& t, FreshNameSupply& supply) {
  Rule variant = fresh_variant(r, vars(t), supply);
  UnifyOutcome out = mgu(t, variant.lhs);
  if (!out.ok()) return std::nullopt;
  Term result = apply(variant.rhs, out.subst());
  return FullStep{std::move(result), std::move(variant), out.subst()};
}

std::optional<FullStep> step_full(Mode mode, const Rule& r, const Term& t,
                                  FreshNameSupply& supply) {
  return mode == Mode::Trs ? trs_step_full(r, t) : lp_step_full(r, t, supply);
}

// Dedup key with variables canonicalized by first occurrence, so LP results
// that differ only in fresh names collapse.
std::string canonical_key(const Term& t) {
  std::string out;
  std::unordered_map<std::string, std::size_t> var_ids;
  struct Frame {
    const detail::Node* node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  auto emit = [&](const detail::Node* n) {
    if (n->is_var) {
      auto [it, inserted] = var_ids.try_emplace(n->name, var_ids.size());
      out += '$';
      out += std::to_string(it->second);
      return;
    }
    out += n->name;
    if (!n->args.empty()) {
      out += '(';
      stack.push_back({n, 0});
    }
  };
  emit(t.node());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.node->args.size()) {
      if (f.next > 0) out += ',';
      const detail::Node* child = f.node->args[f.next].node();
      ++f.next;
      emit(child);
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Trs ? "trs" : "lp"; }

std::optional<Term> trs_step(const Rule& r, const Term& t) {
  auto full = trs_step_full(r, t);
  if (!full) return std::nullopt;
  return std::move(full->result);
}

std::optional<Term> lp_step(const Rule& r, const Term& t, FreshNameSupply& supply) {
  auto full = lp_step_full(r, t, supply);
  if (!full) return std::nullopt;
  return std::move(full->result);
}

std::optional<Term> step(Mode mode, const Rule& r, const Term& t, FreshNameSupply& supply) {
  return mode == Mode::Trs ? trs_step(r, t) : lp_step(r, t, supply);
}

std::optional<Term> step_seq(Mode mode, std::span<const Rule> rules, const Term& t,
                             FreshNameSupply& supply) {
  if (rules.empty()) throw std::invalid_argument("step_seq: empty rule sequence");
  Term current = t;
  for (const Rule& r : rules) {
    auto next = step(mode, r, current, supply);
    if (!next) return std::nullopt;
    current = std::move(*next);
  }
  return current;
}

std::optional<Term> iterate_rule(Mode mode, const Rule& r, const Term& t, std::size_t n,
                                 FreshNameSupply& supply) {
  Term current = t;
  for (std::size_t i = 0; i < n; ++i) {
    auto next = step(mode, r, current, supply);
    if (!next) return std::nullopt;
    current = std::move(*next);
  }
  return current;
}

ExploreResult explore(Mode mode, const Program& program, const Term& start,
                      std::size_t max_depth, FreshNameSupply& supply) {
  ExploreResult result;
  result.terms.push_back(start);
  std::unordered_set<std::string> seen{canonical_key(start)};
  std::vector<Term> frontier{start};
  for (std::size_t depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    std::vector<Term> next_frontier;
    for (const Term& t : frontier) {
      for (std::size_t ri = 0; ri < program.size(); ++ri) {
        auto full = step_full(mode, program[ri], t, supply);
        if (!full) continue;
        result.steps.push_back(
            StepTrace{t, ri, full->applied_rule, full->subst, full->result, mode});
        if (seen.insert(canonical_key(full->result)).second) {
          result.terms.push_back(full->result);
          next_frontier.push_back(std::move(full->result));
        }
      }
    }
    frontier = std::move(next_frontier);
  }
  // Report whether the depth budget cut the search short.
  for (const Term& t : frontier) {
    for (const Rule& r : program) {
      if (step_full(mode, r, t, supply)) {
        result.budget_exhausted = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace recpair
