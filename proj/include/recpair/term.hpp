#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recpair {

class Term;

namespace detail {

struct Node {
  bool is_var = false;
  std::string name;        // variable name or function symbol
  std::vector<Term> args;  // empty for variables and constants
  std::size_t tree_size = 1;  // logical node count, saturating
  std::size_t hash = 0;
  bool has_var = false;
  bool has_hole = false;

  ~Node();  // iterative teardown; deep towers would overflow the stack otherwise
};

}  // namespace detail

// Name of the reserved hole symbol of contexts. '[' is not an identifier
// character, so user programs can never introduce it.
inline constexpr std::string_view kHoleName = "[]";

// Immutable first-order term. Copies share structure; equality is structural
// and works on shared subterms without revisiting them.
class Term {
public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term hole();

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_hole() const { return !node_->is_var && node_->name == kHoleName; }

  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  std::size_t tree_size() const { return node_->tree_size; }
  std::size_t hash() const { return node_->hash; }
  bool ground() const { return !node_->has_var; }
  bool has_hole() const { return node_->has_hole; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  // Node identity, for memo tables keyed on shared structure.
  const detail::Node* node() const { return node_.get(); }

private:
  std::shared_ptr<const detail::Node> node_;

  explicit Term(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend struct detail::Node;
};

using VarSet = std::set<std::string>;

VarSet vars(const Term& t);
std::vector<std::string> vars_in_order(const Term& t);  // first occurrence, preorder
bool is_ground(const Term& t);
bool is_context(const Term& t);  // at least one hole

std::string to_string(const Term& t);

// Replaces every hole of c by filler. The result is hole-free iff filler is.
Term plug(const Term& c, const Term& filler);

// n-fold self-nesting of a context; n = 0 yields the bare hole.
Term context_power(const Term& c, std::size_t n);

// Finite map from variables to terms. Identity bindings are never stored.
class Substitution {
public:
  Substitution() = default;
  static Substitution of(std::initializer_list<std::pair<std::string, Term>> bindings);

  void bind(const std::string& var, Term value);
  std::optional<Term> lookup(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }

  const std::map<std::string, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  VarSet domain() const;

  bool operator==(const Substitution&) const = default;

private:
  std::map<std::string, Term> map_;
};

std::string to_string(const Substitution& subst);

Term apply(const Term& t, const Substitution& theta);

// Composition: apply(t, compose(sigma, theta)) == apply(apply(t, sigma), theta).
Substitution compose(const Substitution& sigma, const Substitution& theta);

// A substitution that permutes finitely many variables and fixes the rest.
class Renaming {
public:
  // Validates: every binding maps a variable to a variable, and the bindings
  // form a permutation of the variables they touch.
  static std::optional<Renaming> from(Substitution subst);

  const Substitution& substitution() const { return subst_; }
  Renaming inverse() const;

private:
  explicit Renaming(Substitution subst) : subst_(std::move(subst)) {}
  Substitution subst_;
};

struct Rule {
  Term lhs;
  Term rhs;
  bool operator==(const Rule&) const = default;
};

using Program = std::vector<Rule>;

std::string to_string(const Rule& r);

// Deterministic source of fresh variable names: stem_k with a monotone
// counter. Parallel callers partition the counter space via `start`.
class FreshNameSupply {
public:
  explicit FreshNameSupply(std::uint64_t start = 0) : next_(start) {}

  std::string fresh(std::string_view base, const VarSet& avoid);
  std::uint64_t state() const { return next_; }

private:
  std::uint64_t next_;
};

// Renames every variable of r to a fresh name outside `avoid`. Ground rules
// come back unchanged.
Rule fresh_variant(const Rule& r, const VarSet& avoid, FreshNameSupply& supply);

}  // namespace recpair

template <>
struct std::hash<recpair::Term> {
  std::size_t operator()(const recpair::Term& t) const noexcept { return t.hash(); }
};
