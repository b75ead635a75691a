#include "recpair/term.hpp"

#include <cassert>
#include <unordered_map>
#include <unordered_set>

namespace recpair {

namespace detail {

Node::~Node() {
  if (args.empty()) return;
  std::vector<Term> pending;
  pending.reserve(args.size());
  for (Term& t : args) pending.push_back(std::move(t));
  args.clear();
  while (!pending.empty()) {
    Term t = std::move(pending.back());
    pending.pop_back();
    if (t.node_ && t.node_.use_count() == 1 && !t.node_->args.empty()) {
      auto* n = const_cast<Node*>(t.node_.get());
      for (Term& child : n->args) pending.push_back(std::move(child));
      n->args.clear();
    }
  }
}

}  // namespace detail

namespace {

constexpr std::size_t kSizeSaturated = static_cast<std::size_t>(-1);

std::size_t saturating_add(std::size_t a, std::size_t b) {
  std::size_t out;
  if (__builtin_add_overflow(a, b, &out)) return kSizeSaturated;
  return out;
}

std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodePairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
    return hash_combine(reinterpret_cast<std::size_t>(p.first),
                        reinterpret_cast<std::size_t>(p.second));
  }
};

// Bottom-up rebuild of a term with an explicit stack. `shortcut(t)` either
// yields the replacement for the whole subtree or nullopt to descend.
// Shared subterms are transformed once.
template <typename Shortcut>
Term transform_term(const Term& root, Shortcut&& shortcut) {
  std::unordered_map<const detail::Node*, Term> memo;
  struct Frame {
    Term term;
    std::size_t next = 0;
    std::vector<Term> kids;
  };
  std::vector<Frame> stack;

  auto enter = [&](const Term& t) -> std::optional<Term> {
    if (auto it = memo.find(t.node()); it != memo.end()) return it->second;
    if (auto r = shortcut(t)) {
      memo.emplace(t.node(), *r);
      return r;
    }
    Frame f{t, 0, {}};
    f.kids.reserve(t.args().size());
    stack.push_back(std::move(f));
    return std::nullopt;
  };

  if (auto r = enter(root)) return *r;
  std::optional<Term> result;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.term.args().size()) {
      const Term& child = f.term.args()[f.next];
      ++f.next;
      if (auto r = enter(child)) f.kids.push_back(std::move(*r));
    } else {
      bool unchanged = true;
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (f.kids[i].node() != f.term.args()[i].node()) {
          unchanged = false;
          break;
        }
      }
      Term built = unchanged ? f.term : Term::app(f.term.name(), std::move(f.kids));
      memo.emplace(f.term.node(), built);
      stack.pop_back();
      if (stack.empty()) {
        result = std::move(built);
      } else {
        stack.back().kids.push_back(std::move(built));
      }
    }
  }
  return *result;
}

}  // namespace

Term Term::var(std::string name) {
  auto node = std::make_shared<detail::Node>();
  node->is_var = true;
  node->hash = hash_combine(hash_combine(0x5654, std::hash<std::string>{}(name)), 1);
  node->name = std::move(name);
  node->has_var = true;
  return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  assert(symbol != kHoleName || args.empty());
  auto node = std::make_shared<detail::Node>();
  node->hash = hash_combine(0xA999, std::hash<std::string>{}(symbol));
  node->name = std::move(symbol);
  node->has_hole = node->name == kHoleName;
  for (const Term& a : args) {
    node->tree_size = saturating_add(node->tree_size, a.tree_size());
    node->hash = hash_combine(node->hash, a.hash());
    node->has_var = node->has_var || !a.ground();
    node->has_hole = node->has_hole || a.has_hole();
  }
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::hole() { return app(std::string(kHoleName)); }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash || node_->tree_size != other.node_->tree_size)
    return false;
  std::vector<std::pair<const detail::Node*, const detail::Node*>> work{
      {node_.get(), other.node_.get()}};
  std::unordered_set<std::pair<const void*, const void*>, NodePairHash> seen;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (a == b) continue;
    if (!seen.insert({a, b}).second) continue;
    if (a->hash != b->hash || a->is_var != b->is_var || a->name != b->name ||
        a->args.size() != b->args.size())
      return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      work.push_back({a->args[i].node(), b->args[i].node()});
  }
  return true;
}

VarSet vars(const Term& t) {
  VarSet out;
  for (std::string& name : vars_in_order(t)) out.insert(std::move(name));
  return out;
}

std::vector<std::string> vars_in_order(const Term& t) {
  std::vector<std::string> out;
  if (t.ground()) return out;
  std::unordered_set<const detail::Node*> visited;
  std::set<std::string> seen;
  std::vector<const detail::Node*> stack{t.node()};
  while (!stack.empty()) {
    const detail::Node* n = stack.back();
    stack.pop_back();
    if (!n->has_var || !visited.insert(n).second) continue;
    if (n->is_var) {
      if (seen.insert(n->name).second) out.push_back(n->name);
      continue;
    }
    for (std::size_t i = n->args.size(); i-- > 0;) stack.push_back(n->args[i].node());
  }
  return out;
}

bool is_ground(const Term& t) { return t.ground(); }

bool is_context(const Term& t) { return t.has_hole(); }

std::string to_string(const Term& t) {
  std::string out;
  struct Frame {
    const detail::Node* node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  auto emit = [&](const detail::Node* n) {
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

Term plug(const Term& c, const Term& filler) {
  return transform_term(c, [&](const Term& t) -> std::optional<Term> {
    if (t.is_hole()) return filler;
    if (!t.has_hole()) return t;
    return std::nullopt;
  });
}

Term context_power(const Term& c, std::size_t n) {
  Term acc = Term::hole();
  for (std::size_t i = 0; i < n; ++i) acc = plug(c, acc);
  return acc;
}

Substitution Substitution::of(std::initializer_list<std::pair<std::string, Term>> bindings) {
  Substitution out;
  for (const auto& [name, value] : bindings) out.bind(name, value);
  return out;
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_var() && value.name() == var) {
    map_.erase(var);
    return;
  }
  map_.insert_or_assign(var, std::move(value));
}

std::optional<Term> Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

VarSet Substitution::domain() const {
  VarSet out;
  for (const auto& [name, value] : map_) out.insert(name);
  return out;
}

std::string to_string(const Substitution& subst) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : subst.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += " -> ";
    out += to_string(value);
  }
  out += '}';
  return out;
}

Term apply(const Term& t, const Substitution& theta) {
  if (theta.empty() || t.ground()) return t;
  return transform_term(t, [&](const Term& sub) -> std::optional<Term> {
    if (sub.is_var()) {
      if (auto bound = theta.lookup(sub.name())) return *bound;
      return sub;
    }
    if (sub.ground()) return sub;
    return std::nullopt;
  });
}

Substitution compose(const Substitution& sigma, const Substitution& theta) {
  Substitution out;
  for (const auto& [name, value] : sigma.bindings()) out.bind(name, apply(value, theta));
  for (const auto& [name, value] : theta.bindings()) {
    if (!sigma.contains(name)) out.bind(name, value);
  }
  return out;
}

std::optional<Renaming> Renaming::from(Substitution subst) {
  VarSet images;
  for (const auto& [name, value] : subst.bindings()) {
    if (!value.is_var()) return std::nullopt;
    if (!images.insert(value.name()).second) return std::nullopt;  // not injective
  }
  // A finite injective variable map extends the identity to a bijection
  // exactly when it permutes the variables it touches.
  for (const std::string& image : images) {
    if (!subst.contains(image)) return std::nullopt;
  }
  return Renaming(std::move(subst));
}

Renaming Renaming::inverse() const {
  Substitution inv;
  for (const auto& [name, value] : subst_.bindings()) inv.bind(value.name(), Term::var(name));
  return Renaming(std::move(inv));
}

std::string to_string(const Rule& r) {
  return to_string(r.lhs) + " -> " + to_string(r.rhs);
}

std::string FreshNameSupply::fresh(std::string_view base, const VarSet& avoid) {
  std::string_view stem = base;
  auto underscore = stem.rfind('_');
  if (underscore != std::string_view::npos && underscore + 1 < stem.size()) {
    bool digits = true;
    for (std::size_t i = underscore + 1; i < stem.size(); ++i)
      digits = digits && stem[i] >= '0' && stem[i] <= '9';
    if (digits) stem = stem.substr(0, underscore);
  }
  if (stem.empty()) stem = "v";
  while (true) {
    std::string candidate = std::string(stem) + "_" + std::to_string(next_++);
    if (avoid.count(candidate) == 0) return candidate;
  }
}

Rule fresh_variant(const Rule& r, const VarSet& avoid, FreshNameSupply& supply) {
  std::vector<std::string> order = vars_in_order(r.lhs);
  for (std::string& name : vars_in_order(r.rhs)) {
    if (std::find(order.begin(), order.end(), name) == order.end())
      order.push_back(std::move(name));
  }
  if (order.empty()) return r;
  VarSet used = avoid;
  for (const std::string& name : order) used.insert(name);
  Substitution renaming;
  for (const std::string& name : order) {
    std::string next = supply.fresh(name, used);
    used.insert(next);
    renaming.bind(name, Term::var(std::move(next)));
  }
  return Rule{apply(r.lhs, renaming), apply(r.rhs, renaming)};
}

}  // namespace recpair
