#include <algorithm>
#include <random>

#include "doctest.h"
#include "testgen.hpp"

#include "recpair/rewrite.hpp"

using namespace recpair;

namespace {

Term V(const char* name) { return Term::var(name); }
Term C(const char* name) { return Term::app(name); }
Term S(Term t) { return Term::app("s", {std::move(t)}); }
Term F1(Term t) { return Term::app("f", {std::move(t)}); }
Term F2(Term a, Term b) { return Term::app("f", {std::move(a), std::move(b)}); }
Term G(Term a, Term b) { return Term::app("g", {std::move(a), std::move(b)}); }

Term s_tower(std::size_t n) {
  Term t = C("0");
  for (std::size_t i = 0; i < n; ++i) t = S(std::move(t));
  return t;
}

// the two-rule shift-and-copy loop program (towers shrink by one, grow by two)
const Rule kShiftR1{F2(V("x"), S(V("y"))), F2(S(S(V("x"))), V("y"))};
const Rule kShiftR2{F2(V("x"), C("0")), F2(S(C("0")), V("x"))};

// the narrowing variant: shift by one, then copy the first argument
const Rule kCopyR1{F2(V("x"), S(V("y"))), F2(S(V("x")), V("y"))};
const Rule kCopyR2{F2(V("x"), C("0")), F2(V("x"), S(V("x")))};

}  // namespace

TEST_CASE("instantiation steps") {
  CHECK(trs_step(Rule{F1(V("x")), S(V("x"))}, F1(F1(V("x")))) == S(F1(V("x"))));
  CHECK(trs_step(kShiftR2, F2(S(C("0")), C("0"))) == F2(S(C("0")), S(C("0"))));
  CHECK_FALSE(trs_step(Rule{F1(V("x")), S(V("x"))}, Term::app("g", {C("0")})).has_value());
  // applies only at the root
  CHECK_FALSE(trs_step(Rule{F1(V("x")), S(V("x"))}, S(F1(C("0")))).has_value());

  SUBCASE("deterministic: repeated calls agree") {
    auto a = trs_step(kShiftR1, F2(C("0"), S(S(C("0")))));
    auto b = trs_step(kShiftR1, F2(C("0"), S(S(C("0")))));
    REQUIRE(a.has_value());
    CHECK(*a == *b);
  }
}

TEST_CASE("narrowing steps") {
  FreshNameSupply supply;
  CHECK(lp_step(Rule{F1(G(V("x"), C("0"))), F1(V("x"))}, F1(G(V("x"), V("x"))), supply) ==
        F1(C("0")));
  CHECK(lp_step(kCopyR2, F2(S(C("0")), C("0")), supply) ==
        F2(S(C("0")), S(S(C("0")))));
  CHECK_FALSE(lp_step(Rule{F1(C("0")), F1(C("0"))}, Term::app("g", {C("0")}), supply)
                  .has_value());

  SUBCASE("results are stable across fresh supplies, modulo renaming") {
    FreshNameSupply a(0), b(1000);
    Term t = F2(V("u"), S(V("u")));
    auto ra = lp_step(kCopyR1, t, a);
    auto rb = lp_step(kCopyR1, t, b);
    REQUIRE(ra.has_value());
    REQUIRE(rb.has_value());
    CHECK(equal_modulo_renaming(*ra, *rb));
  }

  SUBCASE("narrowing instantiates the subject as well") {
    FreshNameSupply s2;
    // f(u, 0) narrows with f(x, s(y)) only if 0 unifies with s(y): it does not
    CHECK_FALSE(lp_step(kCopyR1, F2(V("u"), C("0")), s2).has_value());
    // but f(u, v) does, instantiating v
    CHECK(lp_step(kCopyR1, F2(V("u"), V("v")), s2).has_value());
  }
}

TEST_CASE("mode dispatch and sequences") {
  FreshNameSupply supply;
  Term start = F2(S(C("0")), S(C("0")));
  CHECK(step(Mode::Trs, kShiftR1, start, supply) == trs_step(kShiftR1, start));
  {
    FreshNameSupply a(3), b(3);
    CHECK(step(Mode::Lp, kCopyR1, start, a) == lp_step(kCopyR1, start, b));
  }

  const Rule seq[] = {kShiftR1, kShiftR2};
  CHECK(step_seq(Mode::Trs, seq, start, supply) == F2(S(C("0")), s_tower(3)));

  const Rule single[] = {kShiftR2};
  CHECK(step_seq(Mode::Trs, single, F2(C("0"), C("0")), supply) ==
        step(Mode::Trs, kShiftR2, F2(C("0"), C("0")), supply));

  // inapplicable middle rule: after the copy the second argument is no tower
  const Rule blocked[] = {kShiftR2, kShiftR1, kShiftR2};
  CHECK_FALSE(step_seq(Mode::Trs, blocked, F2(C("0"), C("0")), supply).has_value());

  CHECK_THROWS_AS(step_seq(Mode::Trs, std::span<const Rule>{}, start, supply),
                  std::invalid_argument);
}

TEST_CASE("rule iteration") {
  FreshNameSupply supply;
  CHECK(iterate_rule(Mode::Trs, kShiftR1, F2(S(C("0")), C("0")), 0, supply) ==
        F2(S(C("0")), C("0")));
  Term t = F2(C("0"), S(C("0")));
  CHECK(iterate_rule(Mode::Trs, kShiftR1, t, 1, supply) ==
        step(Mode::Trs, kShiftR1, t, supply));
  // three shift steps move the tower across: 2*3 + 1 = 7
  CHECK(iterate_rule(Mode::Trs, kShiftR1, F2(S(C("0")), s_tower(3)), 3, supply) ==
        F2(s_tower(7), C("0")));
  CHECK_FALSE(iterate_rule(Mode::Trs, kShiftR1, F2(C("0"), s_tower(2)), 3, supply)
                  .has_value());
}

TEST_CASE("exploration") {
  Program shift = {kShiftR1, kShiftR2};
  FreshNameSupply supply;

  SUBCASE("no applicable rule: just the start term") {
    ExploreResult r = explore(Mode::Trs, shift, C("0"), 5, supply);
    CHECK(r.terms.size() == 1);
    CHECK(r.steps.empty());
    CHECK_FALSE(r.budget_exhausted);
  }

  SUBCASE("budget zero keeps only the start term") {
    ExploreResult r = explore(Mode::Trs, shift, F2(S(C("0")), C("0")), 0, supply);
    CHECK(r.terms == std::vector<Term>{F2(S(C("0")), C("0"))});
    CHECK(r.budget_exhausted);  // a rule still applies at the cutoff
  }

  SUBCASE("depth four reaches the whole loop prefix") {
    ExploreResult r = explore(Mode::Trs, shift, F2(S(C("0")), C("0")), 4, supply);
    auto contains = [&](const Term& t) {
      return std::find(r.terms.begin(), r.terms.end(), t) != r.terms.end();
    };
    CHECK(contains(F2(S(C("0")), C("0"))));
    CHECK(contains(F2(S(C("0")), S(C("0")))));
    CHECK(contains(F2(s_tower(3), C("0"))));
    CHECK(contains(F2(S(C("0")), s_tower(3))));
    CHECK(r.budget_exhausted);

    SUBCASE("traces replay exactly") {
      for (const StepTrace& trace : r.steps) {
        CHECK(apply(trace.applied_rule.rhs, trace.subst) == trace.result);
        CHECK(trace.mode == Mode::Trs);
      }
    }
  }

  SUBCASE("lp exploration deduplicates modulo renaming") {
    Program loop = {Rule{F1(V("x")), F1(S(V("x")))}};
    FreshNameSupply s2;
    ExploreResult r = explore(Mode::Lp, loop, F1(V("u")), 3, s2);
    // each depth adds exactly one new term shape
    CHECK(r.terms.size() == 4);
    CHECK(r.budget_exhausted);
    for (const StepTrace& trace : r.steps) {
      CHECK(apply(trace.applied_rule.rhs, trace.subst) == trace.result);
      CHECK(trace.mode == Mode::Lp);
    }
  }
}

TEST_CASE("instantiation and narrowing agree on ground loop prefixes") {
  Program shift = {kShiftR1, kShiftR2};
  FreshNameSupply supply;
  ExploreResult r = explore(Mode::Trs, shift, F2(S(C("0")), C("0")), 6, supply);
  for (const Term& t : r.terms) {
    for (const Rule& rule : shift) {
      auto via_trs = trs_step(rule, t);
      auto via_lp = lp_step(rule, t, supply);
      CHECK(via_trs.has_value() == via_lp.has_value());
      if (via_trs && via_lp) CHECK(*via_trs == *via_lp);
    }
  }
}

TEST_CASE("rule stability under substitution") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    Term lhs = testgen::random_term(rng, 3, {"x", "y"});
    // right-hand sides sometimes introduce a variable the left side lacks
    Term rhs = testgen::random_term(rng, 3, i % 5 == 0 ? std::vector<std::string>{"x", "y", "w"}
                                                       : std::vector<std::string>{"x", "y"});
    Rule r{lhs, rhs};
    Substitution theta;
    for (const std::string& v : vars(lhs))
      theta.bind(v, testgen::random_ground_term(rng, 2));
    Term instance = apply(lhs, theta);
    Term expected = apply(rhs, theta);

    auto stepped = trs_step(r, instance);
    REQUIRE(stepped.has_value());
    CHECK(*stepped == expected);

    VarSet lhs_vars = vars(lhs);
    bool rhs_inside = true;
    for (const std::string& v : vars(rhs)) rhs_inside = rhs_inside && lhs_vars.count(v);
    if (rhs_inside) {
      FreshNameSupply supply;
      auto narrowed = lp_step(r, instance, supply);
      REQUIRE(narrowed.has_value());
      CHECK(equal_modulo_renaming(*narrowed, expected));
    }
  }
}
