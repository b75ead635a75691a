// The parallel kernels must be drop-in replacements for the serial
// references: identical certificates in identical order, identical witnesses.

#include <random>

#include "doctest.h"
#include "testgen.hpp"

#include "recpair/chain.hpp"
#include "recpair/recurrence.hpp"

using namespace recpair;

namespace {

bool same_pair(const RecurrentPair& a, const RecurrentPair& b) {
  return a.r1_index == b.r1_index && a.r2_index == b.r2_index && a.r1 == b.r1 &&
         a.r2 == b.r2 && a.root_symbol == b.root_symbol && a.context == b.context &&
         a.base == b.base && a.t_kind == b.t_kind && a.n1 == b.n1 && a.n2 == b.n2 &&
         a.n3 == b.n3;
}

Program random_mixed_program(std::mt19937_64& rng, std::size_t planted,
                             std::size_t noise) {
  Program out;
  for (std::size_t k = 0; k < planted; ++k) {
    RecurrentPair pair =
        testgen::random_template_pair(rng, "f" + std::to_string(testgen::pick(rng, 4)));
    out.push_back(pair.r1);
    out.push_back(pair.r2);
  }
  for (std::size_t k = 0; k < noise; ++k) {
    Term lhs = testgen::random_term(rng, 3, {"x", "y"});
    Term rhs = testgen::random_term(rng, 3, {"x", "y"});
    out.push_back(Rule{std::move(lhs), std::move(rhs)});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("parallel detection equals the serial reference") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 40; ++round) {
    Program program =
        random_mixed_program(rng, 1 + testgen::pick(rng, 4), testgen::pick(rng, 12));
    auto parallel = detect(program);
    auto serial = detect_serial(program);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t k = 0; k < parallel.size(); ++k)
      CHECK(same_pair(parallel[k], serial[k]));
  }
}

TEST_CASE("parallel batch verification equals the serial reference") {
  std::mt19937_64 rng(62);
  std::vector<RecurrentPair> pairs;
  for (int k = 0; k < 12; ++k) pairs.push_back(testgen::random_template_pair(rng));
  for (Mode mode : {Mode::Trs, Mode::Lp}) {
    VerifyOptions options;
    options.max_term_size = 50000;  // some multi-hole certificates hit the cap
    auto parallel = verify_batch(pairs, 4, mode, options);
    auto serial = verify_batch_serial(pairs, 4, mode, options);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t k = 0; k < parallel.size(); ++k) {
      // template-built certificates never fail a segment they could attempt
      CHECK(parallel[k].all_attempted_verified());
      CHECK(parallel[k].verified == serial[k].verified);
      CHECK(parallel[k].attempted == serial[k].attempted);
      CHECK(parallel[k].guard_hit == serial[k].guard_hit);
      CHECK(parallel[k].last_verified == serial[k].last_verified);
      REQUIRE(parallel[k].entries.size() == serial[k].entries.size());
      for (std::size_t n = 0; n < parallel[k].entries.size(); ++n) {
        const WitnessEntry& pe = parallel[k].entries[n];
        const WitnessEntry& se = serial[k].entries[n];
        CHECK(pe.pi == se.pi);
        CHECK(pe.pi_prime == se.pi_prime);
        CHECK(pe.term.has_value() == se.term.has_value());
        if (pe.term && se.term) CHECK(*pe.term == *se.term);
        CHECK(pe.segment_verified == se.segment_verified);
      }
    }
  }
}

TEST_CASE("a larger mixed program keeps both paths in lockstep") {
  std::mt19937_64 rng(63);
  Program program = random_mixed_program(rng, 20, 120);
  auto parallel = detect(program);
  auto serial = detect_serial(program);
  REQUIRE(parallel.size() == serial.size());
  CHECK(!parallel.empty());
  for (std::size_t k = 0; k < parallel.size(); ++k)
    CHECK(same_pair(parallel[k], serial[k]));
}
