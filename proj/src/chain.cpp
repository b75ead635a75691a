#include "recpair/chain.hpp"

#include <cstdint>
#include <string>

namespace recpair {

namespace {

// c^height[base] built bottom-up; refuses once the logical size passes
// max_size. Every nesting level adds at least one node, so a height beyond
// max_size can be refused before building anything.
Term tower(const Term& context, const BigNat& height, const Term& base,
           std::size_t max_size) {
  if (height > BigNat(max_size)) {
    throw SizeLimitError("tower height " + height.to_decimal() +
                         " exceeds the term size limit " + std::to_string(max_size));
  }
  std::uint64_t steps = height.to_u64();
  Term acc = base;
  for (std::uint64_t i = 0; i < steps; ++i) {
    acc = plug(context, acc);
    if (acc.tree_size() > max_size) {
      throw SizeLimitError("term size exceeds the limit " + std::to_string(max_size) +
                           " at nesting depth " + std::to_string(i + 1));
    }
  }
  return acc;
}

}  // namespace

PiPair pi_eval_at(TKind t_kind, std::size_t n2, std::size_t n3, const BigNat& i,
                  std::size_t n) {
  BigNat pi{n2};
  BigNat pi_prime{n3};
  for (std::size_t k = 0; k < n; ++k) {
    BigNat delta_prime = i * pi_prime + pi;
    pi = (t_kind == TKind::IsS ? BigNat{} : delta_prime) + BigNat(n2);
    pi_prime = delta_prime + BigNat(n3);
  }
  return PiPair{n, std::move(pi), std::move(pi_prime)};
}

PiPair pi_eval(const RecurrentPair& pair, std::size_t n) {
  return pi_eval_at(pair.t_kind, pair.n2, pair.n3, BigNat(pair.n1), n);
}

std::vector<PiPair> pi_sequence(const RecurrentPair& pair, std::size_t upto) {
  std::vector<PiPair> out;
  out.reserve(upto + 1);
  const BigNat i{pair.n1};
  BigNat pi{pair.n2};
  BigNat pi_prime{pair.n3};
  for (std::size_t n = 0; n <= upto; ++n) {
    out.push_back(PiPair{n, pi, pi_prime});
    BigNat delta_prime = i * pi_prime + pi;
    pi = (pair.t_kind == TKind::IsS ? BigNat{} : delta_prime) + BigNat(pair.n2);
    pi_prime = delta_prime + BigNat(pair.n3);
  }
  return out;
}

PiPair pi_closed_form_s_at(std::size_t n2, std::size_t n3, const BigNat& i, std::size_t n) {
  BigNat geometric;  // sum_{k=0}^{n-1} i^k
  BigNat power{1};
  for (std::size_t k = 0; k < n; ++k) {
    geometric += power;
    power = power * i;
  }
  // power is now i^n
  BigNat pi_prime = BigNat(n3) * power + (BigNat(n2) + BigNat(n3)) * geometric;
  return PiPair{n, BigNat(n2), std::move(pi_prime)};
}

PiPair pi_closed_form_s(const RecurrentPair& pair, std::size_t n) {
  if (pair.t_kind != TKind::IsS)
    throw std::invalid_argument("pi_closed_form_s: certificate has t = x");
  return pi_closed_form_s_at(pair.n2, pair.n3, BigNat(pair.n1), n);
}

Term tower_pair_term(const RecurrentPair& pair, const BigNat& m, const BigNat& n,
                     std::size_t max_size) {
  Term left = tower(pair.context, m, pair.base, max_size);
  Term right = tower(pair.context, n, pair.base, max_size);
  Term out = Term::app(pair.root_symbol, {std::move(left), std::move(right)});
  if (out.tree_size() > max_size) {
    throw SizeLimitError("term size exceeds the limit " + std::to_string(max_size));
  }
  return out;
}

Term witness_term(const RecurrentPair& pair, std::size_t n, std::size_t max_size) {
  PiPair heights = pi_eval(pair, n);
  return tower_pair_term(pair, heights.pi, heights.pi_prime, max_size);
}

Term checked_r1_run(const RecurrentPair& pair, std::size_t m, std::size_t n, Mode mode,
                  std::size_t max_size) {
  Term start = tower_pair_term(pair, BigNat(m), BigNat(n), max_size);
  FreshNameSupply supply;
  auto reached = iterate_rule(mode, pair.r1, start, n, supply);
  if (!reached) throw std::logic_error("checked_r1_run: r1 stopped applying");
  Term expected =
      tower_pair_term(pair, BigNat(pair.n1) * BigNat(n) + BigNat(m), BigNat(0), max_size);
  if (*reached != expected) {
    throw std::logic_error("checked_r1_run: reached " + to_string(*reached) +
                           ", expected " + to_string(expected));
  }
  return *reached;
}

Term checked_r2_run(const RecurrentPair& pair, std::size_t m, Mode mode,
                  std::size_t max_size) {
  Term start = tower_pair_term(pair, BigNat(m), BigNat(0), max_size);
  FreshNameSupply supply;
  auto reached = step(mode, pair.r2, start, supply);
  if (!reached) throw std::logic_error("checked_r2_run: r2 not applicable");
  const BigNat m_prime = pair.t_kind == TKind::IsS ? BigNat(0) : BigNat(m);
  Term expected = tower_pair_term(pair, m_prime + BigNat(pair.n2),
                                  BigNat(m) + BigNat(pair.n3), max_size);
  if (*reached != expected) {
    throw std::logic_error("checked_r2_run: reached " + to_string(*reached) +
                           ", expected " + to_string(expected));
  }
  return *reached;
}

ChainWitness verify_prefix(const RecurrentPair& pair, std::size_t segments, Mode mode,
                           const VerifyOptions& options) {
  ChainWitness witness{.pair = pair, .mode = mode, .requested_segments = segments};

  std::vector<PiPair> heights = pi_sequence(pair, segments);
  std::vector<std::optional<Term>> terms(segments + 1);
  for (std::size_t n = 0; n <= segments; ++n) {
    try {
      terms[n] = tower_pair_term(pair, heights[n].pi, heights[n].pi_prime,
                                 options.max_term_size);
    } catch (const SizeLimitError&) {
      witness.guard_hit = true;
    }
  }

  FreshNameSupply supply(options.fresh_start);
  for (std::size_t n = 0; n < segments; ++n) {
    WitnessEntry entry;
    entry.index = n;
    entry.pi = heights[n].pi;
    entry.pi_prime = heights[n].pi_prime;
    entry.term = terms[n];
    if (terms[n] && terms[n + 1] && heights[n].pi_prime.fits_u64()) {
      ++witness.attempted;
      bool ok = false;
      auto drained = iterate_rule(mode, pair.r1, *terms[n],
                                  heights[n].pi_prime.to_u64(), supply);
      if (drained) {
        auto copied = step(mode, pair.r2, *drained, supply);
        ok = copied && *copied == *terms[n + 1];
      }
      entry.segment_verified = ok;
      if (ok) {
        ++witness.verified;
        witness.last_verified = n;
      }
    } else if (terms[n] && terms[n + 1]) {
      witness.guard_hit = true;  // step count itself beyond what can be run
    }
    witness.entries.push_back(std::move(entry));
  }
  return witness;
}

std::vector<ChainWitness> verify_batch(std::span<const RecurrentPair> pairs,
                                       std::size_t segments, Mode mode,
                                       const VerifyOptions& options) {
  std::vector<std::optional<ChainWitness>> slots(pairs.size());
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    VerifyOptions local = options;
    // Disjoint name ranges per certificate keep LP runs independent.
    local.fresh_start = options.fresh_start + (static_cast<std::uint64_t>(k) << 32);
    slots[static_cast<std::size_t>(k)] = verify_prefix(pairs[k], segments, mode, local);
  }
  std::vector<ChainWitness> out;
  out.reserve(pairs.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::vector<ChainWitness> verify_batch_serial(std::span<const RecurrentPair> pairs,
                                              std::size_t segments, Mode mode,
                                              const VerifyOptions& options) {
  std::vector<ChainWitness> out;
  out.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    VerifyOptions local = options;
    local.fresh_start = options.fresh_start + (static_cast<std::uint64_t>(k) << 32);
    out.push_back(verify_prefix(pairs[k], segments, mode, local));
  }
  return out;
}

}  // namespace recpair
