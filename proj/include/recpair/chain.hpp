#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "recpair/bignat.hpp"
#include "recpair/recurrence.hpp"
#include "recpair/rewrite.hpp"

namespace recpair {

// Default cap on the logical node count of any materialized witness term.
inline constexpr std::size_t kDefaultMaxTermSize = 1'000'000;

// Thrown when materializing a term would exceed the configured size cap.
// Tower counts stay exact beyond the cap; only construction is refused.
class SizeLimitError : public std::runtime_error {
public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Tower heights of the n-th witness term: pi for the first argument of the
// root symbol, pi_prime for the second. pi_prime is also the number of r1
// steps that drain witness n into the next r2 redex.
struct PiPair {
  std::size_t index = 0;
  BigNat pi;
  BigNat pi_prime;
};

// Exact bottom-up evaluation of the mutually recursive tower polynomials at
// an arbitrary point.
PiPair pi_eval_at(TKind t_kind, std::size_t n2, std::size_t n3, const BigNat& i,
                  std::size_t n);

// Evaluation at the certificate's own point i = n1.
PiPair pi_eval(const RecurrentPair& pair, std::size_t n);

// All of pi_eval for n = 0..upto in one pass.
std::vector<PiPair> pi_sequence(const RecurrentPair& pair, std::size_t upto);

// Closed form for t = s: pi_n(i) = n2 and
// pi_prime_n(i) = n3*i^n + sum_{k<n} (n2+n3)*i^k.
// Throws std::invalid_argument when t = x, which has no closed form here.
PiPair pi_closed_form_s_at(std::size_t n2, std::size_t n3, const BigNat& i, std::size_t n);
PiPair pi_closed_form_s(const RecurrentPair& pair, std::size_t n);

// f(c^m[s], c^n[s]); throws SizeLimitError beyond max_size logical nodes.
Term tower_pair_term(const RecurrentPair& pair, const BigNat& m, const BigNat& n,
                     std::size_t max_size);

// The n-th witness term f(c^{pi_n}[s], c^{pi_prime_n}[s]).
Term witness_term(const RecurrentPair& pair, std::size_t n,
                  std::size_t max_size = kDefaultMaxTermSize);

// Executes n steps of r1 from f(m, n) and checks the result is
// f(n1*n + m, 0); throws std::logic_error when engine and certificate
// disagree. Returns the reached term.
Term checked_r1_run(const RecurrentPair& pair, std::size_t m, std::size_t n, Mode mode,
                  std::size_t max_size = static_cast<std::size_t>(-1));

// One r2 step from f(m, 0), checked against f(m' + n2, m + n3) where m' = 0
// for t = s and m' = m for t = x.
Term checked_r2_run(const RecurrentPair& pair, std::size_t m, Mode mode,
                  std::size_t max_size = static_cast<std::size_t>(-1));

struct WitnessEntry {
  std::size_t index = 0;
  BigNat pi;
  BigNat pi_prime;               // r1 steps of the outgoing segment
  std::optional<Term> term;      // absent above the size cap
  std::optional<bool> segment_verified;  // absent when not attempted
};

struct ChainWitness {
  RecurrentPair pair;
  Mode mode = Mode::Trs;
  std::size_t requested_segments = 0;
  std::vector<WitnessEntry> entries;  // indices 0..requested_segments-1
  bool guard_hit = false;
  std::size_t attempted = 0;
  std::size_t verified = 0;
  std::optional<std::size_t> last_verified;

  bool complete() const { return verified == requested_segments; }
  bool all_attempted_verified() const { return attempted == verified; }
};

struct VerifyOptions {
  std::size_t max_term_size = kDefaultMaxTermSize;
  std::uint64_t fresh_start = 0;  // partition point for LP name supplies
};

// Re-executes the constructed chain prefix: for each n < segments runs
// pi_prime_n steps of r1 and one step of r2 from witness n, comparing the
// outcome with witness n+1 by structural equality. Segments whose endpoints
// exceed the size cap are reported unattempted with exact counts.
ChainWitness verify_prefix(const RecurrentPair& pair, std::size_t segments, Mode mode,
                           const VerifyOptions& options = {});

// Independent certificates verified in parallel; name supplies are
// partitioned per certificate. Same output as verify_batch_serial.
std::vector<ChainWitness> verify_batch(std::span<const RecurrentPair> pairs,
                                       std::size_t segments, Mode mode,
                                       const VerifyOptions& options = {});

std::vector<ChainWitness> verify_batch_serial(std::span<const RecurrentPair> pairs,
                                              std::size_t segments, Mode mode,
                                              const VerifyOptions& options = {});

}  // namespace recpair
