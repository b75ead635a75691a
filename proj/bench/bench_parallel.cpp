// Times the parallel detection and batch-verification kernels against their
// serial reference implementations on synthetic programs, and checks that
// both sides produce identical output.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <vector>

#include "CLI11.hpp"

#include "recpair/chain.hpp"
#include "recpair/recurrence.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace recpair;

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

Term random_ground(std::mt19937_64& rng, std::size_t depth) {
  static const std::vector<std::string> unary = {"s", "p"};
  static const std::vector<std::string> constants = {"0", "a"};
  if (depth == 0 || pick(rng, 3) == 0) return Term::app(constants[pick(rng, constants.size())]);
  if (pick(rng, 4) == 0)
    return Term::app("g", {random_ground(rng, depth - 1), random_ground(rng, depth - 1)});
  return Term::app(unary[pick(rng, unary.size())], {random_ground(rng, depth - 1)});
}

std::string unary_symbol(std::mt19937_64& rng) {
  static const std::vector<std::string> unary = {"s", "p", "q"};
  return unary[pick(rng, unary.size())];
}

// Ground context other than the bare hole: a unary spine ending in the hole,
// occasionally widened with a ground sibling.
Term random_context(std::mt19937_64& rng, std::size_t depth) {
  Term inner = depth > 1 ? random_context(rng, depth - 1) : Term::hole();
  if (pick(rng, 4) == 0) return Term::app("g", {std::move(inner), random_ground(rng, 1)});
  return Term::app(unary_symbol(rng), {std::move(inner)});
}

// A program of `pairs` template instances (distinct root symbols) plus
// `noise` unrelated rules, shuffled deterministically.
Program synthetic_program(std::mt19937_64& rng, std::size_t pairs, std::size_t noise) {
  Program out;
  for (std::size_t k = 0; k < pairs; ++k) {
    RecurrentPair params{
        Rule{Term::app("0"), Term::app("0")},  // placeholders, rebuilt below
        Rule{Term::app("0"), Term::app("0")},
        0,
        0,
        "f" + std::to_string(k),
        random_context(rng, 1 + pick(rng, 2)),
        random_ground(rng, 2),
        pick(rng, 2) == 0 ? TKind::IsX : TKind::IsS,
        pick(rng, 3),
        pick(rng, 3),
        pick(rng, 3)};
    out.push_back(rebuild_r1(params));
    out.push_back(rebuild_r2(params));
  }
  for (std::size_t k = 0; k < noise; ++k) {
    Term x = Term::var("x");
    Term lhs = Term::app("h" + std::to_string(k), {x, random_ground(rng, 2)});
    Term rhs = Term::app("h" + std::to_string(k), {random_ground(rng, 2), x});
    out.push_back(Rule{std::move(lhs), std::move(rhs)});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

bool same_certificates(const std::vector<RecurrentPair>& a,
                       const std::vector<RecurrentPair>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].r1_index != b[k].r1_index || a[k].r2_index != b[k].r2_index ||
        a[k].n1 != b[k].n1 || a[k].n2 != b[k].n2 || a[k].n3 != b[k].n3 ||
        a[k].t_kind != b[k].t_kind || a[k].context != b[k].context ||
        a[k].base != b[k].base)
      return false;
  }
  return true;
}

bool same_witnesses(const std::vector<ChainWitness>& a, const std::vector<ChainWitness>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].verified != b[k].verified || a[k].attempted != b[k].attempted ||
        a[k].guard_hit != b[k].guard_hit)
      return false;
  }
  return true;
}

template <typename F>
double time_ms(F&& body, std::size_t repeat) {
  auto start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < repeat; ++r) body();
  auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count() / repeat;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t template_pairs = 48;
  std::size_t noise = 160;
  std::size_t repeat = 3;
  std::size_t segments = 6;
  std::uint64_t seed = 20240814;

  CLI::App app{"serial vs parallel benchmark for detection and chain verification"};
  app.add_option("--pairs", template_pairs, "number of planted template pairs");
  app.add_option("--noise", noise, "number of unrelated rules");
  app.add_option("--repeat", repeat, "timing repetitions");
  app.add_option("--segments", segments, "witness segments per certificate");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: not enabled (parallel kernels run serially)\n";
#endif

  std::mt19937_64 rng(seed);
  Program program = synthetic_program(rng, template_pairs, noise);
  std::cout << "program: " << program.size() << " rules ("
            << template_pairs << " planted pairs, " << noise << " noise rules)\n";

  (void)detect(program);  // warm up the thread pool before timing

  std::vector<RecurrentPair> serial_certs;
  std::vector<RecurrentPair> parallel_certs;
  double detect_serial_ms = time_ms([&] { serial_certs = detect_serial(program); }, repeat);
  double detect_parallel_ms = time_ms([&] { parallel_certs = detect(program); }, repeat);
  if (!same_certificates(serial_certs, parallel_certs)) {
    std::cerr << "MISMATCH: parallel detection differs from the serial reference\n";
    return 1;
  }
  std::cout << "detect: " << serial_certs.size() << " certificates\n";
  std::cout << "  serial:   " << detect_serial_ms << " ms\n";
  std::cout << "  parallel: " << detect_parallel_ms << " ms  (speedup "
            << detect_serial_ms / detect_parallel_ms << "x)\n";

  VerifyOptions options;
  std::vector<ChainWitness> serial_wit;
  std::vector<ChainWitness> parallel_wit;
  double verify_serial_ms = time_ms(
      [&] { serial_wit = verify_batch_serial(serial_certs, segments, Mode::Lp, options); },
      repeat);
  double verify_parallel_ms = time_ms(
      [&] { parallel_wit = verify_batch(serial_certs, segments, Mode::Lp, options); },
      repeat);
  if (!same_witnesses(serial_wit, parallel_wit)) {
    std::cerr << "MISMATCH: parallel verification differs from the serial reference\n";
    return 1;
  }
  std::size_t verified = 0;
  for (const ChainWitness& w : serial_wit) verified += w.all_attempted_verified() ? 1 : 0;
  std::cout << "verify (lp, " << segments << " segments): " << verified << "/"
            << serial_wit.size() << " certificates accepted\n";
  std::cout << "  serial:   " << verify_serial_ms << " ms\n";
  std::cout << "  parallel: " << verify_parallel_ms << " ms  (speedup "
            << verify_serial_ms / verify_parallel_ms << "x)\n";
  return 0;
}
