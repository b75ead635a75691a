#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recpair/chain.hpp"
#include "recpair/parser.hpp"

#include "json.hpp"

namespace recpair {

struct ReportOptions {
  ModeChoice mode = ModeChoice::Both;
  std::size_t steps = 8;  // witness prefix length
  std::size_t max_term_size = kDefaultMaxTermSize;
};

struct CertificateResult {
  RecurrentPair pair;
  std::optional<ChainWitness> trs;  // present iff the mode was requested
  std::optional<ChainWitness> lp;
  std::vector<std::string> notes;
  bool verified = false;  // every requested mode accepted all attempted segments
};

struct Report {
  std::size_t rule_count = 0;
  std::vector<CertificateResult> certificates;
  double elapsed_ms = 0.0;

  bool any_verified() const;
};

// Detection plus witness verification over the whole program.
Report analyze(const Program& program, const ReportOptions& options);

// Same, restricted to certificates for one ordered rule pair.
Report analyze_pair(const Program& program, std::size_t r1_index, std::size_t r2_index,
                    const ReportOptions& options);

// Stable machine-readable form; identical runs differ only in elapsed_ms.
nlohmann::ordered_json to_json(const Report& report);

std::string to_text(const Report& report);

}  // namespace recpair
