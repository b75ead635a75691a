#include "recpair/report.hpp"

#include <chrono>
#include <sstream>

namespace recpair {

namespace {

bool witness_accepted(const ChainWitness& w) { return w.all_attempted_verified(); }

std::vector<std::string> certificate_notes(const CertificateResult& result) {
  std::vector<std::string> notes;
  if (result.pair.n1 == 0) notes.push_back("degenerate template: n1 = 0");
  for (const auto* w : {&result.trs, &result.lp}) {
    if (!w->has_value()) continue;
    const ChainWitness& witness = **w;
    if (witness.guard_hit) {
      std::string note = "size guard reached in ";
      note += to_string(witness.mode);
      note += " mode: verified ";
      note += std::to_string(witness.verified);
      note += "/";
      note += std::to_string(witness.requested_segments);
      note += " segments (tower counts stay exact)";
      notes.push_back(std::move(note));
    }
  }
  return notes;
}

Report analyze_certificates(const Program& program, std::vector<RecurrentPair> pairs,
                            const ReportOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.rule_count = program.size();

  const bool want_trs = options.mode != ModeChoice::Lp;
  const bool want_lp = options.mode != ModeChoice::Trs;
  VerifyOptions verify_options;
  verify_options.max_term_size = options.max_term_size;

  std::vector<ChainWitness> trs_witnesses;
  std::vector<ChainWitness> lp_witnesses;
  if (want_trs) trs_witnesses = verify_batch(pairs, options.steps, Mode::Trs, verify_options);
  if (want_lp) lp_witnesses = verify_batch(pairs, options.steps, Mode::Lp, verify_options);

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    CertificateResult result{.pair = std::move(pairs[k])};
    if (want_trs) result.trs = std::move(trs_witnesses[k]);
    if (want_lp) result.lp = std::move(lp_witnesses[k]);
    result.verified = (!result.trs || witness_accepted(*result.trs)) &&
                      (!result.lp || witness_accepted(*result.lp));
    result.notes = certificate_notes(result);
    report.certificates.push_back(std::move(result));
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

}  // namespace

bool Report::any_verified() const {
  for (const CertificateResult& c : certificates)
    if (c.verified) return true;
  return false;
}

Report analyze(const Program& program, const ReportOptions& options) {
  return analyze_certificates(program, detect(program), options);
}

Report analyze_pair(const Program& program, std::size_t r1_index, std::size_t r2_index,
                    const ReportOptions& options) {
  std::vector<RecurrentPair> selected;
  for (RecurrentPair& pair : detect(program)) {
    if (pair.r1_index == r1_index && pair.r2_index == r2_index)
      selected.push_back(std::move(pair));
  }
  return analyze_certificates(program, std::move(selected), options);
}

namespace {

nlohmann::ordered_json witness_json(const CertificateResult& result) {
  // Witness terms and counts are construction-side values, identical across
  // modes; take them from whichever mode ran.
  const ChainWitness* w = result.trs ? &*result.trs : (result.lp ? &*result.lp : nullptr);
  auto arr = nlohmann::ordered_json::array();
  if (!w) return arr;
  for (const WitnessEntry& entry : w->entries) {
    nlohmann::ordered_json item;
    item["n"] = entry.index;
    item["pi"] = entry.pi.to_decimal();
    item["pi_prime"] = entry.pi_prime.to_decimal();
    if (entry.term) item["term"] = to_string(*entry.term);
    arr.push_back(std::move(item));
  }
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json out;
  out["rule_count"] = report.rule_count;
  auto certs = nlohmann::ordered_json::array();
  for (const CertificateResult& result : report.certificates) {
    nlohmann::ordered_json c;
    c["r1_index"] = result.pair.r1_index;
    c["r2_index"] = result.pair.r2_index;
    c["f"] = result.pair.root_symbol;
    c["c"] = to_string(result.pair.context);
    c["s"] = to_string(result.pair.base);
    c["t"] = std::string(to_string(result.pair.t_kind));
    c["n1"] = result.pair.n1;
    c["n2"] = result.pair.n2;
    c["n3"] = result.pair.n3;
    c["verified_trs"] =
        result.trs ? nlohmann::ordered_json(witness_accepted(*result.trs))
                   : nlohmann::ordered_json(nullptr);
    c["verified_lp"] = result.lp ? nlohmann::ordered_json(witness_accepted(*result.lp))
                                 : nlohmann::ordered_json(nullptr);
    c["witness"] = witness_json(result);
    c["notes"] = result.notes;
    certs.push_back(std::move(c));
  }
  out["certificates"] = std::move(certs);
  out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out << "rules: " << report.rule_count << "\n";
  if (report.certificates.empty()) {
    out << "no recurrent pair found\n";
    return out.str();
  }
  for (std::size_t k = 0; k < report.certificates.size(); ++k) {
    const CertificateResult& result = report.certificates[k];
    const RecurrentPair& pair = result.pair;
    out << "certificate " << k << ": rules (" << pair.r1_index << "," << pair.r2_index
        << ")  f=" << pair.root_symbol << "  c=" << to_string(pair.context)
        << "  s=" << to_string(pair.base) << "  t=" << to_string(pair.t_kind)
        << "  n1=" << pair.n1 << " n2=" << pair.n2 << " n3=" << pair.n3 << "\n";
    out << "  r1: " << to_string(pair.r1) << "\n";
    out << "  r2: " << to_string(pair.r2) << "\n";
    for (const auto* w : {&result.trs, &result.lp}) {
      if (!w->has_value()) continue;
      const ChainWitness& witness = **w;
      out << "  " << to_string(witness.mode) << ": " << witness.verified << "/"
          << witness.requested_segments << " segments verified"
          << (witness_accepted(witness) ? "" : " (FAILED)") << "\n";
    }
    const ChainWitness* w = result.trs ? &*result.trs : (result.lp ? &*result.lp : nullptr);
    if (w) {
      for (const WitnessEntry& entry : w->entries) {
        out << "  a" << entry.index << " = ";
        if (!entry.term) {
          out << "(beyond size limit)";
        } else if (std::string text = to_string(*entry.term); text.size() <= 120) {
          out << text;
        } else {
          out << "(" << (*entry.term).tree_size() << " nodes, elided)";
        }
        out << "   towers (" << entry.pi.to_decimal() << ", " << entry.pi_prime.to_decimal()
            << ")\n";
      }
    }
    for (const std::string& note : result.notes) out << "  note: " << note << "\n";
  }
  out << "elapsed: " << report.elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace recpair
