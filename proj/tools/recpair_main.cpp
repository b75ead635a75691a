#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "recpair/report.hpp"
#include "recpair/rewrite.hpp"

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitNothingFound = 1;
constexpr int kExitInputError = 2;

struct CommonArgs {
  std::string file;
  std::string mode = "both";
  std::size_t steps = 8;
  std::size_t max_term_size = recpair::kDefaultMaxTermSize;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("file", args.file, "program file")->required();
  cmd->add_option("--mode", args.mode, "semantics to verify: trs, lp or both")
      ->check(CLI::IsMember({"trs", "lp", "both"}));
  cmd->add_option("--steps", args.steps, "witness prefix length (default 8)");
  cmd->add_option("--max-term-size", args.max_term_size,
                  "node cap for materialized witness terms");
  cmd->add_flag("--json", args.json, "machine-readable output");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

recpair::ReportOptions report_options(const CommonArgs& args) {
  recpair::ReportOptions options;
  options.mode = *recpair::parse_mode_choice(args.mode);
  options.steps = args.steps;
  options.max_term_size = args.max_term_size;
  return options;
}

void print_report(const recpair::Report& report, bool json) {
  if (json) {
    std::cout << recpair::to_json(report).dump(2) << "\n";
  } else {
    std::cout << recpair::to_text(report);
  }
}

int finish(const recpair::Report& report, bool json) {
  print_report(report, json);
  return report.any_verified() ? kExitVerified : kExitNothingFound;
}

int run_detect(const CommonArgs& args) {
  recpair::ProgramFile file = recpair::parse_program(read_file(args.file));
  recpair::ReportOptions options = report_options(args);
  if (args.mode == "both" && file.mode_hint) options.mode = *file.mode_hint;
  return finish(recpair::analyze(file.program(), options), args.json);
}

int run_witness(const CommonArgs& args, const std::string& pair_text) {
  recpair::ProgramFile file = recpair::parse_program(read_file(args.file));
  auto comma = pair_text.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error("--pair expects two comma-separated rule indices, e.g. 0,1");
  std::size_t r1_index = std::stoul(pair_text.substr(0, comma));
  std::size_t r2_index = std::stoul(pair_text.substr(comma + 1));
  if (r1_index >= file.rules.size() || r2_index >= file.rules.size())
    throw std::runtime_error("--pair index out of range; the program has " +
                             std::to_string(file.rules.size()) + " rules");
  recpair::ReportOptions options = report_options(args);
  if (args.mode == "both" && file.mode_hint) options.mode = *file.mode_hint;
  return finish(recpair::analyze_pair(file.program(), r1_index, r2_index, options),
                args.json);
}

int run_rewrite(const std::string& path, const std::string& term_text,
                const std::string& mode_text, std::optional<std::size_t> rule_index,
                std::size_t steps) {
  recpair::ProgramFile file = recpair::parse_program(read_file(path));
  recpair::Term current = recpair::parse_term(term_text, file.variables, file.arities);
  recpair::Program program = file.program();
  if (rule_index && *rule_index >= program.size())
    throw std::runtime_error("--rule index out of range; the program has " +
                             std::to_string(program.size()) + " rules");
  const recpair::Mode mode =
      mode_text == "trs" ? recpair::Mode::Trs : recpair::Mode::Lp;
  const char* arrow = mode == recpair::Mode::Trs ? "->" : "~>";

  recpair::FreshNameSupply supply;
  std::cout << recpair::to_string(current) << "\n";
  std::size_t applied = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    std::optional<std::pair<std::size_t, recpair::Term>> next;
    if (rule_index) {
      if (auto t = recpair::step(mode, program[*rule_index], current, supply))
        next = {*rule_index, std::move(*t)};
    } else {
      for (std::size_t k = 0; k < program.size(); ++k) {
        if (auto t = recpair::step(mode, program[k], current, supply)) {
          next = {k, std::move(*t)};
          break;
        }
      }
    }
    if (!next) break;
    std::cout << "  " << arrow << "[" << next->first << "] "
              << recpair::to_string(next->second) << "\n";
    current = std::move(next->second);
    ++applied;
  }
  std::cout << applied << " step(s) applied\n";
  return applied > 0 ? kExitVerified : kExitNothingFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recpair: finds recurrent rule pairs in root-rewriting programs and"
               " verifies the infinite binary chains they induce"};
  app.require_subcommand(1);

  CommonArgs detect_args;
  CLI::App* detect = app.add_subcommand(
      "detect", "detect recurrent pairs and verify a witness chain prefix");
  add_common(detect, detect_args);

  CommonArgs witness_args;
  std::string pair_text;
  CLI::App* witness = app.add_subcommand(
      "witness", "verify the witness chain for one rule pair");
  add_common(witness, witness_args);
  witness->add_option("--pair", pair_text, "rule indices I,J (0-based)")->required();

  std::string rw_file;
  std::string rw_term;
  std::string rw_mode;
  std::size_t rw_steps = 1;
  std::optional<std::size_t> rw_rule;
  std::size_t rw_rule_value = 0;
  CLI::App* rewrite = app.add_subcommand("rewrite", "apply root rewrite steps to a term");
  rewrite->add_option("file", rw_file, "program file")->required();
  rewrite->add_option("--term", rw_term, "start term")->required();
  CLI::Option* rule_opt = rewrite->add_option("--rule", rw_rule_value, "use only this rule (0-based)");
  rewrite->add_option("--steps", rw_steps, "maximum number of steps (default 1)");
  rewrite->add_option("--mode", rw_mode, "semantics: trs or lp")
      ->required()
      ->check(CLI::IsMember({"trs", "lp"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*detect) return run_detect(detect_args);
    if (*witness) return run_witness(witness_args, pair_text);
    if (rule_opt->count() > 0) rw_rule = rw_rule_value;
    return run_rewrite(rw_file, rw_term, rw_mode, rw_rule, rw_steps);
  } catch (const recpair::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
