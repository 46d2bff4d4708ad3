#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcl/bounds.hpp"
#include "gcl/coders.hpp"
#include "gcl/debruijn.hpp"
#include "gcl/greedy.hpp"
#include "gcl/repair.hpp"
#include "gcl/text.hpp"

namespace gcl {

enum class Algorithm { Repair, Greedy, Lz78, Lz77ns, OffsetParse };
std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct Input {
  std::string name;
  Text text;
  std::optional<GdBParams> gdb;  // set for generated de Bruijn words
};

// Synthetic texts. Deterministic for a given seed on every platform.
Text random_uniform(std::uint64_t n, std::uint64_t sigma, std::uint64_t seed);
// Order-1 source: after symbol c the next symbol is c + j mod sigma with
// P(j) proportional to 2^-j, so the text is far from uniform.
Text random_markov(std::uint64_t n, std::uint64_t sigma, std::uint64_t seed);

// Selectors:
//   fixture:worst:<n>            worst_case_family(n)
//   fixture:gdb:<k>,<l>,<p>      generalized_word
//   fixture:bad:<bits>           expansion of bad_grammar_fixture
//   fixture:uniform:<n>,<sigma>,<seed>
//   fixture:markov:<n>,<sigma>,<seed>
//   <path>                       file (token or raw bytes); directories are walked recursively
// Throws on unknown fixtures or missing paths.
std::vector<Input> resolve_inputs(const std::vector<std::string>& selectors);

struct RunSpec {
  std::vector<Input> inputs;
  std::vector<Algorithm> algorithms{Algorithm::Repair};
  StopPolicy repair_policy = StopPolicy::run_to_end();
  GreedyPolicy greedy_policy = GreedyPolicy::run_to_end();
  std::vector<Encoding> encodings{std::begin(kAllEncodings), std::end(kAllEncodings)};
  std::vector<int> ks{0, 1, 2};
  std::uint64_t offset_l = 4;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct ConfigResult {
  std::string input;
  std::string algorithm;
  std::string policy;
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::map<int, double> entropy;  // k -> H_k bits per symbol
  bool has_grammar = false;
  std::uint64_t nonterminals = 0;
  std::uint64_t grammar_size = 0;  // ||S', G||
  std::uint64_t iterations = 0;
  std::uint64_t phrases = 0;
  std::vector<std::pair<Encoding, SizeBreakdown>> encodings;
  std::map<std::string, double> ratios;  // "<encoding>/k<k>" -> total_bits / (|S| H_k)
  BoundReport bounds;
  std::string error;  // non-empty if this input x config failed

  bool ok() const { return error.empty() && bounds.all_pass(); }
};

struct Report {
  static constexpr int kSchemaVersion = 1;
  std::string timestamp;
  std::vector<int> ks;
  std::vector<Encoding> encodings;
  std::vector<ConfigResult> results;  // sorted by input name, then algorithm order

  bool all_pass() const;
};

// Per-input failures are recorded in ConfigResult::error and do not stop the run.
Report run(const RunSpec& spec);

enum class ReportFormat { Json, Csv };
// Stable field order. The timestamp is only written when requested.
std::string emit(const Report& report, ReportFormat format, bool with_timestamp = true);

}  // namespace gcl
