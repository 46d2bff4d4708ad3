#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcl/bounds.hpp"
#include "gcl/grammar.hpp"
#include "gcl/text.hpp"

namespace gcl {

struct GreedyPolicy {
  enum class Kind { RunToEnd, FullSizeThreshold, MaxIterations };
  Kind kind = Kind::RunToEnd;
  std::uint64_t value = 0;  // iteration cap for MaxIterations
  // After positive-gain candidates run out, keep replacing pairs that occur
  // twice (gain 0) so that no digram repeats in the output.
  bool finish_zero_gain = true;

  static GreedyPolicy run_to_end() { return {}; }
  static GreedyPolicy full_size_threshold() { return {Kind::FullSizeThreshold, 0, true}; }
  static GreedyPolicy max_iterations(std::uint64_t m) { return {Kind::MaxIterations, m, true}; }
  // ceil(n^c) iterations.
  static GreedyPolicy max_iterations_exponent(std::uint64_t n, double c = 0.5);

  std::string describe() const;
};

// ceil(64 n / log_sigma n), computed as 64 n ln(sigma) / ln(n).
std::uint64_t greedy_threshold(std::uint64_t n, std::uint64_t sigma);

struct GreedyStep {
  std::uint64_t iteration = 0;  // 1-based
  std::vector<Symbol> word;
  Symbol nonterminal = 0;
  std::uint64_t frequency = 0;  // non-overlapping occurrences replaced
  std::int64_t gain = 0;        // (f - 1)(|w| - 1) - 1
  std::uint64_t size_before = 0;
  std::uint64_t size_after = 0;  // ||S', G||
  std::uint64_t nonterminals = 0;  // after the replacement
  // Largest non-overlapping pair count over all rhs strings, before the round.
  std::uint64_t max_pair_frequency = 0;
};

struct GreedyTrace {
  GreedyPolicy policy;
  std::uint64_t initial_size = 0;
  std::uint64_t threshold = 0;
  bool stopped_by_policy = false;
  std::uint64_t final_max_pair_frequency = 0;
  std::vector<GreedyStep> steps;
};

struct GreedyResult {
  FullGrammar grammar;
  GreedyTrace trace;
};

using GreedyObserver = std::function<void(const GreedyStep&, const FullGrammar&)>;

GreedyResult greedy_run(const Text& text, const GreedyPolicy& policy = GreedyPolicy::run_to_end(),
                        const GreedyObserver& observer = {});

// Rows: greedy_frequency_monotone, greedy_pair_count_bound (|G| <= n/(z-2)
// for z >= 3), greedy_gain_accounting, greedy_positive_gain. Any policy.
BoundReport greedy_trace_rows(const GreedyTrace& trace, const Text& text);

// Rows: greedy_stop_point, greedy_nonterminal_bound,
// plus the trace rows above, evaluated at the first point of the trace with
// the size below greedy_threshold (run-to-end or threshold traces).
BoundReport greedy_stop_report(const GreedyTrace& trace, const Text& text);

std::string greedy_trace_json_lines(const GreedyTrace& trace);

}  // namespace gcl
