#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcl/bounds.hpp"
#include "gcl/grammar.hpp"
#include "gcl/text.hpp"

namespace gcl {

struct StopPolicy {
  enum class Kind { RunToEnd, WorkingStringThreshold, MaxNonterminals, CustomThreshold };
  Kind kind = Kind::RunToEnd;
  std::uint64_t value = 0;  // m for MaxNonterminals, t for CustomThreshold

  static StopPolicy run_to_end() { return {}; }
  static StopPolicy working_string_threshold() { return {Kind::WorkingStringThreshold, 0}; }
  static StopPolicy max_nonterminals(std::uint64_t m) { return {Kind::MaxNonterminals, m}; }
  static StopPolicy custom_threshold(std::uint64_t t) { return {Kind::CustomThreshold, t}; }

  std::string describe() const;
};

// ceil(16 n / log_sigma n), computed as 16 n ln(sigma) / ln(n).
std::uint64_t repair_threshold(std::uint64_t n, std::uint64_t sigma);

struct RepairStep {
  std::uint64_t iteration = 0;  // 1-based
  Symbol left = 0;
  Symbol right = 0;
  Symbol nonterminal = 0;
  std::uint64_t frequency = 0;       // non-overlapping count when replaced
  std::uint64_t working_length = 0;  // after the replacement
  std::uint64_t nonterminals = 0;    // after the replacement
};

struct RepairTrace {
  StopPolicy policy;
  std::uint64_t initial_length = 0;
  std::uint64_t threshold = 0;  // 0 unless a threshold policy is active
  bool stopped_by_policy = false;
  std::vector<RepairStep> steps;
};

struct RepairResult {
  FullGrammar grammar;
  RepairTrace trace;
};

// Called after every replacement with the grammar at that point.
using RepairObserver = std::function<void(const RepairStep&, const FullGrammar&)>;

// Replaces a most frequent pair until every pair occurs at most once or the
// policy stops the run. Frequencies count non-overlapping occurrences (a run
// of r equal letters holds floor(r/2) copies of the doubled pair); ties go to
// the pair whose first counted occurrence is leftmost.
RepairResult repair_run(const Text& text, const StopPolicy& policy = StopPolicy::run_to_end(),
                        const RepairObserver& observer = {});

// Rows: repair_frequency_monotone, repair_most_frequent_pair (|G| < n/z while
// the best pair occurs z times). Any policy.
BoundReport repair_trace_rows(const RepairTrace& trace, const Text& text);

// Rows: repair_stop_point, repair_nonterminal_bound plus the trace rows.
// Evaluated at the first point of the trace where the working string is
// below repair_threshold; works for run-to-end and threshold traces.
BoundReport stop_point_report(const RepairTrace& trace, const Text& text);

// a_1 # a_2 # ... a_n # a_n # ... a_1 #, with a_i = i-1 and # = n.
Text worst_case_family(std::uint64_t n);

std::string repair_trace_json_lines(const RepairTrace& trace);

}  // namespace gcl
