#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcl/bounds.hpp"
#include "gcl/parsing.hpp"
#include "gcl/text.hpp"

namespace gcl {

// Word over sigma = 4^p letters of length sigma^(k + (l+1)/2) = 2^(p(2k+l+1)).
struct GdBParams {
  int k = 1;
  int l = 0;
  int p = 1;

  std::uint64_t sigma() const { return 1ULL << (2 * p); }
  std::uint64_t root() const { return 1ULL << p; }
  int z() const { return k + l + 1; }
  int length_exponent() const { return p * (2 * k + l + 1); }  // log2 |S|
  std::uint64_t length() const { return 1ULL << length_exponent(); }
  // Rejects k < 1, l < 0, p < 1 and words longer than 2^30.
  void validate() const;
  std::string describe() const;
};

// Lexicographically least de Bruijn sequence (concatenated Lyndon words);
// it starts with the letter 0 repeated m times.
Text base_debruijn(std::uint64_t q, std::uint64_t m);

// Pairs letters of the order-(2k+1) base sequence over 2^p letters at even
// and at odd phases and concatenates the two results.
Text build_s0(int k, int p);

// l line-graph steps on top of build_s0: each step walks an Eulerian cycle
// (smallest last letter first, starting at position 0) of the graph whose
// nodes are the cyclic (k+i)-windows of the previous word.
Text generalized_word(const GdBParams& params);

struct GdBLevel {
  int length = 0;
  std::uint64_t expected = 0;      // cyclic count every present word must have
  std::uint64_t words_present = 0;
  std::map<std::uint64_t, std::uint64_t> count_histogram;  // count -> number of words
  bool pass = false;
};

struct GdBEntropyRow {
  int order = 0;
  double target = 0;  // log sigma below k, log sigma / 2 from k to k+l
  double cyclic = 0;  // bits per symbol
  double linear = 0;
  // |target - linear| |S| / (i log |S|). The linear value may sit slightly
  // above target because the context counts include the final occurrence.
  double slack_constant = 0;
  bool upper_ok = false;  // cyclic <= target + 1e-9 (and H_0 exact)
};

struct GdBCertificate {
  GdBParams params;
  std::uint64_t length = 0;
  bool db1 = false;  // i < k: every word has count sigma^(k-i+(l+1)/2)
  bool db2 = false;  // k <= i <= k+l+1: count is sigma^((k+l+1-i)/2) or 0
  bool db3 = false;  // no (k+l+1)-word occurs twice
  std::vector<GdBLevel> levels;
  std::vector<GdBEntropyRow> entropy;
  double max_slack_constant = 0;
  bool entropy_upper_ok = false;

  bool counts_ok() const { return db1 && db2 && db3; }
  bool passes(double max_slack_constant_allowed) const {
    return counts_ok() && entropy_upper_ok && max_slack_constant <= max_slack_constant_allowed;
  }
};

// Counts are cyclic throughout. Throws if |text| differs from params.length().
GdBCertificate verify_gdb(const Text& text, const GdBParams& params);

std::string certificate_json(const GdBCertificate& cert);

// Rows: debruijn_phrase_length, debruijn_lower_bound, debruijn_natural_parsing,
// debruijn_ratio, debruijn_lambda.
BoundReport lower_bound_check(const Text& text, const Parsing& parsing, const GdBParams& params);

}  // namespace gcl
