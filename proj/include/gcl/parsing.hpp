#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcl/bounds.hpp"
#include "gcl/substring_index.hpp"
#include "gcl/text.hpp"

namespace gcl {

// A partition of a text into nonempty phrases, stored as cut positions
// 0 = b_0 < b_1 < ... < b_c = |S|.
class Parsing {
 public:
  Parsing() = default;
  Parsing(Text source, std::vector<std::uint64_t> boundaries);
  static Parsing from_lengths(Text source, std::span<const std::uint64_t> lengths);
  static Parsing single_letters(Text source);

  const Text& source() const { return source_; }
  std::size_t size() const { return boundaries_.empty() ? 0 : boundaries_.size() - 1; }
  const std::vector<std::uint64_t>& boundaries() const { return boundaries_; }

  std::span<const Symbol> phrase(std::size_t i) const;
  std::uint64_t phrase_length(std::size_t i) const { return boundaries_[i + 1] - boundaries_[i]; }
  std::uint64_t max_phrase_length() const;

  // |y_1|, |y_2|, ... viewed as a word over {1..|S|}.
  std::vector<std::uint64_t> lengths() const;

 private:
  Text source_;
  std::vector<std::uint64_t> boundaries_{0};
};

// Dense ids such that equal phrases get equal ids (first-appearance order).
std::vector<std::uint64_t> phrase_ids(const Parsing& parsing);

// |Y| H_0(Y): entropy of the phrase sequence over the phrase alphabet.
double parsing_entropy_bits(const Parsing& parsing);
// |L| H_0(L).
double lengths_entropy_bits(const Parsing& parsing);

class ZeroProbabilityError : public std::runtime_error {
 public:
  ZeroProbabilityError(std::size_t phrase_index, std::optional<int> k);
  std::size_t phrase_index() const { return index_; }

 private:
  std::size_t index_;
};

struct CostReport {
  double parsing_entropy_bits = 0;  // |Y| H_0(Y)
  double cost_bits = 0;             // C(Y)
  std::optional<int> k;
  double k_cost_bits = 0;           // C_k(Y), meaningful when k is set
  double lengths_entropy_bits = 0;  // |L| H_0(L)
};

// Phrase probabilities and costs against one text. Builds the substring
// index once; reuse it for many parsings of the same text.
class PhraseCostModel {
 public:
  explicit PhraseCostModel(Text text);

  const Text& text() const { return index_.text(); }
  const SubstringIndex& index() const { return index_; }

  double probability(std::span<const Symbol> phrase, std::optional<int> k = std::nullopt) const;
  // -log P(y) / -log P_k(y); +infinity for zero probability.
  double cost(std::span<const Symbol> phrase) const;
  double k_cost(std::span<const Symbol> phrase, int k) const;

  // Throws ZeroProbabilityError if some phrase has probability 0.
  CostReport parsing_cost(const Parsing& parsing, std::optional<int> k = std::nullopt) const;

 private:
  SubstringIndex index_;
};

double phrase_probability(const Text& text, std::span<const Symbol> phrase,
                          std::optional<int> k = std::nullopt);
CostReport parsing_cost(const Parsing& parsing, std::optional<int> k = std::nullopt);

// First phrase of length `offset` (dropped when 0), then phrases of length
// l, last phrase possibly shorter.
Parsing offset_parsing(const Text& text, std::uint64_t l, std::uint64_t offset);
// The offset parsing of minimal C(Y); ties go to the smallest offset.
Parsing best_offset_parsing(const Text& text, std::uint64_t l);
Parsing best_offset_parsing(const PhraseCostModel& model, std::uint64_t l);

Parsing lz78_parse(const Text& text);
// Greedy longest match whose earlier occurrence ends before the phrase starts,
// followed by one fresh letter when the text has one left.
Parsing lz77_parse_nonself(const Text& text);

struct NaturalCheck {
  bool natural = true;
  std::vector<std::size_t> violations;
};
NaturalCheck is_natural_parsing(const Parsing& parsing);
NaturalCheck is_natural_parsing(const Parsing& parsing, const SubstringIndex& index);

// Rows: parsing_entropy_vs_cost, parsing_entropy_vs_kcost,
// kcost_vs_text_entropy, lengths_entropy_bound. Absolute slack 1e-6.
BoundReport verify_parsing_bounds(const Parsing& parsing, int k);
BoundReport verify_parsing_bounds(const PhraseCostModel& model, const Parsing& parsing, int k,
                                  double text_entropy_bits);

// Row mean_entropy_offset_cost: C(Y) <= |S| (1/l) sum_{i<l} H_i(S) + log |S|
// for the given parsing (meant for best_offset_parsing(l)). Slack 1e-6.
BoundReport verify_mean_entropy(const PhraseCostModel& model, const Parsing& parsing, std::uint64_t l);

// "n=<int>" header line, then one phrase length per line.
std::string format_parsing(const Parsing& parsing);
Parsing parse_parsing(const Text& source, std::string_view content);

}  // namespace gcl
