#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcl/text.hpp"

namespace gcl {

// Suffix automaton over a symbol sequence. Answers "how many (possibly
// overlapping) occurrences does w have" and "where does the leftmost
// occurrence of w end" in O(|w| log delta) per query, delta being the
// out-degree of the visited states.
class SuffixAutomaton {
 public:
  using State = std::uint32_t;
  static constexpr State kNone = 0xffffffffu;

  explicit SuffixAutomaton(std::span<const Symbol> s);

  State root() const { return 0; }
  State step(State from, Symbol c) const;

  // Number of end positions of the words recognised by `state`.
  std::uint64_t occurrences(State state) const { return nodes_[state].occ; }
  // Smallest end position (index of last symbol) of the words of `state`.
  std::uint64_t first_end(State state) const { return nodes_[state].first_end; }

  // Empty pattern yields the sequence length.
  std::uint64_t count(std::span<const Symbol> pattern) const;

  std::size_t source_size() const { return n_; }

 private:
  struct Node {
    std::uint32_t len = 0;
    State link = kNone;
    std::uint64_t occ = 0;
    std::uint64_t first_end = 0;
    std::vector<std::pair<Symbol, State>> next;  // sorted by symbol
  };
  void set_edge(State from, Symbol c, State to);

  std::vector<Node> nodes_;
  std::size_t n_ = 0;
};

// Substring counter over a Text, linear or cyclic. Cyclic occurrences start
// at positions 0..|S|-1 and wrap around; patterns must not exceed |S|.
class SubstringIndex {
 public:
  explicit SubstringIndex(Text text, bool with_cyclic = false);

  const Text& text() const { return text_; }
  const SuffixAutomaton& automaton() const { return linear_; }

  std::uint64_t count(std::span<const Symbol> pattern) const;
  std::uint64_t count_cyclic(std::span<const Symbol> pattern) const;

 private:
  Text text_;
  SuffixAutomaton linear_;
  // Cyclic counts: occurrences in S + S[0..n-2] minus those in S[0..n-2].
  std::optional<SuffixAutomaton> doubled_;
  std::optional<SuffixAutomaton> head_;
};

// Convenience wrapper building a throwaway index.
std::uint64_t count_occurrences(const Text& text, std::span<const Symbol> pattern, bool cyclic);

// Reference counter used by tests: enumerates every start position.
std::uint64_t count_occurrences_naive(const Text& text, std::span<const Symbol> pattern,
                                      bool cyclic);

}  // namespace gcl
