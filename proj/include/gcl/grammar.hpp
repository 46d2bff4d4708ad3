#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcl/parsing.hpp"
#include "gcl/text.hpp"

namespace gcl {

// Starting string S' plus rules; rule i defines nonterminal id sigma + i.
// Rules may reference nonterminals defined later, as long as the reference
// graph is acyclic.
class FullGrammar {
 public:
  FullGrammar() = default;
  FullGrammar(std::uint64_t sigma, std::vector<Symbol> start, std::vector<std::vector<Symbol>> rules);

  // Grammar with no rules whose starting string is the text.
  static FullGrammar trivial(const Text& text);

  std::uint64_t sigma() const { return sigma_; }
  const std::vector<Symbol>& start() const { return start_; }
  const std::vector<std::vector<Symbol>>& rules() const { return rules_; }
  std::size_t n_nonterminals() const { return rules_.size(); }
  std::uint64_t universe() const { return sigma_ + rules_.size(); }

  bool is_terminal(Symbol id) const { return id < sigma_; }
  bool is_defined(Symbol id) const { return id < universe(); }
  const std::vector<Symbol>& rhs(Symbol nonterminal) const;

  // |exp(id)|, memoized at construction.
  std::uint64_t expansion_length(Symbol id) const;
  // |exp(S')|
  std::uint64_t text_length() const { return text_length_; }

  // Nonterminal ids ordered so that every nonterminal precedes all
  // nonterminals in its right-hand side.
  const std::vector<Symbol>& top_down_order() const { return top_down_; }

  friend bool operator==(const FullGrammar& a, const FullGrammar& b) {
    return a.sigma_ == b.sigma_ && a.start_ == b.start_ && a.rules_ == b.rules_;
  }

 private:
  std::uint64_t sigma_ = 1;
  std::vector<Symbol> start_;
  std::vector<std::vector<Symbol>> rules_;
  std::vector<std::uint64_t> exp_len_;  // per nonterminal
  std::vector<Symbol> top_down_;
  std::uint64_t text_length_ = 0;
};

struct GrammarMetrics {
  std::uint64_t n_nonterminals = 0;
  std::uint64_t rhs_size_grammar = 0;  // ||G||
  std::uint64_t rhs_size_full = 0;     // ||S', G||
  std::uint64_t expansion_sum = 0;     // sum over nonterminals of |exp(X)|
  bool is_cnf = true;
};
GrammarMetrics metrics(const FullGrammar& g);

std::vector<Symbol> expand(const FullGrammar& g, Symbol id);
std::vector<Symbol> expand_sequence(const FullGrammar& g, std::span<const Symbol> ids);
Text expand_start(const FullGrammar& g);

// S' followed by every rule's right-hand side, in rule order.
std::vector<Symbol> concatenated_rhs(const FullGrammar& g);

struct IrreducibleCheck {
  bool ig1 = true;  // no two nonterminals share an expansion
  bool ig2 = true;  // every nonterminal occurs at least twice in the rhs strings
  bool ig3 = true;  // no digram occurs twice without overlap
  std::vector<std::string> witnesses;
  bool all() const { return ig1 && ig2 && ig3; }
};
IrreducibleCheck check_irreducible(const FullGrammar& g);

// Non-overlapping digram counts, greedy left to right within each rhs string,
// summed over all strings. Returns the largest count and its pair.
struct DigramMax {
  std::uint64_t count = 0;
  Symbol first = 0;
  Symbol second = 0;
};
DigramMax max_digram(const FullGrammar& g);

struct NonRedundancyCheck {
  bool weakly_nonredundant = true;
  std::vector<std::string> witnesses;
  // Per nonterminal: occurrences in the derivation tree (saturating) and in
  // the rhs strings including S'.
  std::vector<std::uint64_t> tree_occurrences;
  std::vector<std::uint64_t> rhs_occurrences;
};
NonRedundancyCheck check_weakly_nonredundant(const FullGrammar& g);

struct ExpansionSumCheck {
  bool applicable = true;  // false when IG2 fails
  std::uint64_t sum = 0;
  std::uint64_t bound = 0;  // 2 |S|
  bool bound_holds = false;
};
ExpansionSumCheck expansion_sum_check(const FullGrammar& g);

// S'' replaces the first occurrence (in depth-first order) of every
// nonterminal by its right-hand side; the parsing has one phrase per symbol
// of S''.
struct InducedParsing {
  std::vector<Symbol> s2;
  Parsing parsing;
};
InducedParsing induced_parsing(const FullGrammar& g);

// One phrase per symbol of S'.
Parsing start_parsing(const FullGrammar& g);

// Binary-prefix-tree grammar over {0,1}: X_w for 2 <= |w| <= bits, and
// S' lists X_w twice for every word w of length `bits` in lexicographic order.
FullGrammar bad_grammar_fixture(int bits);

// "GCL1", varint sigma, varint rule count, each rule as varint length and ids,
// then varint |S'| and ids. Varints are unsigned LEB128.
std::string serialize_grammar(const FullGrammar& g);
FullGrammar deserialize_grammar(std::string_view bytes);

std::string dump_grammar(const FullGrammar& g);

}  // namespace gcl
