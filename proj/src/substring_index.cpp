#include "gcl/substring_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcl {

SuffixAutomaton::SuffixAutomaton(std::span<const Symbol> s) : n_(s.size()) {
  nodes_.reserve(2 * s.size() + 1);
  nodes_.emplace_back();
  State last = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Symbol c = s[i];
    const State cur = static_cast<State>(nodes_.size());
    nodes_.emplace_back();
    nodes_[cur].len = nodes_[last].len + 1;
    nodes_[cur].occ = 1;
    nodes_[cur].first_end = i;
    State p = last;
    while (p != kNone && step(p, c) == kNone) {
      set_edge(p, c, cur);
      p = nodes_[p].link;
    }
    if (p == kNone) {
      nodes_[cur].link = 0;
    } else {
      const State q = step(p, c);
      if (nodes_[p].len + 1 == nodes_[q].len) {
        nodes_[cur].link = q;
      } else {
        const State clone = static_cast<State>(nodes_.size());
        Node copy = nodes_[q];
        copy.len = nodes_[p].len + 1;
        copy.occ = 0;
        nodes_.push_back(std::move(copy));
        while (p != kNone && step(p, c) == q) {
          set_edge(p, c, clone);
          p = nodes_[p].link;
        }
        nodes_[q].link = clone;
        nodes_[cur].link = clone;
      }
    }
    last = cur;
  }

  // Propagate end-position counts up the suffix-link tree (longest first).
  std::vector<State> order(nodes_.size());
  for (State v = 0; v < order.size(); ++v) order[v] = v;
  std::vector<std::uint32_t> bucket(n_ + 2, 0);
  for (const Node& nd : nodes_) ++bucket[nd.len];
  for (std::size_t l = 1; l < bucket.size(); ++l) bucket[l] += bucket[l - 1];
  for (State v = static_cast<State>(nodes_.size()); v-- > 0;) order[--bucket[nodes_[v].len]] = v;
  for (std::size_t idx = order.size(); idx-- > 1;) {
    const State v = order[idx];
    const State link = nodes_[v].link;
    if (link != kNone) nodes_[link].occ += nodes_[v].occ;
  }
  nodes_[0].occ = n_;
}

SuffixAutomaton::State SuffixAutomaton::step(State from, Symbol c) const {
  const auto& next = nodes_[from].next;
  auto it = std::lower_bound(next.begin(), next.end(), c,
                             [](const auto& e, Symbol x) { return e.first < x; });
  return it != next.end() && it->first == c ? it->second : kNone;
}

void SuffixAutomaton::set_edge(State from, Symbol c, State to) {
  auto& next = nodes_[from].next;
  auto it = std::lower_bound(next.begin(), next.end(), c,
                             [](const auto& e, Symbol x) { return e.first < x; });
  if (it != next.end() && it->first == c) {
    it->second = to;
  } else {
    next.insert(it, {c, to});
  }
}

std::uint64_t SuffixAutomaton::count(std::span<const Symbol> pattern) const {
  if (pattern.empty()) return n_;
  State v = root();
  for (Symbol c : pattern) {
    v = step(v, c);
    if (v == kNone) return 0;
  }
  return nodes_[v].occ;
}

namespace {

std::vector<Symbol> doubled_prefix(const Text& text) {
  std::vector<Symbol> d(text.symbols().begin(), text.symbols().end());
  if (!text.empty()) d.insert(d.end(), text.symbols().begin(), text.symbols().end() - 1);
  return d;
}

}  // namespace

SubstringIndex::SubstringIndex(Text text, bool with_cyclic)
    : text_(std::move(text)), linear_(text_.symbols()) {
  if (with_cyclic && !text_.empty()) {
    auto d = doubled_prefix(text_);
    doubled_.emplace(d);
    head_.emplace(text_.symbols().first(text_.size() - 1));
  }
}

std::uint64_t SubstringIndex::count(std::span<const Symbol> pattern) const {
  return linear_.count(pattern);
}

std::uint64_t SubstringIndex::count_cyclic(std::span<const Symbol> pattern) const {
  if (pattern.size() > text_.size()) {
    throw std::invalid_argument("count_cyclic: pattern longer than the text");
  }
  if (pattern.empty()) return text_.size();
  if (!doubled_) throw std::logic_error("SubstringIndex built without cyclic support");
  return doubled_->count(pattern) - head_->count(pattern);
}

std::uint64_t count_occurrences(const Text& text, std::span<const Symbol> pattern, bool cyclic) {
  if (!cyclic) {
    if (pattern.size() > text.size()) return 0;
    return SuffixAutomaton(text.symbols()).count(pattern);
  }
  return SubstringIndex(text, true).count_cyclic(pattern);
}

std::uint64_t count_occurrences_naive(const Text& text, std::span<const Symbol> pattern,
                                      bool cyclic) {
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m == 0) return n;
  if (cyclic && m > n) throw std::invalid_argument("count_occurrences_naive: pattern too long");
  if (!cyclic && m > n) return 0;
  std::uint64_t total = 0;
  const std::size_t starts = cyclic ? n : n - m + 1;
  for (std::size_t p = 0; p < starts; ++p) {
    bool match = true;
    for (std::size_t j = 0; j < m && match; ++j) match = text[(p + j) % n] == pattern[j];
    total += match;
  }
  return total;
}

}  // namespace gcl
