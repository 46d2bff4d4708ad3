// Brute-force reference implementations. Slow and obvious on purpose; they
// share no code with the library beyond the Text container.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gcl/text.hpp"

namespace oracle {

using Word = std::vector<std::uint32_t>;

inline Word word(const gcl::Text& t) { return t.to_vector(); }

inline std::uint64_t count(const Word& s, const Word& w, bool cyclic) {
  const std::size_t n = s.size(), m = w.size();
  if (m == 0) return n;
  if (m > n) return 0;
  std::uint64_t c = 0;
  const std::size_t starts = cyclic ? n : n - m + 1;
  for (std::size_t p = 0; p < starts; ++p) {
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) ok = s[(p + j) % n] == w[j];
    c += ok;
  }
  return c;
}

// |S| H_k(S) straight from the definition: for every context v of length k,
// sum over letters a of |S|_{va} log(|S|_v / |S|_{va}).
inline double entropy_bits(const Word& s, int k, bool cyclic) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::map<Word, std::map<std::uint32_t, std::uint64_t>> ext;
  std::map<Word, std::uint64_t> ctx;
  const std::size_t starts = cyclic ? n : (n >= static_cast<std::size_t>(k) ? n - k + 1 : 0);
  for (std::size_t p = 0; p < starts; ++p) {
    Word v;
    for (int j = 0; j < k; ++j) v.push_back(s[(p + j) % n]);
    ++ctx[v];
    if (cyclic || p + k < n) ++ext[v][s[(p + k) % n]];
  }
  if (k == 0) ctx[{}] = n;
  double bits = 0;
  for (const auto& [v, nexts] : ext) {
    for (const auto& [a, c] : nexts) bits += c * std::log2(double(ctx[v]) / double(c));
  }
  return bits;
}

inline double h0_bits(const std::vector<std::uint64_t>& ids) {
  std::map<std::uint64_t, std::uint64_t> f;
  for (auto x : ids) ++f[x];
  double b = 0;
  for (auto [x, c] : f) b += c * std::log2(double(ids.size()) / double(c));
  return b;
}

// P(y) as the product of conditional frequencies, or P_k(y) per letter.
inline double probability(const Word& s, const Word& y, std::uint64_t sigma, int k = -1) {
  double p = 1;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (k >= 0 && j < static_cast<std::size_t>(k)) {
      p /= double(sigma);
      continue;
    }
    const std::size_t from = k >= 0 ? j - k : 0;
    Word num(y.begin() + from, y.begin() + j + 1);
    Word den(y.begin() + from, y.begin() + j);
    const double d = double(count(s, den, false));
    if (d == 0) return 0;
    p *= double(count(s, num, false)) / d;
  }
  return p;
}

// Greedy left-to-right maximal non-overlapping occurrence positions.
inline std::vector<std::size_t> nonoverlapping(const Word& s, const Word& w) {
  std::vector<std::size_t> out;
  if (w.empty() || w.size() > s.size()) return out;
  for (std::size_t p = 0; p + w.size() <= s.size();) {
    if (std::equal(w.begin(), w.end(), s.begin() + p)) {
      out.push_back(p);
      p += w.size();
    } else {
      ++p;
    }
  }
  return out;
}

inline Word replace_all(const Word& s, const Word& w, std::uint32_t x) {
  Word out;
  for (std::size_t p = 0; p < s.size();) {
    if (p + w.size() <= s.size() && std::equal(w.begin(), w.end(), s.begin() + p)) {
      out.push_back(x);
      p += w.size();
    } else {
      out.push_back(s[p++]);
    }
  }
  return out;
}

struct Grammar {
  Word start;
  std::vector<Word> rules;
};

// Re-Pair, one full recount per round: the pair with the most
// non-overlapping occurrences, ties to the leftmost first occurrence.
inline Grammar repair(const Word& text, std::uint64_t sigma) {
  Grammar g{text, {}};
  while (true) {
    std::size_t best_f = 1, best_pos = 0;
    Word best;
    for (std::size_t i = 0; i + 1 < g.start.size(); ++i) {
      Word pr{g.start[i], g.start[i + 1]};
      bool seen = false;
      for (std::size_t j = 0; j < i && !seen; ++j) seen = g.start[j] == pr[0] && g.start[j + 1] == pr[1];
      if (seen) continue;
      const std::size_t f = nonoverlapping(g.start, pr).size();
      if (f > best_f) best_f = f, best = pr, best_pos = i;
    }
    (void)best_pos;
    if (best.empty()) return g;
    const auto x = static_cast<std::uint32_t>(sigma + g.rules.size());
    g.start = replace_all(g.start, best, x);
    g.rules.push_back(best);
  }
}

// Greedy: over all substrings (length >= 2) of S' and the rule bodies, take
// the one of largest gain (f-1)(|w|-1)-1, then longest, then first
// occurrence earliest in S', rule 1, rule 2, ... order.
inline Grammar greedy(const Word& text, std::uint64_t sigma, std::int64_t min_gain) {
  Grammar g{text, {}};
  while (true) {
    std::vector<Word*> strs{&g.start};
    for (auto& r : g.rules) strs.push_back(&r);
    bool found = false;
    std::int64_t best_gain = 0;
    Word best;
    for (Word* s : strs) {
      for (std::size_t i = 0; i < s->size(); ++i) {
        for (std::size_t m = 2; i + m <= s->size(); ++m) {
          Word w(s->begin() + i, s->begin() + i + m);
          std::int64_t f = 0;
          for (Word* t : strs) f += static_cast<std::int64_t>(nonoverlapping(*t, w).size());
          if (f < 2) continue;
          const std::int64_t gain = (f - 1) * (static_cast<std::int64_t>(m) - 1) - 1;
          if (gain < min_gain) continue;
          // Strict improvements only, so the earliest occurrence wins ties.
          if (!found || gain > best_gain || (gain == best_gain && m > best.size())) {
            found = true;
            best_gain = gain;
            best = w;
          }
        }
      }
    }
    if (!found) return g;
    const auto x = static_cast<std::uint32_t>(sigma + g.rules.size());
    for (Word* s : strs) *s = replace_all(*s, best, x);
    g.rules.push_back(best);
  }
}

// Shortest total length of a prefix code for the given frequencies, by
// trying every length vector with lengths <= max_len and Kraft sum <= 1.
inline std::uint64_t optimal_prefix_cost(const std::vector<std::uint64_t>& freq) {
  if (freq.size() == 1) return freq[0];
  const int k = static_cast<int>(freq.size());
  const int max_len = k;
  std::vector<int> len(k, 1);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  while (true) {
    double kraft = 0;
    std::uint64_t cost = 0;
    for (int i = 0; i < k; ++i) {
      kraft += std::ldexp(1.0, -len[i]);
      cost += freq[i] * len[i];
    }
    if (kraft <= 1.0 + 1e-12) best = std::min(best, cost);
    int i = 0;
    while (i < k && len[i] == max_len) len[i++] = 1;
    if (i == k) return best;
    ++len[i];
  }
}

// Elias delta as a '0'/'1' string.
inline std::string elias_delta(std::uint64_t n) {
  std::string bin;
  for (std::uint64_t v = n; v; v >>= 1) bin.insert(bin.begin(), char('0' + (v & 1)));
  std::string lbin;
  for (std::uint64_t v = bin.size(); v; v >>= 1) lbin.insert(lbin.begin(), char('0' + (v & 1)));
  return std::string(lbin.size() - 1, '0') + lbin + bin.substr(1);
}

// LZ78 by dictionary of previous phrases.
inline std::vector<std::size_t> lz78_lengths(const Word& s) {
  std::vector<Word> dict;
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < s.size();) {
    std::size_t best = 0;
    for (const auto& d : dict) {
      if (d.size() > best && p + d.size() <= s.size() && std::equal(d.begin(), d.end(), s.begin() + p)) {
        best = d.size();
      }
    }
    const std::size_t len = std::min(best + 1, s.size() - p);
    dict.emplace_back(s.begin() + p, s.begin() + p + len);
    out.push_back(len);
    p += len;
  }
  return out;
}

// Longest w starting at p with an occurrence ending before p, plus one letter.
inline std::vector<std::size_t> lz77ns_lengths(const Word& s) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < s.size();) {
    std::size_t best = 0;
    for (std::size_t q = 0; q < p; ++q) {
      std::size_t m = 0;
      while (q + m < p && p + m < s.size() && s[q + m] == s[p + m]) ++m;
      best = std::max(best, m);
    }
    const std::size_t len = std::min(best + 1, s.size() - p);
    out.push_back(len);
    p += len;
  }
  return out;
}

}  // namespace oracle
