#include "gcl/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "gcl/suffix_array.hpp"

namespace gcl {

GreedyPolicy GreedyPolicy::max_iterations_exponent(std::uint64_t n, double c) {
  const auto m = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), c)));
  return max_iterations(std::max<std::uint64_t>(m, 1));
}

std::string GreedyPolicy::describe() const {
  std::string s;
  switch (kind) {
    case Kind::RunToEnd: s = "run-to-end"; break;
    case Kind::FullSizeThreshold: s = "full-size-threshold"; break;
    case Kind::MaxIterations: s = "max-iterations(" + std::to_string(value) + ")"; break;
  }
  return finish_zero_gain ? s : s + ",positive-gain-only";
}

std::uint64_t greedy_threshold(std::uint64_t n, std::uint64_t sigma) {
  if (sigma < 2 || n < 2) throw std::invalid_argument("greedy_threshold: need sigma >= 2 and n >= 2");
  const double t = 64.0 * static_cast<double>(n) * std::log(static_cast<double>(sigma)) /
                   std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(t));
}

namespace {

using Strings = std::vector<std::vector<Symbol>>;

std::uint64_t total_size(const Strings& str) {
  std::uint64_t s = 0;
  for (const auto& x : str) s += x.size();
  return s;
}

std::uint64_t max_pair_frequency(const Strings& str) {
  std::unordered_map<std::uint64_t, std::uint64_t> count;
  std::uint64_t best = 0;
  for (const auto& s : str) {
    std::unordered_map<std::uint64_t, std::size_t> last_end;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const std::uint64_t key = (static_cast<std::uint64_t>(s[i]) << 32) | s[i + 1];
      auto it = last_end.find(key);
      if (it != last_end.end() && it->second == i) continue;
      last_end[key] = i + 1;
      best = std::max(best, ++count[key]);
    }
  }
  return best;
}

// Greedy left-to-right non-overlapping selection over sorted positions.
std::uint64_t count_nonoverlapping(const std::vector<std::uint32_t>& pos, std::uint32_t m,
                                   std::vector<std::uint32_t>* chosen = nullptr) {
  if (pos.empty()) return 0;
  std::uint64_t f = 0;
  auto it = pos.begin();
  while (it != pos.end()) {
    ++f;
    if (chosen) chosen->push_back(*it);
    it = std::lower_bound(it, pos.end(), *it + m);
  }
  return f;
}

struct Candidate {
  bool found = false;
  std::int64_t gain = 0;
  std::uint32_t length = 0;
  std::uint32_t first = 0;
  std::uint64_t frequency = 0;
  std::vector<std::uint32_t> positions;  // all occurrences, sorted

  bool beats(std::int64_t g, std::uint32_t m, std::uint32_t p) const {
    if (!found) return true;
    if (g != gain) return g > gain;
    if (m != length) return m > length;
    return p < first;
  }
};

struct Interval {
  std::uint32_t depth;
  std::uint32_t parent_depth;
  std::uint32_t lb, rb;
  std::int64_t upper;  // (occ - 1)(depth - 1) - 1
};

// Best substring of the concatenation (strings joined by unique separators)
// by gain, then length, then leftmost first occurrence.
Candidate find_best(const std::vector<std::uint32_t>& t, std::uint32_t alphabet, std::int64_t min_gain) {
  const auto sa = suffix_array(t, alphabet);
  const auto lcp = lcp_array(t, sa);
  const std::size_t n = t.size();

  std::vector<Interval> intervals;
  struct Open {
    std::uint32_t depth, lb;
  };
  std::vector<Open> stack{{0, 0}};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint32_t cur = i < n ? lcp[i] : 0;
    std::uint32_t lb = static_cast<std::uint32_t>(i - 1);
    while (cur < stack.back().depth) {
      const Open top = stack.back();
      stack.pop_back();
      const std::uint32_t parent = std::max(cur, stack.back().depth);
      const std::uint32_t rb = static_cast<std::uint32_t>(i - 1);
      if (top.depth >= 2) {
        const std::int64_t occ = rb - top.lb + 1;
        const std::int64_t ub = (occ - 1) * (static_cast<std::int64_t>(top.depth) - 1) - 1;
        if (ub >= min_gain) intervals.push_back({top.depth, parent, top.lb, rb, ub});
      }
      lb = top.lb;
    }
    if (cur > stack.back().depth) stack.push_back({cur, lb});
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.upper > b.upper; });

  Candidate best;
  std::vector<std::uint32_t> pos;
  for (const auto& iv : intervals) {
    if (best.found && iv.upper < best.gain) break;
    pos.assign(sa.begin() + iv.lb, sa.begin() + iv.rb + 1);
    std::sort(pos.begin(), pos.end());
    const std::int64_t occ = static_cast<std::int64_t>(pos.size());
    const std::uint32_t low = std::max<std::uint32_t>(iv.parent_depth + 1, 2);
    for (std::uint32_t m = iv.depth; m >= low; --m) {
      const std::int64_t ub = (occ - 1) * (static_cast<std::int64_t>(m) - 1) - 1;
      if (ub < min_gain || (best.found && ub < best.gain)) break;
      const std::uint64_t f = count_nonoverlapping(pos, m);
      if (f < 2) continue;
      const std::int64_t g = (static_cast<std::int64_t>(f) - 1) * (static_cast<std::int64_t>(m) - 1) - 1;
      if (g >= min_gain && best.beats(g, m, pos.front())) {
        best.found = true;
        best.gain = g;
        best.length = m;
        best.first = pos.front();
        best.frequency = f;
        best.positions = pos;
      }
    }
  }
  return best;
}

}  // namespace

GreedyResult greedy_run(const Text& text, const GreedyPolicy& policy, const GreedyObserver& observer) {
  GreedyResult res;
  GreedyTrace& tr = res.trace;
  tr.policy = policy;
  const std::uint64_t sigma = text.sigma();
  if (text.size() >= (1ULL << 24)) {
    throw std::invalid_argument("greedy_run: texts longer than 2^24 symbols are not supported");
  }
  if (policy.kind == GreedyPolicy::Kind::FullSizeThreshold) {
    if (sigma < 2) throw std::invalid_argument("greedy_run: threshold policy needs sigma >= 2");
    if (text.size() < 2) throw std::invalid_argument("greedy_run: threshold policy needs |S| >= 2");
    tr.threshold = greedy_threshold(text.size(), sigma);
  }
  Strings str{text.to_vector()};
  tr.initial_size = text.size();
  const std::int64_t min_gain = policy.finish_zero_gain ? 0 : 1;

  while (true) {
    const std::uint64_t size = total_size(str);
    const std::uint64_t pair_freq = max_pair_frequency(str);
    tr.final_max_pair_frequency = pair_freq;
    if (tr.threshold > 0 && size < tr.threshold) {
      tr.stopped_by_policy = true;
      break;
    }
    if (policy.kind == GreedyPolicy::Kind::MaxIterations && tr.steps.size() >= policy.value) {
      tr.stopped_by_policy = true;
      break;
    }
    if (pair_freq < 2) break;  // nothing repeats

    // Concatenate with separators U, U+1, ... (U = current universe).
    const std::uint64_t universe = sigma + str.size() - 1;
    const std::uint64_t alphabet = universe + str.size();
    if (alphabet >= 0xffffffffULL) throw std::invalid_argument("greedy_run: id space exhausted");
    std::vector<std::uint32_t> t;
    std::vector<std::uint32_t> offset;  // start of each string in t
    t.reserve(size + str.size());
    for (std::size_t j = 0; j < str.size(); ++j) {
      offset.push_back(static_cast<std::uint32_t>(t.size()));
      t.insert(t.end(), str[j].begin(), str[j].end());
      t.push_back(static_cast<std::uint32_t>(universe + j));
    }
    Candidate c = find_best(t, static_cast<std::uint32_t>(alphabet), min_gain);
    if (!c.found) break;

    std::vector<std::uint32_t> chosen;
    count_nonoverlapping(c.positions, c.length, &chosen);
    std::vector<Symbol> word(t.begin() + c.first, t.begin() + c.first + c.length);
    const auto x = static_cast<Symbol>(universe);

    // Rewrite each string, replacing the chosen occurrences.
    std::size_t ci = 0;
    for (std::size_t j = 0; j < str.size(); ++j) {
      const std::uint32_t begin = offset[j];
      const std::uint32_t end = begin + static_cast<std::uint32_t>(str[j].size());
      if (ci == chosen.size() || chosen[ci] >= end) continue;
      std::vector<Symbol> out;
      out.reserve(str[j].size());
      std::uint32_t p = begin;
      while (p < end) {
        if (ci < chosen.size() && chosen[ci] == p) {
          out.push_back(x);
          p += c.length;
          ++ci;
        } else {
          out.push_back(t[p++]);
        }
      }
      str[j] = std::move(out);
    }
    str.push_back(word);

    GreedyStep step;
    step.iteration = tr.steps.size() + 1;
    step.word = std::move(word);
    step.nonterminal = x;
    step.frequency = chosen.size();
    step.gain = c.gain;
    step.size_before = size;
    step.size_after = total_size(str);
    step.nonterminals = str.size() - 1;
    step.max_pair_frequency = pair_freq;
    tr.steps.push_back(std::move(step));
    if (observer) {
      observer(tr.steps.back(),
               FullGrammar(sigma, str[0], Strings(str.begin() + 1, str.end())));
    }
  }
  res.grammar = FullGrammar(sigma, std::move(str[0]), Strings(std::make_move_iterator(str.begin() + 1),
                                                              std::make_move_iterator(str.end())));
  return res;
}

BoundReport greedy_trace_rows(const GreedyTrace& trace, const Text& text) {
  const double n = static_cast<double>(text.size());
  BoundReport rep;
  bool monotone = true;
  bool accounting = true;
  bool positive = true;
  bool pair_bound = true;
  double worst = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const std::uint64_t next_freq =
        i + 1 < trace.steps.size() ? trace.steps[i + 1].max_pair_frequency : trace.final_max_pair_frequency;
    if (next_freq > s.max_pair_frequency) monotone = false;
    if (static_cast<std::int64_t>(s.size_before) - static_cast<std::int64_t>(s.size_after) != s.gain) {
      accounting = false;
    }
    if (s.gain <= 0) positive = false;
    if (s.max_pair_frequency >= 3) {
      // |G| before this round is i.
      const double lhs = static_cast<double>(i) * static_cast<double>(s.max_pair_frequency - 2);
      worst = std::max(worst, lhs);
      if (lhs > n) pair_bound = false;
    }
  }
  rep.rows.push_back(make_flag_row("greedy_frequency_monotone", 0, 0, monotone,
                                   "most frequent pair count over all rhs never increases"));
  rep.rows.push_back(make_flag_row("greedy_pair_count_bound", worst, n, pair_bound,
                                   "max over rounds with z >= 3 of |G| (z - 2) vs n"));
  rep.rows.push_back(make_flag_row("greedy_gain_accounting", 0, 0, accounting,
                                   "size decrease equals (f-1)(|w|-1)-1 every round"));
  rep.rows.push_back(make_flag_row("greedy_positive_gain", 0, 0, positive || trace.policy.finish_zero_gain,
                                   positive ? "every round had positive gain"
                                            : "zero-gain pair rounds present (finish_zero_gain)"));
  return rep;
}

BoundReport greedy_stop_report(const GreedyTrace& trace, const Text& text) {
  const double n = static_cast<double>(text.size());
  const double log_sigma_n = std::log(n) / std::log(static_cast<double>(text.sigma()));
  const std::uint64_t threshold =
      trace.threshold != 0 ? trace.threshold : greedy_threshold(text.size(), text.sigma());
  std::uint64_t size = trace.initial_size;
  std::uint64_t g = 0;
  for (const auto& st : trace.steps) {
    if (size < threshold) break;
    size = st.size_after;
    g = st.nonterminals;
  }
  BoundReport rep;
  rep.rows.push_back(make_flag_row("greedy_stop_point", static_cast<double>(size),
                                   static_cast<double>(threshold), size < threshold,
                                   "||S',G|| at the first point below threshold"));
  rep.rows.push_back(make_bound_row("greedy_nonterminal_bound", static_cast<double>(g),
                                    std::sqrt(n) * log_sigma_n + 3, 0, "|G| there vs sqrt(n) log_sigma n + 3"));
  rep.append(greedy_trace_rows(trace, text));
  return rep;
}

std::string greedy_trace_json_lines(const GreedyTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["iteration"] = s.iteration;
    j["word"] = s.word;
    j["nonterminal"] = s.nonterminal;
    j["frequency"] = s.frequency;
    j["gain"] = s.gain;
    j["size_after"] = s.size_after;
    j["nonterminals"] = s.nonterminals;
    j["max_pair_frequency"] = s.max_pair_frequency;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace gcl
