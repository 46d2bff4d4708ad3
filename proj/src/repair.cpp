#include "gcl/repair.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace gcl {

std::string StopPolicy::describe() const {
  switch (kind) {
    case Kind::RunToEnd: return "run-to-end";
    case Kind::WorkingStringThreshold: return "working-string-threshold";
    case Kind::MaxNonterminals: return "max-nonterminals(" + std::to_string(value) + ")";
    case Kind::CustomThreshold: return "custom-threshold(" + std::to_string(value) + ")";
  }
  return "?";
}

std::uint64_t repair_threshold(std::uint64_t n, std::uint64_t sigma) {
  if (sigma < 2 || n < 2) throw std::invalid_argument("repair_threshold: need sigma >= 2 and n >= 2");
  const double t = 16.0 * static_cast<double>(n) * std::log(static_cast<double>(sigma)) /
                   std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(t));
}

namespace {

constexpr std::uint32_t kNil = 0xffffffffu;

using PairKey = std::uint64_t;
PairKey key_of(Symbol a, Symbol b) { return (static_cast<std::uint64_t>(a) << 32) | b; }
Symbol key_left(PairKey k) { return static_cast<Symbol>(k >> 32); }
Symbol key_right(PairKey k) { return static_cast<Symbol>(k & 0xffffffffu); }

// Working string as a linked list over original positions, with every
// counted pair occurrence indexed by its start position.
class RepairState {
 public:
  explicit RepairState(const Text& text) : n_(text.size()) {
    sym_.assign(text.symbols().begin(), text.symbols().end());
    next_.resize(n_);
    prev_.resize(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      next_[i] = i + 1 < n_ ? i + 1 : kNil;
      prev_[i] = i > 0 ? i - 1 : kNil;
    }
    indexed_.assign(n_, false);
    idx_key_.assign(n_, 0);
    length_ = n_;
    std::vector<std::uint32_t> all(n_);
    for (std::uint32_t i = 0; i < n_; ++i) all[i] = i;
    reindex(all);
  }

  std::uint64_t length() const { return length_; }

  // (count, pair) of the current choice; count 0 if nothing occurs twice.
  std::pair<std::uint64_t, PairKey> best() const {
    if (queue_.empty()) return {0, 0};
    const auto& [neg, first, key] = *queue_.begin();
    return {static_cast<std::uint64_t>(-neg), key};
  }

  void replace(PairKey key, Symbol x) {
    const auto snapshot = std::vector<std::uint32_t>(pairs_.at(key).begin(), pairs_.at(key).end());
    const Symbol a = key_left(key);
    const Symbol b = key_right(key);
    std::vector<std::uint32_t> dirty;
    dirty.reserve(3 * snapshot.size());
    for (std::uint32_t i : snapshot) {
      const std::uint32_t j = next_[i];
      if (j == kNil || sym_[i] != a || sym_[j] != b) continue;
      if (prev_[i] != kNil) unindex(prev_[i]);
      unindex(i);
      unindex(j);
      sym_[i] = x;
      next_[i] = next_[j];
      if (next_[j] != kNil) prev_[next_[j]] = i;
      next_[j] = prev_[j] = kNil;
      --length_;
      if (prev_[i] != kNil) dirty.push_back(prev_[i]);
      dirty.push_back(i);
      if (next_[i] != kNil) dirty.push_back(next_[i]);
    }
    std::sort(dirty.begin(), dirty.end());
    dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
    // Positions deleted later in this pass may still be listed.
    dirty.erase(std::remove_if(dirty.begin(), dirty.end(),
                               [&](std::uint32_t p) { return !alive(p); }),
                dirty.end());
    reindex(dirty);
  }

  std::vector<Symbol> working_string() const {
    std::vector<Symbol> out;
    out.reserve(length_);
    for (std::uint32_t p = n_ > 0 ? 0 : kNil; p != kNil; p = next_[p]) out.push_back(sym_[p]);
    return out;
  }

 private:
  // Position 0 is never deleted, so the list always starts there.
  bool alive(std::uint32_t p) const { return p == 0 || prev_[p] != kNil; }

  void queue_erase(PairKey key, const std::set<std::uint32_t>& pos) {
    if (pos.size() >= 2) queue_.erase({-static_cast<std::int64_t>(pos.size()), *pos.begin(), key});
  }
  void queue_insert(PairKey key, const std::set<std::uint32_t>& pos) {
    if (pos.size() >= 2) queue_.insert({-static_cast<std::int64_t>(pos.size()), *pos.begin(), key});
  }

  void unindex(std::uint32_t p) {
    if (!indexed_[p]) return;
    indexed_[p] = false;
    auto it = pairs_.find(idx_key_[p]);
    queue_erase(it->first, it->second);
    it->second.erase(p);
    queue_insert(it->first, it->second);
    if (it->second.empty()) pairs_.erase(it);
  }

  void index(std::uint32_t p) {
    const PairKey key = key_of(sym_[p], sym_[next_[p]]);
    auto& pos = pairs_[key];
    queue_erase(key, pos);
    pos.insert(p);
    queue_insert(key, pos);
    indexed_[p] = true;
    idx_key_[p] = key;
  }

  bool in_run(std::uint32_t p) const {
    return (next_[p] != kNil && sym_[next_[p]] == sym_[p]) ||
           (prev_[p] != kNil && sym_[prev_[p]] == sym_[p]);
  }

  // Re-derives the counted occurrences starting at the given positions.
  // Runs of equal letters are redone from their first position so that the
  // counted copies of the doubled pair sit at even offsets.
  void reindex(const std::vector<std::uint32_t>& positions) {
    std::unordered_set<std::uint32_t> runs_done;
    for (std::uint32_t p : positions) {
      if (!in_run(p)) {
        unindex(p);
        if (next_[p] != kNil) index(p);
        continue;
      }
      std::uint32_t s = p;
      while (prev_[s] != kNil && sym_[prev_[s]] == sym_[p]) s = prev_[s];
      if (!runs_done.insert(s).second) continue;
      std::uint64_t offset = 0;
      for (std::uint32_t q = s; q != kNil && sym_[q] == sym_[s]; q = next_[q], ++offset) {
        unindex(q);
        if (next_[q] == kNil) break;
        if (sym_[next_[q]] != sym_[q] || offset % 2 == 0) index(q);
      }
    }
  }

  std::uint32_t n_;
  std::vector<Symbol> sym_;
  std::vector<std::uint32_t> next_, prev_;
  std::vector<bool> indexed_;
  std::vector<PairKey> idx_key_;
  std::uint64_t length_ = 0;
  std::unordered_map<PairKey, std::set<std::uint32_t>> pairs_;
  // (-count, first position, pair): begin() is the pair to replace next.
  std::set<std::tuple<std::int64_t, std::uint32_t, PairKey>> queue_;
};

}  // namespace

RepairResult repair_run(const Text& text, const StopPolicy& policy, const RepairObserver& observer) {
  RepairResult res;
  RepairTrace& tr = res.trace;
  tr.policy = policy;
  tr.initial_length = text.size();
  if (text.size() >= 0xffffffffULL) throw std::invalid_argument("repair_run: text too long");
  switch (policy.kind) {
    case StopPolicy::Kind::WorkingStringThreshold:
      if (text.sigma() < 2) throw std::invalid_argument("repair_run: threshold policy needs sigma >= 2");
      if (text.size() < 2) throw std::invalid_argument("repair_run: threshold policy needs |S| >= 2");
      tr.threshold = repair_threshold(text.size(), text.sigma());
      break;
    case StopPolicy::Kind::CustomThreshold:
      if (policy.value == 0) throw std::invalid_argument("repair_run: threshold must be positive");
      tr.threshold = policy.value;
      break;
    case StopPolicy::Kind::MaxNonterminals:
      if (policy.value == 0) throw std::invalid_argument("repair_run: max-nonterminals must be positive");
      break;
    case StopPolicy::Kind::RunToEnd: break;
  }

  RepairState st(text);
  std::vector<std::vector<Symbol>> rules;
  const std::uint64_t sigma = text.sigma();
  if (sigma + text.size() / 2 >= 0xffffffffULL) throw std::invalid_argument("repair_run: id space exhausted");
  while (true) {
    if (tr.threshold > 0 && st.length() < tr.threshold) {
      tr.stopped_by_policy = true;
      break;
    }
    if (policy.kind == StopPolicy::Kind::MaxNonterminals && rules.size() >= policy.value) {
      tr.stopped_by_policy = true;
      break;
    }
    const auto [count, key] = st.best();
    if (count < 2) break;
    const auto x = static_cast<Symbol>(sigma + rules.size());
    rules.push_back({key_left(key), key_right(key)});
    st.replace(key, x);
    RepairStep step{tr.steps.size() + 1, key_left(key), key_right(key), x, count, st.length(), rules.size()};
    tr.steps.push_back(step);
    if (observer) observer(step, FullGrammar(sigma, st.working_string(), rules));
  }
  res.grammar = FullGrammar(sigma, st.working_string(), std::move(rules));
  return res;
}

BoundReport repair_trace_rows(const RepairTrace& trace, const Text& text) {
  const double n = static_cast<double>(text.size());
  BoundReport rep;
  bool monotone = true;
  double worst = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (i > 0 && trace.steps[i].frequency > trace.steps[i - 1].frequency) monotone = false;
    // Before step i the grammar has i nonterminals and the best pair occurs z times.
    worst = std::max(worst, static_cast<double>(i) * static_cast<double>(trace.steps[i].frequency));
  }
  rep.rows.push_back(make_flag_row("repair_frequency_monotone", 0, 0, monotone,
                                   "most frequent pair count never increases"));
  rep.rows.push_back(make_flag_row("repair_most_frequent_pair", worst, n, worst < n || trace.steps.empty(),
                                   "max over iterations of |G| * z vs n"));
  return rep;
}

BoundReport stop_point_report(const RepairTrace& trace, const Text& text) {
  const double n = static_cast<double>(text.size());
  const double log_sigma_n = std::log(n) / std::log(static_cast<double>(text.sigma()));
  const std::uint64_t threshold =
      trace.threshold != 0 ? trace.threshold : repair_threshold(text.size(), text.sigma());
  // First point of the run with the working string below the threshold.
  std::uint64_t len = trace.initial_length;
  std::uint64_t g = 0;
  for (const auto& st : trace.steps) {
    if (len < threshold) break;
    len = st.working_length;
    g = st.nonterminals;
  }
  BoundReport rep;
  rep.rows.push_back(make_flag_row("repair_stop_point", static_cast<double>(len),
                                   static_cast<double>(threshold), len < threshold,
                                   "working string length at the first point below threshold"));
  rep.rows.push_back(make_bound_row("repair_nonterminal_bound", static_cast<double>(g),
                                    std::sqrt(n) * log_sigma_n, 0, "|G| there vs sqrt(n) log_sigma n"));
  rep.append(repair_trace_rows(trace, text));
  return rep;
}

Text worst_case_family(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("worst_case_family: n must be at least 1");
  std::vector<Symbol> s;
  s.reserve(4 * n);
  const auto hash = static_cast<Symbol>(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    s.push_back(static_cast<Symbol>(i));
    s.push_back(hash);
  }
  for (std::uint64_t i = n; i-- > 0;) {
    s.push_back(static_cast<Symbol>(i));
    s.push_back(hash);
  }
  return Text(std::move(s), n + 1);
}

std::string repair_trace_json_lines(const RepairTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["iteration"] = s.iteration;
    j["pair"] = {s.left, s.right};
    j["nonterminal"] = s.nonterminal;
    j["frequency"] = s.frequency;
    j["working_length"] = s.working_length;
    j["nonterminals"] = s.nonterminals;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace gcl
