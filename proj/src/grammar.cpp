#include "gcl/grammar.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gcl/varint.hpp"

namespace gcl {

namespace {

constexpr std::uint64_t kSaturated = ~0ULL;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

}  // namespace

FullGrammar::FullGrammar(std::uint64_t sigma, std::vector<Symbol> start,
                         std::vector<std::vector<Symbol>> rules)
    : sigma_(sigma), start_(std::move(start)), rules_(std::move(rules)) {
  if (sigma_ == 0) throw std::invalid_argument("FullGrammar: sigma must be at least 1");
  const std::uint64_t u = universe();
  auto check_ids = [&](const std::vector<Symbol>& seq, const std::string& where) {
    for (Symbol x : seq) {
      if (x >= u) {
        throw std::invalid_argument("FullGrammar: " + where + " references undefined id " +
                                    std::to_string(x));
      }
    }
  };
  check_ids(start_, "starting string");
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].empty()) {
      throw std::invalid_argument("FullGrammar: rule " + std::to_string(sigma_ + i) + " is empty");
    }
    check_ids(rules_[i], "rule " + std::to_string(sigma_ + i));
  }

  // Iterative DFS: post-order gives children before parents.
  const std::size_t g = rules_.size();
  std::vector<std::uint8_t> color(g, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Symbol> post;
  post.reserve(g);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < g; ++root) {
    if (color[root]) continue;
    stack.push_back({root, 0});
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < rules_[v].size()) {
        const Symbol x = rules_[v][idx++];
        if (x < sigma_) continue;
        const std::size_t w = x - sigma_;
        if (color[w] == 1) {
          throw std::invalid_argument("FullGrammar: cyclic rules through id " + std::to_string(x));
        }
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        post.push_back(static_cast<Symbol>(sigma_ + v));
        stack.pop_back();
      }
    }
  }
  exp_len_.assign(g, 0);
  for (Symbol x : post) {
    std::uint64_t len = 0;
    for (Symbol y : rules_[x - sigma_]) len = sat_add(len, expansion_length(y));
    if (len == kSaturated) throw std::invalid_argument("FullGrammar: expansion length overflow");
    exp_len_[x - sigma_] = len;
  }
  top_down_.assign(post.rbegin(), post.rend());
  for (Symbol y : start_) text_length_ = sat_add(text_length_, expansion_length(y));
  if (text_length_ == kSaturated) throw std::invalid_argument("FullGrammar: text length overflow");
}

FullGrammar FullGrammar::trivial(const Text& text) {
  return FullGrammar(text.sigma(), text.to_vector(), {});
}

const std::vector<Symbol>& FullGrammar::rhs(Symbol nonterminal) const {
  if (nonterminal < sigma_ || nonterminal >= universe()) {
    throw std::out_of_range("FullGrammar::rhs: " + std::to_string(nonterminal) + " is not a nonterminal");
  }
  return rules_[nonterminal - sigma_];
}

std::uint64_t FullGrammar::expansion_length(Symbol id) const {
  if (id < sigma_) return 1;
  if (id >= universe()) throw std::out_of_range("expansion_length: undefined id " + std::to_string(id));
  return exp_len_[id - sigma_];
}

GrammarMetrics metrics(const FullGrammar& g) {
  GrammarMetrics m;
  m.n_nonterminals = g.n_nonterminals();
  for (std::size_t i = 0; i < g.rules().size(); ++i) {
    m.rhs_size_grammar += g.rules()[i].size();
    m.is_cnf = m.is_cnf && g.rules()[i].size() == 2;
    m.expansion_sum = sat_add(m.expansion_sum, g.expansion_length(static_cast<Symbol>(g.sigma() + i)));
  }
  m.rhs_size_full = g.start().size() + m.rhs_size_grammar;
  return m;
}

std::vector<Symbol> expand_sequence(const FullGrammar& g, std::span<const Symbol> ids) {
  std::uint64_t total = 0;
  for (Symbol x : ids) total = sat_add(total, g.expansion_length(x));
  std::vector<Symbol> out;
  out.reserve(total);
  std::vector<std::pair<const Symbol*, const Symbol*>> stack;
  stack.push_back({ids.data(), ids.data() + ids.size()});
  while (!stack.empty()) {
    auto& [p, end] = stack.back();
    if (p == end) {
      stack.pop_back();
      continue;
    }
    const Symbol x = *p++;
    if (g.is_terminal(x)) {
      out.push_back(x);
    } else {
      const auto& r = g.rhs(x);
      stack.push_back({r.data(), r.data() + r.size()});
    }
  }
  return out;
}

std::vector<Symbol> expand(const FullGrammar& g, Symbol id) {
  if (!g.is_defined(id)) throw std::out_of_range("expand: undefined id " + std::to_string(id));
  return expand_sequence(g, std::span<const Symbol>(&id, 1));
}

Text expand_start(const FullGrammar& g) {
  return Text(expand_sequence(g, g.start()), g.sigma());
}

std::vector<Symbol> concatenated_rhs(const FullGrammar& g) {
  std::vector<Symbol> out(g.start());
  for (const auto& r : g.rules()) out.insert(out.end(), r.begin(), r.end());
  return out;
}

namespace {

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;
constexpr std::uint64_t kHashBase = 1000003;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMersenne61) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return r;
}

std::string name(const FullGrammar& g, Symbol x) {
  return g.is_terminal(x) ? std::to_string(x) : "X" + std::to_string(x);
}

// Non-overlapping digram counts over each rhs string separately.
std::map<std::pair<Symbol, Symbol>, std::uint64_t> digram_counts(const FullGrammar& g) {
  std::map<std::pair<Symbol, Symbol>, std::uint64_t> total;
  auto scan = [&](const std::vector<Symbol>& s) {
    std::map<std::pair<Symbol, Symbol>, std::size_t> last_end;  // end index of last counted copy
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const std::pair<Symbol, Symbol> d{s[i], s[i + 1]};
      auto it = last_end.find(d);
      if (it != last_end.end() && it->second == i) continue;  // overlaps previous copy
      last_end[d] = i + 1;
      ++total[d];
    }
  };
  scan(g.start());
  for (const auto& r : g.rules()) scan(r);
  return total;
}

std::vector<std::uint64_t> rhs_occurrence_counts(const FullGrammar& g) {
  std::vector<std::uint64_t> occ(g.n_nonterminals(), 0);
  for (Symbol x : concatenated_rhs(g)) {
    if (!g.is_terminal(x)) ++occ[x - g.sigma()];
  }
  return occ;
}

}  // namespace

DigramMax max_digram(const FullGrammar& g) {
  DigramMax best;
  for (const auto& [d, c] : digram_counts(g)) {
    if (c > best.count) best = {c, d.first, d.second};
  }
  return best;
}

IrreducibleCheck check_irreducible(const FullGrammar& g) {
  IrreducibleCheck out;
  const std::uint64_t sigma = g.sigma();

  // IG1: polynomial hashes of expansions, confirmed by full comparison.
  std::vector<std::uint64_t> hash(g.n_nonterminals(), 0);
  auto hash_of = [&](Symbol x) { return x < sigma ? static_cast<std::uint64_t>(x) + 1 : hash[x - sigma]; };
  for (auto it = g.top_down_order().rbegin(); it != g.top_down_order().rend(); ++it) {
    std::uint64_t h = 0;
    for (Symbol y : g.rhs(*it)) {
      h = mul_mod(h, pow_mod(kHashBase, g.expansion_length(y)));
      h += hash_of(y);
      if (h >= kMersenne61) h -= kMersenne61;
    }
    hash[*it - sigma] = h;
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Symbol>> buckets;
  for (std::size_t i = 0; i < g.n_nonterminals(); ++i) {
    const auto x = static_cast<Symbol>(sigma + i);
    buckets[{g.expansion_length(x), hash[i]}].push_back(x);
  }
  for (const auto& [key, members] : buckets) {
    if (members.size() < 2) continue;
    std::map<std::vector<Symbol>, Symbol> seen;
    for (Symbol x : members) {
      auto [it, fresh] = seen.emplace(expand(g, x), x);
      if (!fresh) {
        out.ig1 = false;
        out.witnesses.push_back("IG1: " + name(g, it->second) + " and " + name(g, x) +
                                " have the same expansion");
      }
    }
  }
  const auto occ = rhs_occurrence_counts(g);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] < 2) {
      out.ig2 = false;
      out.witnesses.push_back("IG2: " + name(g, static_cast<Symbol>(sigma + i)) + " occurs " +
                              std::to_string(occ[i]) + " time(s)");
    }
  }

  for (const auto& [d, c] : digram_counts(g)) {
    if (c >= 2) {
      out.ig3 = false;
      out.witnesses.push_back("IG3: pair (" + name(g, d.first) + "," + name(g, d.second) + ") occurs " +
                              std::to_string(c) + " times");
    }
  }
  return out;
}

NonRedundancyCheck check_weakly_nonredundant(const FullGrammar& g) {
  NonRedundancyCheck out;
  const std::uint64_t sigma = g.sigma();
  out.rhs_occurrences = rhs_occurrence_counts(g);
  out.tree_occurrences.assign(g.n_nonterminals(), 0);
  for (Symbol x : g.start()) {
    if (!g.is_terminal(x)) out.tree_occurrences[x - sigma] = sat_add(out.tree_occurrences[x - sigma], 1);
  }
  for (Symbol x : g.top_down_order()) {
    const std::uint64_t c = out.tree_occurrences[x - sigma];
    for (Symbol y : g.rhs(x)) {
      if (!g.is_terminal(y)) out.tree_occurrences[y - sigma] = sat_add(out.tree_occurrences[y - sigma], c);
    }
  }
  for (std::size_t i = 0; i < g.n_nonterminals(); ++i) {
    const auto x = static_cast<Symbol>(sigma + i);
    if (out.tree_occurrences[i] < 2) {
      out.weakly_nonredundant = false;
      out.witnesses.push_back(name(g, x) + " occurs " + std::to_string(out.tree_occurrences[i]) +
                              " time(s) in the derivation tree");
    }
    if (g.rhs(x).size() < 2) {
      out.weakly_nonredundant = false;
      out.witnesses.push_back(name(g, x) + " has a right-hand side of length " +
                              std::to_string(g.rhs(x).size()));
    }
  }
  return out;
}

ExpansionSumCheck expansion_sum_check(const FullGrammar& g) {
  ExpansionSumCheck out;
  out.applicable = check_irreducible(g).ig2;
  out.sum = metrics(g).expansion_sum;
  out.bound = 2 * g.text_length();
  out.bound_holds = out.applicable && out.sum <= out.bound;
  return out;
}

InducedParsing induced_parsing(const FullGrammar& g) {
  InducedParsing out;
  std::vector<bool> expanded(g.n_nonterminals(), false);
  std::vector<std::uint64_t> lengths;
  std::vector<std::pair<const Symbol*, const Symbol*>> stack;
  stack.push_back({g.start().data(), g.start().data() + g.start().size()});
  while (!stack.empty()) {
    auto& [p, end] = stack.back();
    if (p == end) {
      stack.pop_back();
      continue;
    }
    const Symbol x = *p++;
    if (!g.is_terminal(x) && !expanded[x - g.sigma()]) {
      expanded[x - g.sigma()] = true;
      const auto& r = g.rhs(x);
      stack.push_back({r.data(), r.data() + r.size()});
      continue;
    }
    out.s2.push_back(x);
    lengths.push_back(g.expansion_length(x));
  }
  out.parsing = Parsing::from_lengths(expand_start(g), lengths);
  return out;
}

Parsing start_parsing(const FullGrammar& g) {
  std::vector<std::uint64_t> lengths;
  lengths.reserve(g.start().size());
  for (Symbol x : g.start()) lengths.push_back(g.expansion_length(x));
  return Parsing::from_lengths(expand_start(g), lengths);
}

FullGrammar bad_grammar_fixture(int bits) {
  if (bits < 3) throw std::invalid_argument("bad_grammar_fixture: bits must be at least 3");
  if (bits > 24) throw std::invalid_argument("bad_grammar_fixture: bits must be at most 24");
  // Words of length len, value v (MSB first), get id base[len] + v.
  std::vector<std::uint64_t> base(bits + 1, 0);
  std::uint64_t next = 2;
  for (int len = 2; len <= bits; ++len) {
    base[len] = next;
    next += 1ULL << len;
  }
  std::vector<std::vector<Symbol>> rules;
  rules.reserve(next - 2);
  for (int len = 2; len <= bits; ++len) {
    for (std::uint64_t v = 0; v < (1ULL << len); ++v) {
      const auto last = static_cast<Symbol>(v & 1);
      if (len == 2) {
        rules.push_back({static_cast<Symbol>(v >> 1), last});
      } else {
        rules.push_back({static_cast<Symbol>(base[len - 1] + (v >> 1)), last});
      }
    }
  }
  std::vector<Symbol> start;
  for (std::uint64_t v = 0; v < (1ULL << bits); ++v) {
    start.push_back(static_cast<Symbol>(base[bits] + v));
    start.push_back(static_cast<Symbol>(base[bits] + v));
  }
  return FullGrammar(2, std::move(start), std::move(rules));
}

std::string serialize_grammar(const FullGrammar& g) {
  std::string out = "GCL1";
  put_varint(out, g.sigma());
  put_varint(out, g.n_nonterminals());
  for (const auto& r : g.rules()) {
    put_varint(out, r.size());
    for (Symbol x : r) put_varint(out, x);
  }
  put_varint(out, g.start().size());
  for (Symbol x : g.start()) put_varint(out, x);
  return out;
}

FullGrammar deserialize_grammar(std::string_view bytes) {
  if (bytes.substr(0, 4) != "GCL1") throw MalformedStream("grammar file: bad magic");
  std::size_t pos = 4;
  const std::uint64_t sigma = get_varint(bytes, pos);
  const std::uint64_t count = get_varint(bytes, pos);
  if (count > bytes.size()) throw MalformedStream("grammar file: rule count exceeds file size");
  auto read_seq = [&]() {
    const std::uint64_t len = get_varint(bytes, pos);
    if (len > bytes.size() - pos) throw MalformedStream("grammar file: sequence exceeds file size");
    std::vector<Symbol> seq(len);
    for (auto& x : seq) {
      const std::uint64_t v = get_varint(bytes, pos);
      if (v > 0xffffffffULL) throw MalformedStream("grammar file: symbol id out of range");
      x = static_cast<Symbol>(v);
    }
    return seq;
  };
  std::vector<std::vector<Symbol>> rules(count);
  for (auto& r : rules) r = read_seq();
  auto start = read_seq();
  if (pos != bytes.size()) throw MalformedStream("grammar file: trailing bytes");
  try {
    return FullGrammar(sigma, std::move(start), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw MalformedStream(std::string("grammar file: ") + e.what());
  }
}

std::string dump_grammar(const FullGrammar& g) {
  std::ostringstream os;
  os << "sigma=" << g.sigma() << " rules=" << g.n_nonterminals() << '\n';
  for (std::size_t i = 0; i < g.n_nonterminals(); ++i) {
    os << 'X' << g.sigma() + i << " ->";
    for (Symbol x : g.rules()[i]) os << ' ' << name(g, x);
    os << '\n';
  }
  os << "S' ->";
  for (Symbol x : g.start()) os << ' ' << name(g, x);
  os << '\n';
  return os.str();
}

}  // namespace gcl
