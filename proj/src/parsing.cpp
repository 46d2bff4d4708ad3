#include "gcl/parsing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "gcl/entropy.hpp"

namespace gcl {

Parsing::Parsing(Text source, std::vector<std::uint64_t> boundaries)
    : source_(std::move(source)), boundaries_(std::move(boundaries)) {
  if (boundaries_.empty() || boundaries_.front() != 0 || boundaries_.back() != source_.size()) {
    throw std::invalid_argument("Parsing: boundaries must start at 0 and end at |S|");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw std::invalid_argument("Parsing: boundaries must be strictly increasing");
    }
  }
}

Parsing Parsing::from_lengths(Text source, std::span<const std::uint64_t> lengths) {
  std::vector<std::uint64_t> b{0};
  b.reserve(lengths.size() + 1);
  for (auto len : lengths) b.push_back(b.back() + len);
  return Parsing(std::move(source), std::move(b));
}

Parsing Parsing::single_letters(Text source) {
  std::vector<std::uint64_t> b(source.size() + 1);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i;
  return Parsing(std::move(source), std::move(b));
}

std::span<const Symbol> Parsing::phrase(std::size_t i) const {
  return source_.symbols().subspan(boundaries_[i], phrase_length(i));
}

std::uint64_t Parsing::max_phrase_length() const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, phrase_length(i));
  return m;
}

std::vector<std::uint64_t> Parsing::lengths() const {
  std::vector<std::uint64_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = phrase_length(i);
  return out;
}

namespace {

std::vector<std::uint64_t> phrase_ids_with(const Parsing& parsing, const SuffixAutomaton& sa) {
  // Equal phrases reach the same automaton state with the same length.
  std::unordered_map<std::uint64_t, std::uint64_t> ids;
  std::vector<std::uint64_t> out(parsing.size());
  for (std::size_t i = 0; i < parsing.size(); ++i) {
    auto state = sa.root();
    for (Symbol c : parsing.phrase(i)) state = sa.step(state, c);
    const std::uint64_t key = (static_cast<std::uint64_t>(state) << 32) | parsing.phrase_length(i);
    auto [it, fresh] = ids.emplace(key, ids.size());
    out[i] = it->second;
  }
  return out;
}

double log2_ratio(std::uint64_t num, std::uint64_t den) {
  return std::log2(static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

std::vector<std::uint64_t> phrase_ids(const Parsing& parsing) {
  SuffixAutomaton sa(parsing.source().symbols());
  return phrase_ids_with(parsing, sa);
}

double parsing_entropy_bits(const Parsing& parsing) {
  const auto ids = phrase_ids(parsing);
  return zero_order_bits(std::span<const std::uint64_t>(ids));
}

double lengths_entropy_bits(const Parsing& parsing) {
  const auto len = parsing.lengths();
  return zero_order_bits(std::span<const std::uint64_t>(len));
}

ZeroProbabilityError::ZeroProbabilityError(std::size_t phrase_index, std::optional<int> k)
    : std::runtime_error("phrase " + std::to_string(phrase_index) + " has zero probability" +
                         (k ? " (k=" + std::to_string(*k) + ")" : std::string{})),
      index_(phrase_index) {}

PhraseCostModel::PhraseCostModel(Text text) : index_(std::move(text)) {}

double PhraseCostModel::probability(std::span<const Symbol> phrase, std::optional<int> k) const {
  const double c = k ? k_cost(phrase, *k) : cost(phrase);
  return std::isinf(c) ? 0.0 : std::exp2(-c);
}

double PhraseCostModel::cost(std::span<const Symbol> phrase) const {
  const std::uint64_t occ = index_.count(phrase);
  if (occ == 0) return std::numeric_limits<double>::infinity();
  return log2_ratio(text().size(), occ);
}

double PhraseCostModel::k_cost(std::span<const Symbol> phrase, int k) const {
  if (k < 0) throw std::invalid_argument("k_cost: k must be non-negative");
  const std::size_t m = phrase.size();
  const std::size_t kk = static_cast<std::size_t>(k);
  double bits = static_cast<double>(std::min(m, kk)) * std::log2(static_cast<double>(text().sigma()));
  const auto& sa = index_.automaton();
  for (std::size_t j = kk; j < m; ++j) {
    auto ctx = sa.root();
    for (std::size_t t = j - kk; t < j; ++t) ctx = sa.step(ctx, phrase[t]);
    if (ctx == SuffixAutomaton::kNone) return std::numeric_limits<double>::infinity();
    const auto ext = sa.step(ctx, phrase[j]);
    if (ext == SuffixAutomaton::kNone) return std::numeric_limits<double>::infinity();
    const std::uint64_t den = kk == 0 ? text().size() : sa.occurrences(ctx);
    bits += log2_ratio(den, sa.occurrences(ext));
  }
  return bits;
}

CostReport PhraseCostModel::parsing_cost(const Parsing& parsing, std::optional<int> k) const {
  CostReport r;
  r.k = k;
  for (std::size_t i = 0; i < parsing.size(); ++i) {
    const auto y = parsing.phrase(i);
    const double c = cost(y);
    if (std::isinf(c)) throw ZeroProbabilityError(i, std::nullopt);
    r.cost_bits += c;
    if (k) {
      const double ck = k_cost(y, *k);
      if (std::isinf(ck)) throw ZeroProbabilityError(i, k);
      r.k_cost_bits += ck;
    }
  }
  const auto ids = phrase_ids_with(parsing, index_.automaton());
  r.parsing_entropy_bits = zero_order_bits(std::span<const std::uint64_t>(ids));
  r.lengths_entropy_bits = lengths_entropy_bits(parsing);
  return r;
}

double phrase_probability(const Text& text, std::span<const Symbol> phrase, std::optional<int> k) {
  return PhraseCostModel(text).probability(phrase, k);
}

CostReport parsing_cost(const Parsing& parsing, std::optional<int> k) {
  return PhraseCostModel(parsing.source()).parsing_cost(parsing, k);
}

Parsing offset_parsing(const Text& text, std::uint64_t l, std::uint64_t offset) {
  if (l == 0 || offset >= l) throw std::invalid_argument("offset_parsing: need 0 <= offset < l");
  const std::uint64_t n = text.size();
  std::vector<std::uint64_t> b{0};
  std::uint64_t pos = std::min(offset, n);
  if (pos > 0) b.push_back(pos);
  while (pos < n) {
    pos = std::min(pos + l, n);
    b.push_back(pos);
  }
  return Parsing(text, std::move(b));
}

Parsing best_offset_parsing(const PhraseCostModel& model, std::uint64_t l) {
  const Text& text = model.text();
  if (l < 1 || l > text.size()) throw std::invalid_argument("best_offset_parsing: l out of range");
  std::optional<Parsing> best;
  double best_cost = 0;
  for (std::uint64_t off = 0; off < l; ++off) {
    Parsing cand = offset_parsing(text, l, off);
    double c = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) c += model.cost(cand.phrase(i));
    if (!best || c < best_cost - 1e-9) {
      best = std::move(cand);
      best_cost = c;
    }
  }
  return *best;
}

Parsing best_offset_parsing(const Text& text, std::uint64_t l) {
  return best_offset_parsing(PhraseCostModel(text), l);
}

Parsing lz78_parse(const Text& text) {
  // Trie edges keyed by (node, symbol); node 0 is the empty phrase.
  std::unordered_map<std::uint64_t, std::uint32_t> edges;
  edges.reserve(text.size());
  std::uint32_t nodes = 1;
  std::vector<std::uint64_t> b{0};
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    std::uint32_t node = 0;
    std::size_t j = i;
    while (j < n) {
      auto it = edges.find((static_cast<std::uint64_t>(node) << 32) | text[j]);
      if (it == edges.end()) break;
      node = it->second;
      ++j;
    }
    if (j < n) {
      edges.emplace((static_cast<std::uint64_t>(node) << 32) | text[j], nodes++);
      ++j;
    }
    b.push_back(j);
    i = j;
  }
  return Parsing(text, std::move(b));
}

Parsing lz77_parse_nonself(const Text& text) {
  SuffixAutomaton sa(text.symbols());
  std::vector<std::uint64_t> b{0};
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    auto state = sa.root();
    std::size_t m = 0;
    while (i + m < n) {
      const auto next = sa.step(state, text[i + m]);
      // The leftmost occurrence must end before position i.
      if (next == SuffixAutomaton::kNone || sa.first_end(next) + 1 > i) break;
      state = next;
      ++m;
    }
    if (i + m < n) ++m;
    i += m;
    b.push_back(i);
  }
  return Parsing(text, std::move(b));
}

NaturalCheck is_natural_parsing(const Parsing& parsing, const SubstringIndex& index) {
  const Text& s = parsing.source();
  if (s.sigma() < 2) throw std::invalid_argument("is_natural_parsing: sigma must be at least 2");
  const double short_limit =
      s.empty() ? 0 : std::log(static_cast<double>(s.size())) / std::log(static_cast<double>(s.sigma()));
  NaturalCheck out;
  for (std::size_t i = 0; i < parsing.size(); ++i) {
    const auto y = parsing.phrase(i);
    if (y.size() == 1) continue;
    if (static_cast<double>(y.size()) <= short_limit + 1e-12) continue;
    if (index.count(y.first(y.size() - 1)) > 1) continue;
    out.natural = false;
    out.violations.push_back(i);
  }
  return out;
}

NaturalCheck is_natural_parsing(const Parsing& parsing) {
  if (parsing.source().sigma() < 2) {
    throw std::invalid_argument("is_natural_parsing: sigma must be at least 2");
  }
  return is_natural_parsing(parsing, SubstringIndex(parsing.source()));
}

BoundReport verify_parsing_bounds(const PhraseCostModel& model, const Parsing& parsing, int k,
                                  double text_entropy_bits) {
  constexpr double kSlack = 1e-6;
  const CostReport c = model.parsing_cost(parsing, k);
  const double log_sigma = std::log2(static_cast<double>(parsing.source().sigma()));
  const double y = static_cast<double>(parsing.size());
  const double n = static_cast<double>(parsing.source().size());
  BoundReport rep;
  rep.rows.push_back(make_bound_row("parsing_entropy_vs_cost", c.parsing_entropy_bits,
                                    c.cost_bits + c.lengths_entropy_bits, kSlack));
  rep.rows.push_back(make_bound_row("parsing_entropy_vs_kcost", c.parsing_entropy_bits,
                                    c.k_cost_bits + c.lengths_entropy_bits, kSlack));
  rep.rows.push_back(make_bound_row("kcost_vs_text_entropy", c.k_cost_bits,
                                    text_entropy_bits + y * k * log_sigma, kSlack));
  const double lengths_rhs =
      y == 0 ? 0 : y * std::log2(n / y) + y * (1 + std::numbers::log2e);
  rep.rows.push_back(make_bound_row("lengths_entropy_bound", c.lengths_entropy_bits, lengths_rhs, kSlack));
  return rep;
}

BoundReport verify_parsing_bounds(const Parsing& parsing, int k) {
  const PhraseCostModel model(parsing.source());
  return verify_parsing_bounds(model, parsing, k,
                               empirical_entropy(parsing.source(), k, false).total_bits);
}

BoundReport verify_mean_entropy(const PhraseCostModel& model, const Parsing& parsing, std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("verify_mean_entropy: l must be positive");
  const Text& text = model.text();
  const double n = static_cast<double>(text.size());
  const auto profile = entropy_profile(text, static_cast<int>(l) - 1, false);
  const double mean = profile.mean_up_to.at(static_cast<int>(l));
  const double cost = model.parsing_cost(parsing).cost_bits;
  BoundReport rep;
  rep.rows.push_back(make_bound_row("mean_entropy_offset_cost", cost,
                                    n * mean + (n > 0 ? std::log2(n) : 0), 1e-6,
                                    "l=" + std::to_string(l)));
  return rep;
}

std::string format_parsing(const Parsing& parsing) {
  std::ostringstream os;
  os << "n=" << parsing.source().size() << '\n';
  for (std::size_t i = 0; i < parsing.size(); ++i) os << parsing.phrase_length(i) << '\n';
  return os.str();
}

Parsing parse_parsing(const Text& source, std::string_view content) {
  std::istringstream in{std::string(content)};
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("n=")) {
    throw std::invalid_argument("parsing file: missing 'n=<int>' header");
  }
  const std::uint64_t n = std::stoull(line.substr(2));
  if (n != source.size()) {
    throw std::invalid_argument("parsing file: n=" + std::to_string(n) + " but text has " +
                                std::to_string(source.size()) + " symbols");
  }
  std::vector<std::uint64_t> lengths;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    lengths.push_back(std::stoull(line));
  }
  return Parsing::from_lengths(source, lengths);
}

}  // namespace gcl
