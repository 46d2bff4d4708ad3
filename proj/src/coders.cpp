#include "gcl/coders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "gcl/entropy.hpp"

namespace gcl {

namespace {
constexpr std::uint64_t kMaxUnary = 1ULL << 20;
}

std::string BitStream::to_string() const {
  std::string s;
  s.reserve(length_bits);
  for (std::uint64_t i = 0; i < length_bits; ++i) s.push_back((bytes[i >> 3] >> (7 - (i & 7))) & 1 ? '1' : '0');
  return s;
}

void BitWriter::put(bool bit) {
  if ((out_.length_bits & 7) == 0) out_.bytes.push_back(0);
  if (bit) out_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (out_.length_bits & 7));
  ++out_.length_bits;
}

void BitWriter::put_bits(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) put((value >> i) & 1);
}

void BitWriter::put_unary(std::uint64_t len) {
  if (len == 0 || len > kMaxUnary) throw std::invalid_argument("unary length must be in 1..2^20");
  for (std::uint64_t i = 1; i < len; ++i) put(true);
  put(false);
}

void BitWriter::pad_to_byte() {
  while (out_.length_bits & 7) put(false);
}

void BitWriter::append(const BitStream& other) {
  for (std::uint64_t i = 0; i < other.length_bits; ++i) put((other.bytes[i >> 3] >> (7 - (i & 7))) & 1);
}

bool BitReader::get() {
  if (pos_ >= in_.length_bits) throw MalformedStream("bit stream ended early");
  const bool bit = (in_.bytes[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned width) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | get();
  return v;
}

std::uint64_t BitReader::get_unary(std::uint64_t cap) {
  std::uint64_t len = 1;
  while (get()) {
    if (++len > cap) throw MalformedStream("unary value exceeds cap");
  }
  return len;
}

void BitReader::skip_to_byte() {
  while (pos_ & 7) get();
}

// Elias delta: gamma code of the bit length L of n, then the low L-1 bits of n.
void elias_delta_put(BitWriter& w, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Elias delta codes positive integers only");
  const unsigned len = static_cast<unsigned>(std::bit_width(n));
  const unsigned len_len = static_cast<unsigned>(std::bit_width(len));
  for (unsigned i = 1; i < len_len; ++i) w.put(false);
  w.put_bits(len, len_len);
  w.put_bits(n, len - 1);
}

std::uint64_t elias_delta_get(BitReader& r) {
  unsigned zeros = 0;
  while (!r.get()) {
    if (++zeros > 6) throw MalformedStream("Elias delta prefix too long");
  }
  const std::uint64_t len = (1ULL << zeros) | r.get_bits(zeros);
  if (len > 64) throw MalformedStream("Elias delta length field exceeds 64");
  return (1ULL << (len - 1)) | r.get_bits(static_cast<unsigned>(len - 1));
}

BitStream elias_delta_encode(std::uint64_t n) {
  BitWriter w;
  elias_delta_put(w, n);
  return w.finish();
}

std::uint64_t elias_delta_decode(const BitStream& s) {
  BitReader r(s);
  return elias_delta_get(r);
}

std::uint64_t elias_delta_length(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Elias delta codes positive integers only");
  const std::uint64_t len = std::bit_width(n);
  return len + 2 * (std::bit_width(len) - 1);
}

double Codebook::kraft_sum() const {
  double s = 0;
  for (const auto& [sym, e] : codes) s += std::ldexp(1.0, -static_cast<int>(e.length));
  return s;
}

std::map<std::uint64_t, unsigned> huffman_lengths(const std::map<std::uint64_t, std::uint64_t>& freq) {
  std::map<std::uint64_t, unsigned> out;
  if (freq.empty()) return out;
  if (freq.size() == 1) {
    out[freq.begin()->first] = 1;
    return out;
  }
  // Nodes 0..d-1 are leaves in symbol order; ties in weight go to the older node.
  std::vector<std::uint64_t> syms;
  std::vector<std::size_t> parent;
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& [s, f] : freq) {
    pq.push({f, syms.size()});
    syms.push_back(s);
    parent.push_back(0);
  }
  while (pq.size() > 1) {
    const auto a = pq.top();
    pq.pop();
    const auto b = pq.top();
    pq.pop();
    const std::size_t id = parent.size();
    parent.push_back(id);
    parent[a.second] = id;
    parent[b.second] = id;
    pq.push({a.first + b.first, id});
  }
  std::vector<unsigned> depth(parent.size(), 0);
  for (std::size_t v = parent.size() - 1; v-- > 0;) depth[v] = depth[parent[v]] + 1;
  for (std::size_t i = 0; i < syms.size(); ++i) out[syms[i]] = depth[i];
  return out;
}

Codebook canonical_code(const std::map<std::uint64_t, unsigned>& lengths) {
  std::vector<std::pair<unsigned, std::uint64_t>> order;
  for (const auto& [s, l] : lengths) {
    if (l == 0 || l > 63) throw std::invalid_argument("canonical_code: code length out of range");
    order.push_back({l, s});
  }
  std::sort(order.begin(), order.end());
  Codebook book;
  std::uint64_t code = 0;
  unsigned prev = order.empty() ? 0 : order.front().first;
  for (const auto& [l, s] : order) {
    code <<= (l - prev);
    prev = l;
    book.codes[s] = {l, code};
    ++code;
  }
  return book;
}

void write_dictionary(BitWriter& w, const Codebook& book, std::uint64_t universe) {
  const std::uint64_t start = w.position();
  auto it = book.codes.begin();
  for (std::uint64_t id = 0; id < universe; ++id) {
    const bool present = it != book.codes.end() && it->first == id;
    w.put(present);
    if (present) ++it;
  }
  if (it != book.codes.end()) throw std::invalid_argument("write_dictionary: symbol outside universe");
  w.pad_to_byte();
  for (const auto& [s, e] : book.codes) {
    std::string bytes;
    put_varint(bytes, e.length);
    for (char c : bytes) w.put_bits(static_cast<unsigned char>(c), 8);
  }
  (void)start;
}

Codebook read_dictionary(BitReader& r, std::uint64_t universe) {
  const std::uint64_t start = r.position();
  if (universe > r.remaining()) throw MalformedStream("dictionary bitmap exceeds stream");
  std::vector<std::uint64_t> present;
  for (std::uint64_t id = 0; id < universe; ++id) {
    if (r.get()) present.push_back(id);
  }
  r.skip_to_byte();
  std::map<std::uint64_t, unsigned> lengths;
  for (auto id : present) {
    std::string bytes;
    do {
      bytes.push_back(static_cast<char>(r.get_bits(8)));
    } while ((static_cast<unsigned char>(bytes.back()) & 0x80) && bytes.size() < 10);
    std::size_t pos = 0;
    const std::uint64_t len = get_varint(bytes, pos);
    if (len == 0 || len > 63) throw MalformedStream("dictionary: code length out of range");
    lengths[id] = static_cast<unsigned>(len);
  }
  Codebook book = canonical_code(lengths);
  if (book.kraft_sum() > 1.0 + 1e-12) throw MalformedStream("dictionary: code lengths violate Kraft");
  book.dictionary_bits = r.position() - start;
  return book;
}

namespace {

// Canonical decoding tables.
class CanonicalDecoder {
 public:
  explicit CanonicalDecoder(const Codebook& book) {
    std::vector<std::pair<unsigned, std::uint64_t>> order;
    for (const auto& [s, e] : book.codes) order.push_back({e.length, s});
    std::sort(order.begin(), order.end());
    max_len_ = order.empty() ? 0 : order.back().first;
    first_.assign(max_len_ + 2, 0);
    count_.assign(max_len_ + 2, 0);
    offset_.assign(max_len_ + 2, 0);
    for (const auto& [l, s] : order) {
      ++count_[l];
      symbols_.push_back(s);
    }
    std::uint64_t code = 0;
    std::uint64_t idx = 0;
    for (unsigned l = 1; l <= max_len_; ++l) {
      code <<= 1;
      first_[l] = code;
      offset_[l] = idx;
      code += count_[l];
      idx += count_[l];
    }
  }

  std::uint64_t next(BitReader& r) const {
    std::uint64_t code = 0;
    for (unsigned l = 1; l <= max_len_; ++l) {
      code = (code << 1) | r.get();
      if (code >= first_[l] && code - first_[l] < count_[l]) return symbols_[offset_[l] + code - first_[l]];
    }
    throw MalformedStream("invalid prefix code");
  }

 private:
  unsigned max_len_ = 0;
  std::vector<std::uint64_t> first_, count_, offset_;
  std::vector<std::uint64_t> symbols_;
};

struct HuffmanParts {
  Codebook book;
  std::uint64_t dictionary_bits = 0;
  std::uint64_t payload_bits = 0;
  double ideal_bits = 0;
};

// Builds the code for seq and writes its dictionary.
HuffmanParts write_huffman_dictionary(BitWriter& w, std::span<const std::uint64_t> seq,
                                      std::uint64_t universe) {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (auto x : seq) ++freq[x];
  HuffmanParts p;
  p.book = canonical_code(huffman_lengths(freq));
  const std::uint64_t d0 = w.position();
  write_dictionary(w, p.book, universe);
  p.dictionary_bits = w.position() - d0;
  p.book.dictionary_bits = p.dictionary_bits;
  p.ideal_bits = zero_order_bits(seq);
  return p;
}

void write_huffman_payload(BitWriter& w, HuffmanParts& p, std::span<const std::uint64_t> seq) {
  const std::uint64_t p0 = w.position();
  for (auto x : seq) {
    const auto& e = p.book.codes.at(x);
    w.put_bits(e.code, e.length);
  }
  p.payload_bits = w.position() - p0;
}

HuffmanParts write_huffman(BitWriter& w, std::span<const std::uint64_t> seq, std::uint64_t universe) {
  HuffmanParts p = write_huffman_dictionary(w, seq, universe);
  write_huffman_payload(w, p, seq);
  return p;
}

std::vector<std::uint64_t> read_huffman(BitReader& r, std::uint64_t universe, std::uint64_t count) {
  const Codebook book = read_dictionary(r, universe);
  if (count > 0 && book.codes.empty()) throw MalformedStream("empty dictionary for nonempty sequence");
  const CanonicalDecoder dec(book);
  std::vector<std::uint64_t> out;
  out.reserve(std::min<std::uint64_t>(count, r.remaining()));
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(dec.next(r));
  return out;
}

unsigned fixed_width(std::uint64_t universe) {
  return universe <= 1 ? 0 : static_cast<unsigned>(std::bit_width(universe - 1));
}

std::vector<std::uint64_t> widen(std::span<const Symbol> s) { return {s.begin(), s.end()}; }

void finish_breakdown(SizeBreakdown& s, const FullGrammar& g, double main_term) {
  const auto m = metrics(g);
  s.total_bits = s.payload_bits + s.dictionary_bits + s.lengths_side_bits;
  s.main_term_bits = main_term;
  const double full = static_cast<double>(m.rhs_size_full);
  s.formula_bound_bits = main_term + 10.0 * full + static_cast<double>(g.sigma()) + 8.0;
  s.slack_coefficient = full > 0 ? (static_cast<double>(s.total_bits) - main_term) / full : 0.0;
  s.bound_holds = static_cast<double>(s.total_bits) <= s.formula_bound_bits + 1e-9;
}

EncodedGrammar make_result(const FullGrammar& g, Encoding e) {
  EncodedGrammar out;
  out.encoding = e;
  out.sigma = g.sigma();
  out.n_nonterminals = g.n_nonterminals();
  out.start_length = g.start().size();
  return out;
}

Symbol checked_id(std::uint64_t v, std::uint64_t universe) {
  if (v >= universe) throw MalformedStream("symbol id outside the grammar's universe");
  return static_cast<Symbol>(v);
}

FullGrammar build_checked(std::uint64_t sigma, std::vector<Symbol> start, std::vector<std::vector<Symbol>> rules) {
  try {
    return FullGrammar(sigma, std::move(start), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw MalformedStream(std::string("decoded grammar is invalid: ") + e.what());
  }
}

}  // namespace

HuffmanResult huffman_encode(std::span<const std::uint64_t> seq, std::uint64_t universe) {
  if (seq.empty()) throw std::invalid_argument("huffman_encode: empty input");
  BitWriter w;
  HuffmanParts p = write_huffman(w, seq, universe);
  HuffmanResult r;
  r.stream = w.finish();
  r.codebook = std::move(p.book);
  r.codebook.dictionary_bits = p.dictionary_bits;
  r.size.payload_bits = p.payload_bits;
  r.size.dictionary_bits = p.dictionary_bits;
  r.size.total_bits = p.payload_bits + p.dictionary_bits;
  r.size.main_term_bits = p.ideal_bits;
  r.size.formula_bound_bits = p.ideal_bits + static_cast<double>(seq.size()) + static_cast<double>(p.dictionary_bits);
  r.size.slack_coefficient = (static_cast<double>(r.size.total_bits) - p.ideal_bits) / static_cast<double>(seq.size());
  r.size.bound_holds = static_cast<double>(r.size.total_bits) <= r.size.formula_bound_bits + 1e-9;
  r.size.has_huffman = true;
  r.size.coded_symbols = seq.size();
  r.size.huffman_payload_bits = p.payload_bits;
  r.size.ideal_bits = p.ideal_bits;
  return r;
}

std::vector<std::uint64_t> huffman_decode(const BitStream& s, std::uint64_t universe, std::uint64_t count) {
  BitReader r(s);
  return read_huffman(r, universe, count);
}

std::string encoding_name(Encoding e) {
  switch (e) {
    case Encoding::FullyNaive: return "fully-naive";
    case Encoding::Naive: return "naive";
    case Encoding::Entropy: return "entropy";
    case Encoding::Incremental: return "incremental";
  }
  return "?";
}

Encoding parse_encoding(std::string_view name) {
  for (Encoding e : kAllEncodings) {
    if (encoding_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

EncodedGrammar encode_fully_naive(const FullGrammar& g) {
  EncodedGrammar out = make_result(g, Encoding::FullyNaive);
  const std::uint64_t u = g.universe();
  const unsigned width = fixed_width(u);
  BitWriter w;
  for (const auto& r : g.rules()) w.put_unary(r.size());
  out.size.lengths_side_bits = w.position();
  for (Symbol x : g.start()) w.put_bits(x, width);
  for (const auto& r : g.rules()) {
    for (Symbol x : r) w.put_bits(x, width);
  }
  out.size.payload_bits = w.position() - out.size.lengths_side_bits;
  out.stream = w.finish();
  finish_breakdown(out.size, g, static_cast<double>(metrics(g).rhs_size_full) * std::log2(static_cast<double>(u)));
  return out;
}

EncodedGrammar encode_naive(const FullGrammar& g) {
  EncodedGrammar out = make_result(g, Encoding::Naive);
  const std::uint64_t u = g.universe();
  const unsigned width = fixed_width(u);
  BitWriter w;
  const auto start = widen(g.start());
  const HuffmanParts h = write_huffman(w, start, u);
  const std::uint64_t l0 = w.position();
  for (const auto& r : g.rules()) w.put_unary(r.size());
  out.size.lengths_side_bits = w.position() - l0;
  const std::uint64_t p0 = w.position();
  for (const auto& r : g.rules()) {
    for (Symbol x : r) w.put_bits(x, width);
  }
  out.size.payload_bits = h.payload_bits + (w.position() - p0);
  out.size.dictionary_bits = h.dictionary_bits;
  out.stream = w.finish();
  out.size.has_huffman = true;
  out.size.coded_symbols = start.size();
  out.size.huffman_payload_bits = h.payload_bits;
  out.size.ideal_bits = h.ideal_bits;
  finish_breakdown(out.size, g,
                   h.ideal_bits + static_cast<double>(metrics(g).rhs_size_grammar) * std::log2(static_cast<double>(u)));
  return out;
}

EncodedGrammar encode_entropy(const FullGrammar& g) {
  EncodedGrammar out = make_result(g, Encoding::Entropy);
  const std::uint64_t u = g.universe();
  BitWriter w;
  const auto sg = widen(concatenated_rhs(g));
  HuffmanParts h = write_huffman_dictionary(w, sg, u);
  const std::uint64_t l0 = w.position();
  for (const auto& r : g.rules()) w.put_unary(r.size());
  out.size.lengths_side_bits = w.position() - l0;
  write_huffman_payload(w, h, sg);
  out.size.payload_bits = h.payload_bits;
  out.size.dictionary_bits = h.dictionary_bits;
  out.stream = w.finish();
  out.size.has_huffman = true;
  out.size.coded_symbols = sg.size();
  out.size.huffman_payload_bits = h.payload_bits;
  out.size.ideal_bits = h.ideal_bits;
  finish_breakdown(out.size, g, h.ideal_bits);
  return out;
}

FullGrammar incremental_order(const FullGrammar& g) {
  const std::uint64_t sigma = g.sigma();
  const std::size_t count = g.n_nonterminals();
  for (const auto& r : g.rules()) {
    if (r.size() != 2) throw std::invalid_argument("incremental encoding requires a CNF grammar");
  }
  // Rules waiting on each nonterminal as their first component.
  std::vector<std::vector<std::size_t>> waiting(count);
  using Item = std::tuple<std::uint64_t, std::size_t>;  // (new id of first component, old rule index)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t i = 0; i < count; ++i) {
    const Symbol first = g.rules()[i][0];
    if (first < sigma) {
      ready.push({first, i});
    } else {
      waiting[first - sigma].push_back(i);
    }
  }
  std::vector<Symbol> new_id(count, 0);
  std::vector<std::size_t> order;
  order.reserve(count);
  while (!ready.empty()) {
    const auto [key, i] = ready.top();
    ready.pop();
    const auto id = static_cast<Symbol>(sigma + order.size());
    new_id[i] = id;
    order.push_back(i);
    for (std::size_t j : waiting[i]) ready.push({id, j});
  }
  if (order.size() != count) throw std::logic_error("incremental_order: unreachable rules");
  auto rename = [&](Symbol x) { return x < sigma ? x : new_id[x - sigma]; };
  std::vector<std::vector<Symbol>> rules(count);
  for (std::size_t r = 0; r < count; ++r) {
    const auto& old = g.rules()[order[r]];
    rules[r] = {rename(old[0]), rename(old[1])};
  }
  std::vector<Symbol> start(g.start().size());
  std::transform(g.start().begin(), g.start().end(), start.begin(), rename);
  return FullGrammar(sigma, std::move(start), std::move(rules));
}

EncodedGrammar encode_incremental(const FullGrammar& g) {
  const FullGrammar h = incremental_order(g);
  EncodedGrammar out = make_result(h, Encoding::Incremental);
  const std::uint64_t u = h.universe();
  const unsigned width = fixed_width(u);
  BitWriter w;
  const auto start = widen(h.start());
  // Dictionary first, then the rules, then the starting string payload.
  HuffmanParts hp = write_huffman_dictionary(w, start, u);
  out.size.dictionary_bits = hp.dictionary_bits;
  const std::uint64_t r0 = w.position();
  std::uint64_t prev = 0;
  for (const auto& r : h.rules()) {
    elias_delta_put(w, r[0] - prev + 1);
    prev = r[0];
  }
  for (const auto& r : h.rules()) w.put_bits(r[1], width);
  const std::uint64_t rule_bits = w.position() - r0;
  write_huffman_payload(w, hp, start);
  const std::uint64_t start_bits = hp.payload_bits;
  out.size.payload_bits = rule_bits + start_bits;
  out.stream = w.finish();
  out.size.has_huffman = true;
  out.size.coded_symbols = start.size();
  out.size.huffman_payload_bits = start_bits;
  out.size.ideal_bits = hp.ideal_bits;
  finish_breakdown(out.size, h,
                   out.size.ideal_bits +
                       static_cast<double>(h.n_nonterminals()) * std::log2(static_cast<double>(u)));
  return out;
}

EncodedGrammar encode(const FullGrammar& g, Encoding e) {
  switch (e) {
    case Encoding::FullyNaive: return encode_fully_naive(g);
    case Encoding::Naive: return encode_naive(g);
    case Encoding::Entropy: return encode_entropy(g);
    case Encoding::Incremental: return encode_incremental(g);
  }
  throw std::invalid_argument("encode: unknown encoding");
}

FullGrammar decode(const EncodedGrammar& enc) {
  const std::uint64_t sigma = enc.sigma;
  const std::uint64_t count = enc.n_nonterminals;
  const std::uint64_t u = sigma + count;
  if (sigma == 0) throw MalformedStream("sigma must be positive");
  if (u >= 0xffffffffULL || count > enc.stream.length_bits + 1 || enc.start_length > enc.stream.length_bits + 1) {
    throw MalformedStream("metadata inconsistent with stream size");
  }
  const unsigned width = fixed_width(u);
  BitReader r(enc.stream);
  std::vector<Symbol> start;
  std::vector<std::vector<Symbol>> rules(count);
  auto read_fixed = [&](std::uint64_t len) {
    std::vector<Symbol> seq(len);
    for (auto& x : seq) x = checked_id(r.get_bits(width), u);
    return seq;
  };
  auto to_symbols = [&](const std::vector<std::uint64_t>& v) {
    std::vector<Symbol> seq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) seq[i] = checked_id(v[i], u);
    return seq;
  };
  switch (enc.encoding) {
    case Encoding::FullyNaive: {
      std::vector<std::uint64_t> len(count);
      for (auto& l : len) l = r.get_unary(kMaxUnary);
      start = read_fixed(enc.start_length);
      for (std::uint64_t i = 0; i < count; ++i) rules[i] = read_fixed(len[i]);
      break;
    }
    case Encoding::Naive: {
      start = to_symbols(read_huffman(r, u, enc.start_length));
      std::vector<std::uint64_t> len(count);
      for (auto& l : len) l = r.get_unary(kMaxUnary);
      for (std::uint64_t i = 0; i < count; ++i) rules[i] = read_fixed(len[i]);
      break;
    }
    case Encoding::Entropy: {
      const Codebook book = read_dictionary(r, u);
      std::vector<std::uint64_t> len(count);
      std::uint64_t total = enc.start_length;
      for (auto& l : len) {
        l = r.get_unary(kMaxUnary);
        total += l;
      }
      if (total > 0 && book.codes.empty()) throw MalformedStream("empty dictionary");
      const CanonicalDecoder dec(book);
      start.resize(enc.start_length);
      for (auto& x : start) x = checked_id(dec.next(r), u);
      for (std::uint64_t i = 0; i < count; ++i) {
        rules[i].resize(len[i]);
        for (auto& x : rules[i]) x = checked_id(dec.next(r), u);
      }
      break;
    }
    case Encoding::Incremental: {
      const Codebook book = read_dictionary(r, u);
      std::vector<Symbol> first(count);
      std::uint64_t prev = 0;
      for (auto& f : first) {
        const std::uint64_t d = elias_delta_get(r);
        prev = prev + d - 1;
        f = checked_id(prev, u);
      }
      for (std::uint64_t i = 0; i < count; ++i) rules[i] = {first[i], checked_id(r.get_bits(width), u)};
      if (enc.start_length > 0 && book.codes.empty()) throw MalformedStream("empty dictionary");
      const CanonicalDecoder dec(book);
      start.resize(enc.start_length);
      for (auto& x : start) x = checked_id(dec.next(r), u);
      break;
    }
  }
  return build_checked(sigma, std::move(start), std::move(rules));
}

std::string to_container(const EncodedGrammar& enc) {
  std::string out = "GCB1";
  out.push_back(static_cast<char>(enc.encoding));
  put_varint(out, enc.sigma);
  put_varint(out, enc.n_nonterminals);
  put_varint(out, enc.start_length);
  out.append(reinterpret_cast<const char*>(enc.stream.bytes.data()), enc.stream.bytes.size());
  return out;
}

EncodedGrammar from_container(std::string_view bytes) {
  if (bytes.size() < 5 || bytes.substr(0, 4) != "GCB1") throw MalformedStream("container: bad magic");
  EncodedGrammar enc;
  const auto tag = static_cast<std::uint8_t>(bytes[4]);
  if (tag > 3) throw MalformedStream("container: unknown encoding tag");
  enc.encoding = static_cast<Encoding>(tag);
  std::size_t pos = 5;
  enc.sigma = get_varint(bytes, pos);
  enc.n_nonterminals = get_varint(bytes, pos);
  enc.start_length = get_varint(bytes, pos);
  enc.stream.bytes.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  enc.stream.length_bits = enc.stream.bytes.size() * 8;
  return enc;
}

}  // namespace gcl
