#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcl/grammar.hpp"
#include "gcl/varint.hpp"

namespace gcl {

// Exact bit sequence, most significant bit first within each byte.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t length_bits = 0;

  std::string to_string() const;  // "0100..."
  friend bool operator==(const BitStream&, const BitStream&) = default;
};

class BitWriter {
 public:
  void put(bool bit);
  void put_bits(std::uint64_t value, unsigned width);  // high bit first
  void put_unary(std::uint64_t len);                   // len-1 ones, then a zero
  void pad_to_byte();
  std::uint64_t position() const { return out_.length_bits; }
  BitStream finish() { return std::move(out_); }
  void append(const BitStream& other);

 private:
  BitStream out_;
};

class BitReader {
 public:
  explicit BitReader(const BitStream& in) : in_(in) {}
  bool get();
  std::uint64_t get_bits(unsigned width);
  std::uint64_t get_unary(std::uint64_t cap);
  void skip_to_byte();
  std::uint64_t position() const { return pos_; }
  std::uint64_t remaining() const { return in_.length_bits - pos_; }

 private:
  const BitStream& in_;
  std::uint64_t pos_ = 0;
};

// Elias delta code of n >= 1.
BitStream elias_delta_encode(std::uint64_t n);
void elias_delta_put(BitWriter& w, std::uint64_t n);
std::uint64_t elias_delta_get(BitReader& r);
std::uint64_t elias_delta_decode(const BitStream& s);
std::uint64_t elias_delta_length(std::uint64_t n);

// Canonical prefix code: codes assigned in (length, symbol) order.
struct Codebook {
  struct Entry {
    unsigned length = 0;
    std::uint64_t code = 0;
  };
  std::map<std::uint64_t, Entry> codes;
  std::uint64_t dictionary_bits = 0;

  double kraft_sum() const;
};

// Deterministic Huffman code lengths (a lone symbol gets length 1).
std::map<std::uint64_t, unsigned> huffman_lengths(const std::map<std::uint64_t, std::uint64_t>& freq);
Codebook canonical_code(const std::map<std::uint64_t, unsigned>& lengths);

// Dictionary layout: a presence bitmap over ids 0..universe-1, zero padding to
// the next byte boundary, then one LEB128 byte group per present id holding
// its code length. Written at the writer's current position.
void write_dictionary(BitWriter& w, const Codebook& book, std::uint64_t universe);
Codebook read_dictionary(BitReader& r, std::uint64_t universe);

struct SizeBreakdown {
  std::uint64_t payload_bits = 0;
  std::uint64_t dictionary_bits = 0;
  std::uint64_t lengths_side_bits = 0;
  std::uint64_t total_bits = 0;
  // Leading term of the size bound for this encoding, and that term plus the
  // instantiated linear slack (10 ||S',G|| + sigma + 8 bits).
  double main_term_bits = 0;
  double formula_bound_bits = 0;
  // (total - main) / ||S',G||: the measured linear-term constant.
  double slack_coefficient = 0;
  bool bound_holds = false;
  // Entropy-coded component, if any: its length, payload and |Y| H_0(Y).
  bool has_huffman = false;
  std::uint64_t coded_symbols = 0;
  std::uint64_t huffman_payload_bits = 0;
  double ideal_bits = 0;
};

struct HuffmanResult {
  BitStream stream;  // dictionary followed by the payload
  Codebook codebook;
  SizeBreakdown size;
};
HuffmanResult huffman_encode(std::span<const std::uint64_t> seq, std::uint64_t universe);
std::vector<std::uint64_t> huffman_decode(const BitStream& s, std::uint64_t universe, std::uint64_t count);

enum class Encoding : std::uint8_t { FullyNaive = 0, Naive = 1, Entropy = 2, Incremental = 3 };
std::string encoding_name(Encoding e);
Encoding parse_encoding(std::string_view name);
inline constexpr Encoding kAllEncodings[] = {Encoding::FullyNaive, Encoding::Naive, Encoding::Entropy,
                                              Encoding::Incremental};

struct EncodedGrammar {
  Encoding encoding = Encoding::FullyNaive;
  std::uint64_t sigma = 0;
  std::uint64_t n_nonterminals = 0;
  std::uint64_t start_length = 0;
  BitStream stream;
  SizeBreakdown size;
};

EncodedGrammar encode_fully_naive(const FullGrammar& g);
EncodedGrammar encode_naive(const FullGrammar& g);
EncodedGrammar encode_entropy(const FullGrammar& g);
// Requires every rule to have exactly two symbols.
EncodedGrammar encode_incremental(const FullGrammar& g);
EncodedGrammar encode(const FullGrammar& g, Encoding e);

// Throws MalformedStream on truncated or inconsistent input. The incremental
// format returns the renamed grammar (see incremental_order).
FullGrammar decode(const EncodedGrammar& enc);

// Renames nonterminals of a CNF grammar so that the first components of the
// rules, read in rule order, are non-decreasing.
FullGrammar incremental_order(const FullGrammar& g);

// "GCB1", tag byte, varints sigma, |G|, |S'|, then the bit payload padded
// with zeros to a whole byte.
std::string to_container(const EncodedGrammar& enc);
EncodedGrammar from_container(std::string_view bytes);

}  // namespace gcl
