#include <doctest.h>

#include <cmath>
#include <random>

#include "gcl/coders.hpp"
#include "gcl/greedy.hpp"
#include "gcl/lab.hpp"
#include "gcl/repair.hpp"
#include "oracles.hpp"
#include "random_grammar.hpp"

using namespace gcl;

TEST_CASE("bit writer and reader") {
  BitWriter w;
  w.put_bits(0b101, 3);
  w.put_unary(4);
  w.pad_to_byte();
  w.put(true);
  const BitStream s = w.finish();
  CHECK(s.to_string() == "1011110" "0" "1");
  BitReader r(s);
  CHECK(r.get_bits(3) == 0b101);
  CHECK(r.get_unary(10) == 4);
  r.skip_to_byte();
  CHECK(r.get());
  CHECK_THROWS_AS(r.get(), MalformedStream);
  BitReader r2(s);
  r2.get_bits(3);
  CHECK_THROWS_AS(r2.get_unary(2), MalformedStream);
}

TEST_CASE("Elias delta codes") {
  CHECK(elias_delta_encode(1).to_string() == "1");
  CHECK(elias_delta_encode(2).to_string() == "0100");
  CHECK(elias_delta_encode(17).to_string() == "001010001");
  CHECK_THROWS(elias_delta_encode(0));
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const BitStream s = elias_delta_encode(n);
    REQUIRE(s.to_string() == oracle::elias_delta(n));
    REQUIRE(elias_delta_length(n) == s.length_bits);
    REQUIRE(elias_delta_decode(s) == n);
  }
  const std::uint64_t big = (1ULL << 40) + 12345;
  CHECK(elias_delta_decode(elias_delta_encode(big)) == big);
}

TEST_CASE("Huffman examples") {
  const std::vector<std::uint64_t> aaaa{0, 0, 0, 0};
  CHECK(huffman_encode(aaaa, 1).size.huffman_payload_bits == 4);
  const std::vector<std::uint64_t> aabc{0, 0, 1, 2};
  const auto h = huffman_encode(aabc, 3);
  CHECK(h.size.huffman_payload_bits == 6);
  CHECK(huffman_decode(h.stream, 3, 4) == aabc);
  CHECK(h.codebook.kraft_sum() <= 1.0);
  CHECK_THROWS(huffman_encode(std::vector<std::uint64_t>{}, 3));
}

TEST_CASE("Huffman is optimal and sandwiched by the entropy") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    std::vector<std::uint64_t> seq;
    std::vector<std::uint64_t> freq;
    for (std::size_t s = 0; s < k; ++s) {
      freq.push_back(1 + rng() % 20);
      seq.insert(seq.end(), freq.back(), s * 3);  // sparse ids
    }
    std::shuffle(seq.begin(), seq.end(), rng);
    const auto h = huffman_encode(seq, 3 * k);
    REQUIRE(h.size.huffman_payload_bits == oracle::optimal_prefix_cost(freq));
    const double ideal = oracle::h0_bits(seq);
    CHECK(h.size.ideal_bits == doctest::Approx(ideal));
    CHECK(ideal <= double(h.size.huffman_payload_bits) + 1e-9);
    CHECK(double(h.size.huffman_payload_bits) <= ideal + double(seq.size()) + 1e-9);
    CHECK(huffman_decode(h.stream, 3 * k, seq.size()) == seq);
    // Canonical order: codes increase with (length, symbol).
    std::vector<std::pair<unsigned, std::uint64_t>> order;
    for (auto [s, e] : h.codebook.codes) order.push_back({e.length, s});
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i) {
      const auto& p = h.codebook.codes.at(order[i - 1].second);
      const auto& q = h.codebook.codes.at(order[i].second);
      CHECK((p.code << (q.length - p.length)) < q.code);
    }
  }
}

TEST_CASE("fully naive layout on the two-rule example") {
  // S' = XX, X -> ab over sigma 2: ids fit in 2 bits.
  const FullGrammar g(2, {2, 2}, {{0, 1}});
  const auto e = encode_fully_naive(g);
  CHECK(e.size.payload_bits == 8);
  CHECK(e.size.total_bits == e.size.payload_bits + e.size.dictionary_bits + e.size.lengths_side_bits);
  CHECK(decode(e) == g);
  const Text t = Text::from_letters("abcab");
  CHECK(encode_fully_naive(FullGrammar::trivial(t)).size.payload_bits == 5 * 2);
}

TEST_CASE("naive, entropy and incremental layouts on small grammars") {
  const FullGrammar g(2, {2, 2}, {{0, 1}});
  const auto naive = encode_naive(g);
  CHECK(naive.size.has_huffman);
  CHECK(naive.size.huffman_payload_bits == 2);  // degenerate one-symbol code
  CHECK(decode(naive) == g);
  const auto inc = encode_incremental(g);
  CHECK(inc.size.huffman_payload_bits == 2);
  // delta(0 + 1) is one bit, the second component two bits.
  CHECK(inc.size.payload_bits >= 1 + 2 + 2);
  CHECK(decode(inc) == g);
  const Text t = Text::from_letters("abcabd");
  const auto flat = encode_entropy(FullGrammar::trivial(t));
  const std::vector<std::uint64_t> seq(t.symbols().begin(), t.symbols().end());
  CHECK(flat.size.huffman_payload_bits == huffman_encode(seq, t.sigma()).size.huffman_payload_bits);
  CHECK_THROWS(encode_incremental(FullGrammar(3, {3, 3}, {{0, 1, 2}})));
}

TEST_CASE("incremental renaming orders first components") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const FullGrammar g = testgen::random_grammar(rng, true);
    const FullGrammar r = incremental_order(g);
    for (std::size_t i = 1; i < r.rules().size(); ++i) CHECK(r.rules()[i - 1][0] <= r.rules()[i][0]);
    CHECK(expand_start(r) == expand_start(g));
    CHECK(incremental_order(r) == r);
  }
}

TEST_CASE("all encodings round-trip random grammars and meet their bounds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const bool cnf = trial % 2 == 0;
    const FullGrammar g = testgen::random_grammar(rng, cnf);
    for (Encoding e : kAllEncodings) {
      if (e == Encoding::Incremental && !cnf) continue;
      const EncodedGrammar enc = encode(g, e);
      const FullGrammar back = decode(enc);
      if (e == Encoding::Incremental) {
        REQUIRE(back == incremental_order(g));
      } else {
        REQUIRE(back == g);
      }
      CHECK(enc.size.bound_holds);
      CHECK(enc.size.total_bits == enc.stream.length_bits);
      const EncodedGrammar again = from_container(to_container(enc));
      // The container pads to a whole byte.
      CHECK(again.stream.bytes == enc.stream.bytes);
      CHECK(again.stream.length_bits - enc.stream.length_bits < 8);
      CHECK(decode(again) == back);
    }
  }
}

TEST_CASE("compressor outputs round-trip through every encoding") {
  const Text t = random_markov(4000, 16, 5);
  const auto rp = repair_run(t).grammar;
  const auto gr = greedy_run(random_markov(1500, 4, 6)).grammar;
  for (Encoding e : kAllEncodings) {
    CHECK(expand_start(decode(encode(rp, e))) == t);
    if (e != Encoding::Incremental || metrics(gr).is_cnf) {
      CHECK(expand_start(decode(encode(gr, e))) == expand_start(gr));
    }
  }
}

TEST_CASE("malformed streams are rejected") {
  const FullGrammar g = repair_run(random_markov(300, 4, 1)).grammar;
  for (Encoding e : kAllEncodings) {
    EncodedGrammar enc = encode(g, e);
    enc.stream.length_bits /= 2;
    CHECK_THROWS_AS(decode(enc), MalformedStream);
  }
  const std::string c = to_container(encode(g, Encoding::Entropy));
  CHECK_THROWS_AS(from_container(c.substr(0, 6)), MalformedStream);
  CHECK_THROWS_AS(from_container("GCB2" + c.substr(4)), MalformedStream);
  CHECK(parse_encoding("naive") == Encoding::Naive);
  CHECK_THROWS(parse_encoding("zip"));
}
