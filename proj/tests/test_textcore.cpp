#include <doctest.h>

#include <cmath>

#include "gcl/entropy.hpp"
#include "gcl/lab.hpp"
#include "gcl/substring_index.hpp"
#include "gcl/text.hpp"
#include "oracles.hpp"

using namespace gcl;

namespace {
std::vector<Symbol> letters(const char* s) { return Text::from_letters(s).to_vector(); }
}  // namespace

TEST_CASE("text rejects symbols outside the alphabet") {
  CHECK_THROWS_AS(Text({0, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Text({}, 0), std::invalid_argument);
  CHECK(Text({}, 1).empty());
}

TEST_CASE("token format round-trips and bytes map to sigma 256") {
  const Text t({3, 0, 7, 7, 1}, 9);
  CHECK(parse_token_text(format_token_text(t)) == t);
  CHECK_THROWS(parse_token_text("3 4 5"));
  const Text b = Text::from_bytes("ab");
  CHECK(b.sigma() == 256);
  CHECK(b[1] == 'b');
  const Text c = compact_alphabet(b);
  CHECK(c.sigma() == 2);
  CHECK(c.to_letters() == "ab");
}

TEST_CASE("occurrence counts on the small examples") {
  CHECK(count_occurrences(Text::from_letters("aaaa"), letters("aa"), false) == 3);
  CHECK(count_occurrences(Text::from_letters("abab"), {}, false) == 4);
  CHECK(count_occurrences(Text::from_letters("abab"), letters("ba"), true) == 2);
  CHECK(count_occurrences(Text::from_letters("abab"), letters("ba"), false) == 1);
  CHECK(count_occurrences(Text::from_letters("ab"), letters("abc"), false) == 0);
  CHECK_THROWS(count_occurrences(Text::from_letters("ab"), letters("aba"), true));
}

TEST_CASE("substring index agrees with brute-force counting") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::uint64_t sigma = 2 + seed % 3;
    const Text t = random_uniform(30 + seed * 3, sigma, seed);
    const auto w = oracle::word(t);
    SubstringIndex idx(t, true);
    const Text probes = random_uniform(200, sigma, seed + 100);
    for (std::size_t i = 0; i + 6 < probes.size(); i += 3) {
      for (std::size_t m = 0; m <= 5; ++m) {
        std::vector<Symbol> p(probes.symbols().begin() + i, probes.symbols().begin() + i + m);
        const auto lin = idx.count(p);
        const auto cyc = idx.count_cyclic(p);
        REQUIRE(lin == oracle::count(w, p, false));
        REQUIRE(cyc == oracle::count(w, p, true));
        CHECK(lin <= cyc);
        CHECK(cyc <= lin + (m ? m - 1 : 0));
        CHECK(count_occurrences_naive(t, p, true) == cyc);
      }
    }
  }
}

TEST_CASE("entropy of the small examples") {
  CHECK(empirical_entropy(Text::from_letters("aaaa"), 0, false).total_bits == 0);
  const auto e = empirical_entropy(Text::from_letters("abab"), 1, false);
  CHECK(e.total_bits == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.bits_per_symbol == doctest::Approx(0.25).epsilon(1e-12));
  const Text w = Text::from_letters("aababcbbadccdbddaacadaccbdbbcddc");
  CHECK(empirical_entropy(w, 2, true).bits_per_symbol == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(empirical_entropy(w, -1, false));
  CHECK_THROWS(empirical_entropy(Text::from_letters("ab"), 2, true));
}

TEST_CASE("entropy profile and means") {
  const auto flat = entropy_profile(Text::from_letters("aaaa"), 2, true);
  for (const auto& o : flat.per_order) CHECK(o.total_bits == 0);
  // Linear counts include the final, unfollowed occurrence of each context.
  const auto lin = entropy_profile(Text::from_letters("aaaa"), 2, false);
  CHECK(lin.per_order[0].total_bits == 0);
  CHECK(lin.per_order[1].total_bits == doctest::Approx(3 * std::log2(4.0 / 3)).epsilon(1e-12));
  CHECK(lin.per_order[2].total_bits == doctest::Approx(2 * std::log2(3.0 / 2)).epsilon(1e-12));
  const auto p = entropy_profile(Text::from_letters("abab"), 1, false);
  CHECK(p.mean_up_to.at(2) == doctest::Approx((1.0 + 0.25) / 2));
  const auto c = entropy_profile(Text::from_letters("abbbdacdcacabdcd"), 2, true);
  CHECK(std::fabs(c.per_order[0].bits_per_symbol - 2.0) < 1e-9);
  CHECK(std::fabs(c.per_order[1].bits_per_symbol - 1.0) < 1e-9);
  CHECK(std::fabs(c.per_order[2].bits_per_symbol - 1.0) < 1e-9);
}

TEST_CASE("entropy matches the definition on random texts") {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::uint64_t sigma = 1 + seed % 5;
    const Text t = seed % 2 ? random_uniform(5 + seed * 4, sigma, seed) : random_markov(5 + seed * 4, sigma, seed);
    const auto w = oracle::word(t);
    for (int k = 0; k <= 5; ++k) {
      const auto lin = empirical_entropy(t, k, false);
      CHECK(lin.total_bits == doctest::Approx(oracle::entropy_bits(w, k, false)).epsilon(1e-9));
      CHECK(lin.bits_per_symbol >= 0);
      if (static_cast<std::size_t>(k) < t.size()) {
        CHECK(empirical_entropy(t, k, true).bits_per_symbol <= std::log2(double(sigma)) + 1e-9);
        CHECK(empirical_entropy(t, k, true).total_bits ==
              doctest::Approx(oracle::entropy_bits(w, k, true)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("window classes identify equal windows") {
  const Text t = random_uniform(60, 3, 9);
  const auto w = oracle::word(t);
  for (bool cyclic : {false, true}) {
    for (std::size_t len = 0; len <= 6; ++len) {
      const auto cls = window_classes(t, len, cyclic);
      CHECK(cls.size() == (cyclic ? t.size() : t.size() - len + 1));
      for (std::size_t i = 0; i < cls.size(); i += 5) {
        for (std::size_t j = 0; j < cls.size(); ++j) {
          bool same = true;
          for (std::size_t q = 0; q < len; ++q) same = same && w[(i + q) % w.size()] == w[(j + q) % w.size()];
          REQUIRE((cls[i] == cls[j]) == same);
        }
      }
    }
  }
}

TEST_CASE("zero-order bits of id sequences") {
  const std::vector<std::uint64_t> ids{5, 5, 9, 1};
  CHECK(zero_order_bits(std::span<const std::uint64_t>(ids)) == doctest::Approx(oracle::h0_bits(ids)));
  CHECK(zero_order_bits(std::span<const std::uint64_t>()) == 0);
}
