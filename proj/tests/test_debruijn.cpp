#include <doctest.h>

#include <set>

#include <json.hpp>

#include "gcl/debruijn.hpp"
#include "gcl/entropy.hpp"
#include "gcl/greedy.hpp"
#include "gcl/lab.hpp"
#include "gcl/repair.hpp"
#include "oracles.hpp"

using namespace gcl;

namespace {

// Every window of length m occurs exactly once cyclically.
bool all_windows_once(const Text& t, std::uint64_t q, std::size_t m) {
  std::set<std::vector<Symbol>> seen;
  const auto w = oracle::word(t);
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<Symbol> x;
    for (std::size_t j = 0; j < m; ++j) x.push_back(w[(i + j) % w.size()]);
    if (!seen.insert(x).second) return false;
  }
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < m; ++j) total *= q;
  return seen.size() == total;
}

}  // namespace

TEST_CASE("base de Bruijn sequences") {
  const Text b22 = base_debruijn(2, 2);
  CHECK(b22.to_vector() == std::vector<Symbol>{0, 0, 1, 1});
  const Text b23 = base_debruijn(2, 3);
  CHECK(b23.size() == 8);
  CHECK(b23[0] == 0);
  CHECK(b23[1] == 0);
  CHECK(b23[2] == 0);
  CHECK(all_windows_once(b23, 2, 3));
  const Text b45 = base_debruijn(4, 5);
  CHECK(b45.size() == 1024);
  CHECK(all_windows_once(b45, 4, 5));
  CHECK_THROWS(base_debruijn(1, 3));
}

TEST_CASE("paired word for k=2, p=1") {
  const Text s0 = build_s0(2, 1);
  CHECK(s0.size() == 32);
  CHECK(s0.sigma() == 4);
  // Fixed reference word for these parameters.
  CHECK(s0.to_letters() == "aababcbbadccdbddaacadaccbdbbcddc");
  for (Symbol c = 0; c < 4; ++c) CHECK(oracle::count(oracle::word(s0), {c}, true) == 8);
  CHECK(all_windows_once(Text(s0.to_vector(), 4), 4, 3) == false);  // only 32 of the 64 words
  const auto cert = verify_gdb(s0, {2, 0, 1});
  CHECK(cert.db3);
  CHECK(cert.passes(4.0));
}

TEST_CASE("generated words") {
  const Text w = generalized_word({1, 1, 1});
  CHECK(w.size() == 16);
  CHECK(w.to_letters() == "abbbdabdcacdcdac");
  const auto prof = entropy_profile(w, 2, true);
  CHECK(prof.per_order[0].bits_per_symbol == doctest::Approx(2.0));
  CHECK(prof.per_order[1].bits_per_symbol == doctest::Approx(1.0));
  CHECK(prof.per_order[2].bits_per_symbol == doctest::Approx(1.0));
  CHECK(generalized_word({2, 0, 1}) == build_s0(2, 1));
  CHECK(generalized_word({1, 2, 1}).size() == 32);
  CHECK(verify_gdb(generalized_word({1, 2, 1}), {1, 2, 1}).passes(4.0));
  CHECK_THROWS(generalized_word({0, 0, 1}));
  CHECK_THROWS(generalized_word({8, 0, 2}));  // 2^34 symbols
}

TEST_CASE("certificate on the fixed example words") {
  const auto c32 = verify_gdb(Text::from_letters("aababcbbadccdbddaacadaccbdbbcddc"), {2, 0, 1});
  CHECK(c32.passes(4.0));
  CHECK(c32.entropy[0].cyclic == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c32.entropy[1].cyclic == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c32.entropy[2].cyclic == doctest::Approx(1.0).epsilon(1e-12));
  const auto c16 = verify_gdb(Text::from_letters("abbbdacdcacabdcd"), {1, 1, 1});
  CHECK(c16.passes(4.0));
  CHECK_THROWS(verify_gdb(Text::from_letters("abcd"), {1, 1, 1}));
}

TEST_CASE("random words fail the certificate") {
  const Text r = random_uniform(1024, 16, 4);
  const auto c = verify_gdb(r, {2, 0, 2});
  CHECK_FALSE(c.db3);
  CHECK_FALSE(c.counts_ok());
}

TEST_CASE("generated words pass their certificate on a small grid") {
  for (int p = 1; p <= 2; ++p) {
    for (int k = 1; k <= 3; ++k) {
      for (int l = 0; l <= 3; ++l) {
        const GdBParams gp{k, l, p};
        if (gp.length_exponent() > 16) continue;
        const Text w = generalized_word(gp);
        CAPTURE(gp.describe());
        CHECK(w.size() == gp.length());
        const auto c = verify_gdb(w, gp);
        CHECK(c.counts_ok());
        CHECK(c.passes(4.0));
        for (const auto& lv : c.levels) {
          std::uint64_t total = 0;
          for (auto [cnt, words] : lv.count_histogram) total += cnt * words;
          CHECK(total == w.size());
        }
        // Cyclic entropy does not increase with the order on these words.
        const auto prof = entropy_profile(w, k + l, true);
        for (std::size_t i = 1; i < prof.per_order.size(); ++i) {
          CHECK(prof.per_order[i].bits_per_symbol <= prof.per_order[i - 1].bits_per_symbol + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("lower bound for natural parsings of generated words") {
  const GdBParams gp{2, 1, 1};
  const Text w = generalized_word(gp);
  CHECK(lower_bound_check(w, lz78_parse(w), gp).all_pass());
  const auto rp = start_parsing(repair_run(w).grammar);
  const auto rep = lower_bound_check(w, rp, gp);
  CHECK(rep.all_pass());
  CHECK(rp.max_phrase_length() <= 4);
  const auto single = lower_bound_check(w, Parsing::single_letters(w), gp);
  CHECK(single.find("debruijn_lower_bound")->pass);
  CHECK(single.find("debruijn_lower_bound")->rhs_bits == doctest::Approx(w.size() * 2.0));
  const auto whole = lower_bound_check(w, Parsing(w, {0, w.size()}), gp);
  CHECK_FALSE(whole.find("debruijn_phrase_length")->pass);
  CHECK_FALSE(whole.find("debruijn_natural_parsing")->pass);
}

TEST_CASE("certificate JSON") {
  const auto j = nlohmann::json::parse(certificate_json(verify_gdb(generalized_word({1, 1, 1}), {1, 1, 1})));
  CHECK(j["dB1"] == true);
  CHECK(j["levels"].size() == 3);
  CHECK(j["length"] == 16);
}
