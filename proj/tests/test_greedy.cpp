#include <doctest.h>

#include "gcl/greedy.hpp"
#include "gcl/lab.hpp"
#include "oracles.hpp"

using namespace gcl;

namespace {
GreedyPolicy positive_only() {
  GreedyPolicy p;
  p.finish_zero_gain = false;
  return p;
}
}  // namespace

TEST_CASE("Greedy gain examples") {
  // ab occurs twice: gain (2-1)(2-1)-1 = 0.
  const auto abab = greedy_run(Text::from_letters("abab"), positive_only());
  CHECK(abab.trace.steps.empty());
  CHECK(abab.grammar.start().size() == 4);
  // Zero-gain rounds are run by default so no digram repeats.
  const auto abab_full = greedy_run(Text::from_letters("abab"));
  CHECK(abab_full.grammar.start() == std::vector<Symbol>{2, 2});
  CHECK(abab_full.trace.steps.at(0).gain == 0);

  const auto ab3 = greedy_run(Text::from_letters("ababab"));
  CHECK(ab3.grammar.start() == std::vector<Symbol>{2, 2, 2});
  CHECK(ab3.grammar.rules() == std::vector<std::vector<Symbol>>{{0, 1}});
  CHECK(ab3.trace.steps.at(0).gain == 1);

  const auto abc = greedy_run(Text::from_letters("abcabcabc"));
  CHECK(abc.grammar.start() == std::vector<Symbol>{3, 3, 3});
  CHECK(abc.grammar.rules() == std::vector<std::vector<Symbol>>{{0, 1, 2}});
  CHECK(abc.trace.steps.at(0).gain == 3);
}

TEST_CASE("Greedy matches the exhaustive substring reference") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::uint64_t sigma = 2 + seed % 3;
    const Text t = seed % 2 ? random_uniform(16 + seed, sigma, seed) : random_markov(16 + seed, sigma, seed);
    for (bool zero : {false, true}) {
      GreedyPolicy p;
      p.finish_zero_gain = zero;
      const auto want = oracle::greedy(oracle::word(t), sigma, zero ? 0 : 1);
      const auto got = greedy_run(t, p).grammar;
      REQUIRE(got.start() == want.start);
      REQUIRE(got.rules() == want.rules);
    }
  }
}

TEST_CASE("Greedy run-to-end output is irreducible and small") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Text t = seed % 2 ? random_markov(1500, 2 + seed, seed) : random_uniform(1500, 2 + seed, seed);
    bool expands = true;
    const auto r = greedy_run(t, GreedyPolicy::run_to_end(),
                              [&](const GreedyStep&, const FullGrammar& g) { expands = expands && expand_start(g) == t; });
    CHECK(expands);
    CHECK(check_irreducible(r.grammar).all());
    CHECK(greedy_trace_rows(r.trace, t).all_pass());
    CHECK(greedy_stop_report(r.trace, t).all_pass());
    CHECK(expansion_sum_check(r.grammar).bound_holds);
    for (const auto& s : r.trace.steps) CHECK(s.size_before - s.size_after == static_cast<std::uint64_t>(s.gain));
  }
}

TEST_CASE("Greedy stop policies") {
  const Text t = random_markov(2000, 4, 3);
  CHECK(greedy_run(t, GreedyPolicy::max_iterations(3)).trace.steps.size() == 3);
  const auto e = GreedyPolicy::max_iterations_exponent(2000, 0.5);
  CHECK(e.value == 45);
  // 64 n / log_sigma n exceeds n here, so the threshold run stops at once.
  const auto th = greedy_run(t, GreedyPolicy::full_size_threshold());
  CHECK(th.trace.stopped_by_policy);
  CHECK(th.trace.steps.empty());
  CHECK(greedy_stop_report(th.trace, t).all_pass());
  CHECK_THROWS(greedy_run(Text({0, 0}, 1), GreedyPolicy::full_size_threshold()));
  CHECK(greedy_trace_json_lines(greedy_run(Text::from_letters("abcabcabc")).trace).find("\"gain\":3") !=
        std::string::npos);
}
