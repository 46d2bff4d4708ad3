#include <doctest.h>

#include "gcl/grammar.hpp"
#include "gcl/lab.hpp"
#include "gcl/repair.hpp"

using namespace gcl;

namespace {
constexpr Symbol a = 0, b = 1, c = 2, d = 3;
}

TEST_CASE("expansion of terminals and nested rules") {
  // X = 2 -> ab, Y = 3 -> XX over sigma 2.
  const FullGrammar g(2, {3}, {{a, b}, {2, 2}});
  CHECK(expand(g, a) == std::vector<Symbol>{a});
  CHECK(expand(g, 3) == std::vector<Symbol>{a, b, a, b});
  CHECK(g.expansion_length(3) == 4);
  CHECK(expand_start(g).to_letters() == "abab");
  CHECK_THROWS(expand(g, 4));
}

TEST_CASE("grammar validation") {
  CHECK_THROWS(FullGrammar(2, {2}, {{2, 0}}));     // self reference
  CHECK_THROWS(FullGrammar(2, {2}, {{3, 0}, {2}}));  // cycle through two rules
  CHECK_THROWS(FullGrammar(2, {5}, {}));           // undefined id
  CHECK_THROWS(FullGrammar(2, {2}, {{}}));         // empty rhs
  // Forward references are fine while acyclic.
  const FullGrammar fwd(2, {2, 2}, {{3, 3}, {a, b}});
  CHECK(expand_start(fwd).to_letters() == "abababab");
  CHECK(fwd.top_down_order().size() == 2);
}

TEST_CASE("metrics") {
  const FullGrammar g(2, {2, 2, a}, {{a, b}});
  const auto m = metrics(g);
  CHECK(m.n_nonterminals == 1);
  CHECK(m.rhs_size_grammar == 2);
  CHECK(m.rhs_size_full == 5);
  CHECK(m.expansion_sum == 2);
  CHECK(m.is_cnf);
  CHECK_FALSE(metrics(FullGrammar(3, {3, 3}, {{a, b, c}})).is_cnf);
}

TEST_CASE("irreducibility examples") {
  CHECK(check_irreducible(FullGrammar(2, {2, 2}, {{a, b}})).all());
  const auto xy = check_irreducible(FullGrammar(4, {4, 5, 4, 5}, {{a, b}, {c, d}}));
  CHECK(xy.ig1);
  CHECK(xy.ig2);
  CHECK_FALSE(xy.ig3);
  CHECK_FALSE(xy.witnesses.empty());
  // Two rules with the same expansion.
  const auto dup = check_irreducible(FullGrammar(2, {2, 2, 3, 3}, {{a, b}, {a, b}}));
  CHECK_FALSE(dup.ig1);
  // A nonterminal used once.
  CHECK_FALSE(check_irreducible(FullGrammar(2, {2, a}, {{a, b}})).ig2);
  // An overlapping repeat (aaa) does not violate IG3.
  CHECK(check_irreducible(FullGrammar::trivial(Text::from_letters("aaa"))).ig3);
  CHECK_FALSE(check_irreducible(FullGrammar::trivial(Text::from_letters("aaaa"))).ig3);
}

TEST_CASE("weak non-redundancy examples") {
  // S -> AA, A -> Ba, B -> aa with a = 0, A = 1, B = 2.
  const FullGrammar yes(1, {1, 1}, {{2, 0}, {0, 0}});
  const auto ry = check_weakly_nonredundant(yes);
  CHECK(ry.weakly_nonredundant);
  CHECK(ry.tree_occurrences[1] == 2);  // B occurs once in rhs strings but twice in the tree
  CHECK(ry.rhs_occurrences[1] == 1);
  // S -> AB, A -> cc, B -> aa.
  const FullGrammar no(3, {3, 4}, {{c, c}, {a, a}});
  CHECK_FALSE(check_weakly_nonredundant(no).weakly_nonredundant);
  CHECK_FALSE(check_weakly_nonredundant(FullGrammar(2, {2, 2}, {{a}})).weakly_nonredundant);
}

TEST_CASE("expansion sum") {
  const auto s = expansion_sum_check(FullGrammar(2, {2, 2}, {{a, b}}));
  CHECK(s.applicable);
  CHECK(s.sum == 2);
  CHECK(s.bound == 8);
  CHECK(s.bound_holds);
  CHECK_FALSE(expansion_sum_check(FullGrammar(2, {2, a}, {{a, b}})).applicable);
  const Text t = random_markov(3000, 4, 3);
  const auto r = repair_run(t);
  CHECK(expansion_sum_check(r.grammar).bound_holds);
}

TEST_CASE("induced parsing") {
  const FullGrammar g(2, {2, 2}, {{a, b}});
  const auto ip = induced_parsing(g);
  CHECK(ip.s2 == std::vector<Symbol>{a, b, 2});
  CHECK(ip.parsing.size() == 3);
  CHECK(start_parsing(g).size() == 2);
  CHECK(start_parsing(g).phrase_length(0) == 2);
  const auto flat = induced_parsing(FullGrammar::trivial(Text::from_letters("abc")));
  CHECK(flat.parsing.size() == 3);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Text t = random_uniform(2000, 2 + seed, seed);
    const auto rg = repair_run(t, StopPolicy::working_string_threshold()).grammar;
    const auto m = metrics(rg);
    CHECK(induced_parsing(rg).s2.size() == rg.start().size() + m.rhs_size_grammar - m.n_nonterminals);
    CHECK(induced_parsing(rg).parsing.source() == t);
  }
}

TEST_CASE("binary prefix tree grammar") {
  CHECK_THROWS(bad_grammar_fixture(2));
  const FullGrammar g = bad_grammar_fixture(3);
  CHECK(g.sigma() == 2);
  CHECK(metrics(g).n_nonterminals == 4 + 8);
  // X_{001} -> X_{00} 1.
  const Symbol x00 = 2, x001 = 2 + 4 + 1;
  CHECK(g.rhs(x001) == std::vector<Symbol>{x00, 1});
  CHECK(expand(g, x001) == std::vector<Symbol>{0, 0, 1});
  CHECK(check_irreducible(g).all());
  std::string want;
  for (int w = 0; w < 8; ++w) {
    std::string bits;
    for (int i = 2; i >= 0; --i) bits += char('a' + ((w >> i) & 1));
    want += bits + bits;
  }
  CHECK(expand_start(g).to_letters() == want);
  CHECK(check_irreducible(bad_grammar_fixture(6)).all());
}

TEST_CASE("grammar serialization round-trip") {
  const FullGrammar g = repair_run(random_markov(500, 5, 2)).grammar;
  const std::string bytes = serialize_grammar(g);
  CHECK(bytes.substr(0, 4) == "GCL1");
  CHECK(deserialize_grammar(bytes) == g);
  CHECK_THROWS(deserialize_grammar(bytes.substr(0, bytes.size() - 1)));
  CHECK_THROWS(deserialize_grammar("XXXX"));
  CHECK_FALSE(dump_grammar(g).empty());
}
