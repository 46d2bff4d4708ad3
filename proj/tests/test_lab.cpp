#include <doctest.h>

#include <filesystem>
#include <set>

#include <json.hpp>

#include "gcl/lab.hpp"

using namespace gcl;

TEST_CASE("random texts are reproducible") {
  CHECK(random_uniform(100, 7, 3) == random_uniform(100, 7, 3));
  CHECK_FALSE(random_uniform(100, 7, 3) == random_uniform(100, 7, 4));
  const Text m = random_markov(5000, 4, 1);
  std::size_t same = 0;
  for (std::size_t i = 1; i < m.size(); ++i) same += m[i] == m[i - 1];
  CHECK(same > m.size() / 3);  // P(step 0) = 8/15
}

TEST_CASE("input selectors") {
  const auto in = resolve_inputs({"fixture:worst:4", "fixture:gdb:1,1,1", "fixture:uniform:50,3,1",
                                  "fixture:markov:50,3,1", "fixture:bad:3"});
  REQUIRE(in.size() == 5);
  CHECK(in[0].text.size() == 16);
  CHECK(in[1].gdb.has_value());
  CHECK(in[2].text.sigma() == 3);
  CHECK(in[4].text.size() == 48);
  CHECK_THROWS(resolve_inputs({"fixture:nope:1"}));
  CHECK_THROWS(resolve_inputs({"fixture:gdb:1,1"}));
  CHECK_THROWS(resolve_inputs({"/no/such/path"}));
  CHECK(parse_algorithm("lz77ns") == Algorithm::Lz77ns);
  CHECK_THROWS(parse_algorithm("lzw"));
}

TEST_CASE("empty corpus gives an empty passing report") {
  const Report r = run(RunSpec{});
  CHECK(r.results.empty());
  CHECK(r.all_pass());
  const std::string csv = emit(r, ReportFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("report over fixtures") {
  RunSpec spec;
  spec.inputs = resolve_inputs({"fixture:worst:256", "fixture:gdb:2,1,1", "fixture:markov:2000,4,9"});
  spec.algorithms = {Algorithm::Repair, Algorithm::Greedy, Algorithm::Lz78, Algorithm::Lz77ns, Algorithm::OffsetParse};
  spec.workers = 2;
  const Report r = run(spec);
  REQUIRE(r.results.size() == 15);
  for (const auto& c : r.results) {
    CAPTURE(c.input);
    CAPTURE(c.algorithm);
    CHECK(c.error.empty());
    CHECK(c.ok());
    std::set<std::string> names;
    for (const auto& row : c.bounds.rows) CHECK(names.insert(row.name).second);
  }
  // Sorted by input name, algorithms in spec order.
  CHECK(r.results[0].input == "fixture:gdb:2,1,1");
  CHECK(r.results[1].algorithm == "greedy");

  // gdb with LZ78 carries the lower-bound rows.
  const auto& lz = r.results[2];
  CHECK(lz.algorithm == "lz78");
  CHECK(lz.bounds.find("debruijn_lower_bound") != nullptr);

  // Worst-case family, Re-Pair run to end, incremental encoding: ratio near 3/2.
  const ConfigResult* worst = nullptr;
  for (const auto& c : r.results) {
    if (c.input == "fixture:worst:256" && c.algorithm == "repair") worst = &c;
  }
  REQUIRE(worst != nullptr);
  CHECK(worst->nonterminals == 256);
  CHECK(worst->ratios.at("incremental/k0") > 1.2);

  const std::string json = emit(r, ReportFormat::Json, false);
  CHECK(nlohmann::ordered_json::parse(json).dump(2) + "\n" == json);
  CHECK(json == emit(run(spec), ReportFormat::Json, false));
  CHECK(emit(r, ReportFormat::Json).find("timestamp") != std::string::npos);
  const std::string csv = emit(r, ReportFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
}

TEST_CASE("a failing input does not stop the run") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gcl_lab_test";
  fs::create_directories(dir);
  write_file((dir / "empty.bin").string(), "");
  write_file((dir / "text.txt").string(), "abracadabra abracadabra");
  RunSpec spec;
  spec.inputs = resolve_inputs({dir.string()});
  REQUIRE(spec.inputs.size() == 2);
  const Report r = run(spec);
  REQUIRE(r.results.size() == 2);
  CHECK_FALSE(r.results[0].error.empty());
  CHECK(r.results[1].ok());
  CHECK_FALSE(r.all_pass());
  fs::remove_all(dir);
}
