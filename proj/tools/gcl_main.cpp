#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcl/coders.hpp"
#include "gcl/debruijn.hpp"
#include "gcl/entropy.hpp"
#include "gcl/grammar.hpp"
#include "gcl/greedy.hpp"
#include "gcl/lab.hpp"
#include "gcl/parsing.hpp"
#include "gcl/repair.hpp"

using namespace gcl;

namespace {

void output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

int print_rows(const BoundReport& rep) {
  for (const auto& r : rep.rows) {
    std::printf("%-40s %s  lhs=%.6f rhs=%.6f slack=%g%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.lhs_bits, r.rhs_bits, r.slack_bits, r.note.empty() ? "" : "  # ", r.note.c_str());
  }
  return rep.all_pass() ? 0 : 1;
}

StopPolicy repair_policy(const std::string& s) {
  if (s == "run-to-end") return StopPolicy::run_to_end();
  if (s == "threshold") return StopPolicy::working_string_threshold();
  if (s.starts_with("max:")) return StopPolicy::max_nonterminals(std::stoull(s.substr(4)));
  if (s.starts_with("custom:")) return StopPolicy::custom_threshold(std::stoull(s.substr(7)));
  throw CLI::ValidationError("--policy", "expected run-to-end, threshold, max:<m> or custom:<t>");
}

GreedyPolicy greedy_policy(const std::string& s, std::uint64_t n) {
  if (s == "run-to-end") return GreedyPolicy::run_to_end();
  if (s == "threshold") return GreedyPolicy::full_size_threshold();
  if (s.starts_with("max:")) return GreedyPolicy::max_iterations(std::stoull(s.substr(4)));
  if (s.starts_with("exp:")) return GreedyPolicy::max_iterations_exponent(n, std::stod(s.substr(4)));
  throw CLI::ValidationError("--policy", "expected run-to-end, threshold, max:<m> or exp:<c>");
}

std::vector<int> k_list(const std::string& s) {
  std::vector<int> ks;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto dash = part.find('-');
    if (dash != std::string::npos) {
      for (int k = std::stoi(part.substr(0, dash)); k <= std::stoi(part.substr(dash + 1)); ++k) ks.push_back(k);
    } else {
      ks.push_back(std::stoi(part));
    }
  }
  return ks;
}

Parsing make_parsing(const Text& text, const std::string& parser, std::uint64_t l) {
  if (parser == "lz78") return lz78_parse(text);
  if (parser == "lz77ns") return lz77_parse_nonself(text);
  if (parser == "offset") return best_offset_parsing(text, l);
  if (parser == "letters") return Parsing::single_letters(text);
  throw CLI::ValidationError("--parser", "expected lz78, lz77ns, offset or letters");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar compression laboratory"};
  app.require_subcommand(1);
  std::string out;

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Empirical entropies H_0..H_k of a text");
  std::string in_path;
  int k = 2;
  bool cyclic = false;
  std::string format = "text";
  entropy->add_option("input", in_path, "Token file or raw bytes")->required();
  entropy->add_option("--k", k, "Largest order")->check(CLI::NonNegativeNumber);
  entropy->add_flag("--cyclic", cyclic, "Read the text cyclically");
  entropy->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  entropy->add_option("--out", out);

  // parse
  auto* parse = app.add_subcommand("parse", "Parse a text and print the phrase lengths");
  std::string parser = "lz78";
  std::uint64_t l = 4;
  parse->add_option("input", in_path)->required();
  parse->add_option("--parser", parser, "lz78, lz77ns, offset or letters");
  parse->add_option("--l", l, "Phrase length for the offset parser")->check(CLI::PositiveNumber);
  parse->add_option("--out", out);

  // repair / greedy
  std::string policy = "run-to-end";
  std::string trace_path;
  auto* repair = app.add_subcommand("repair", "Run Re-Pair and write the grammar");
  repair->add_option("input", in_path)->required();
  repair->add_option("--policy", policy, "run-to-end, threshold, max:<m>, custom:<t>");
  repair->add_option("--trace", trace_path, "Write the step trace as JSON lines");
  repair->add_option("--out", out, "Grammar file")->required();
  auto* greedy = app.add_subcommand("greedy", "Run Greedy and write the grammar");
  greedy->add_option("input", in_path)->required();
  greedy->add_option("--policy", policy, "run-to-end, threshold, max:<m>, exp:<c>");
  greedy->add_option("--trace", trace_path, "Write the step trace as JSON lines");
  greedy->add_option("--out", out, "Grammar file")->required();

  // encode / decode
  std::string encoding = "entropy";
  auto* enc = app.add_subcommand("encode", "Encode a grammar file into a container");
  enc->add_option("grammar", in_path)->required();
  enc->add_option("--encoding", encoding)->check(CLI::IsMember({"fully-naive", "naive", "entropy", "incremental"}));
  enc->add_option("--out", out)->required();
  std::string text_out;
  auto* dec = app.add_subcommand("decode", "Decode a container back into a grammar");
  dec->add_option("container", in_path)->required();
  dec->add_option("--out", out, "Grammar file");
  dec->add_option("--text", text_out, "Write the expanded text in token format");

  // debruijn
  GdBParams gp;
  std::string cert_path;
  auto* db = app.add_subcommand("debruijn", "Generate a generalized de Bruijn word");
  db->add_option("--k", gp.k)->check(CLI::PositiveNumber);
  db->add_option("--l", gp.l)->check(CLI::NonNegativeNumber);
  db->add_option("--p", gp.p)->check(CLI::PositiveNumber);
  db->add_option("--certificate", cert_path, "Write the certificate as JSON");
  db->add_option("--out", out, "Word in token format");

  // verify
  std::string parsing_path;
  auto* verify = app.add_subcommand("verify", "Check the parsing bounds for a text and a parsing");
  verify->add_option("input", in_path)->required();
  verify->add_option("--parsing", parsing_path, "Parsing file (default: LZ78 of the input)");
  verify->add_option("--k", k)->check(CLI::NonNegativeNumber);

  // report
  std::vector<std::string> selectors;
  std::string algorithms = "repair";
  std::string ks = "0-2";
  std::string encodings = "all";
  std::string greedy_pol = "run-to-end";
  std::uint64_t seed = 1;
  std::uint64_t random_count = 0;
  std::uint64_t random_n = 10000;
  unsigned workers = 0;
  auto* report = app.add_subcommand("report", "Run the experiment matrix and emit a report");
  report->add_option("inputs", selectors, "Files, directories or fixture:<kind>:<args>");
  report->add_option("--algorithms", algorithms, "Comma list of repair, greedy, lz78, lz77ns, offset-parse");
  report->add_option("--policy", policy, "Re-Pair policy");
  report->add_option("--greedy-policy", greedy_pol, "Greedy policy");
  report->add_option("--encoding", encodings, "Comma list or 'all'");
  report->add_option("--k", ks, "Orders, e.g. 0-2 or 0,2,4");
  report->add_option("--l", l, "Phrase length for offset-parse")->check(CLI::PositiveNumber);
  report->add_option("--seed", seed, "Seed for --random inputs");
  report->add_option("--random", random_count, "Add this many random texts (uniform and Markov)");
  report->add_option("--random-n", random_n, "Length of the random texts");
  report->add_option("--workers", workers);
  report->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropy->parsed()) {
      const Text text = load_text(in_path);
      const auto prof = entropy_profile(text, k, cyclic);
      std::ostringstream os;
      if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = text.size();
        j["sigma"] = text.sigma();
        j["cyclic"] = cyclic;
        for (const auto& o : prof.per_order) {
          j["orders"].push_back({{"k", o.k}, {"total_bits", o.total_bits}, {"bits_per_symbol", o.bits_per_symbol}});
        }
        os << j.dump(2) << '\n';
      } else {
        os << "n=" << text.size() << " sigma=" << text.sigma() << (cyclic ? " cyclic" : "") << '\n';
        for (const auto& o : prof.per_order) {
          os << "H" << o.k << " " << o.bits_per_symbol << " bits/symbol, " << o.total_bits << " bits\n";
        }
      }
      output(out, os.str());
      return 0;
    }
    if (parse->parsed()) {
      output(out, format_parsing(make_parsing(load_text(in_path), parser, l)));
      return 0;
    }
    if (repair->parsed()) {
      const Text text = load_text(in_path);
      auto r = repair_run(text, repair_policy(policy));
      write_file(out, serialize_grammar(r.grammar));
      if (!trace_path.empty()) write_file(trace_path, repair_trace_json_lines(r.trace));
      const auto m = metrics(r.grammar);
      std::printf("rules=%llu size=%llu start=%zu\n", static_cast<unsigned long long>(m.n_nonterminals),
                  static_cast<unsigned long long>(m.rhs_size_full), r.grammar.start().size());
      return print_rows(stop_point_report(r.trace, text));
    }
    if (greedy->parsed()) {
      const Text text = load_text(in_path);
      auto r = greedy_run(text, greedy_policy(policy, text.size()));
      write_file(out, serialize_grammar(r.grammar));
      if (!trace_path.empty()) write_file(trace_path, greedy_trace_json_lines(r.trace));
      const auto m = metrics(r.grammar);
      std::printf("rules=%llu size=%llu start=%zu\n", static_cast<unsigned long long>(m.n_nonterminals),
                  static_cast<unsigned long long>(m.rhs_size_full), r.grammar.start().size());
      return print_rows(greedy_stop_report(r.trace, text));
    }
    if (enc->parsed()) {
      const FullGrammar g = deserialize_grammar(read_file(in_path));
      const EncodedGrammar e = encode(g, parse_encoding(encoding));
      write_file(out, to_container(e));
      const auto& s = e.size;
      std::printf("total_bits=%llu payload=%llu dictionary=%llu lengths=%llu bound=%.1f slack_coefficient=%.4f\n",
                  static_cast<unsigned long long>(s.total_bits), static_cast<unsigned long long>(s.payload_bits),
                  static_cast<unsigned long long>(s.dictionary_bits),
                  static_cast<unsigned long long>(s.lengths_side_bits), s.formula_bound_bits, s.slack_coefficient);
      return s.bound_holds ? 0 : 1;
    }
    if (dec->parsed()) {
      const FullGrammar g = decode(from_container(read_file(in_path)));
      if (!out.empty()) write_file(out, serialize_grammar(g));
      if (!text_out.empty()) output(text_out, format_token_text(expand_start(g)));
      if (out.empty() && text_out.empty()) std::cout << dump_grammar(g);
      return 0;
    }
    if (db->parsed()) {
      const Text w = generalized_word(gp);
      const auto cert = verify_gdb(w, gp);
      if (!cert_path.empty()) output(cert_path, certificate_json(cert) + "\n");
      output(out, format_token_text(w));
      return cert.passes(4.0) ? 0 : 1;
    }
    if (verify->parsed()) {
      const Text text = load_text(in_path);
      const Parsing p = parsing_path.empty() ? lz78_parse(text) : parse_parsing(text, read_file(parsing_path));
      return print_rows(verify_parsing_bounds(p, k));
    }
    if (report->parsed()) {
      RunSpec spec;
      for (std::uint64_t i = 0; i < random_count; ++i) {
        static constexpr std::uint64_t kSigmas[] = {2, 4, 16, 256};
        const std::uint64_t sigma = kSigmas[i % 4];
        const char* kind = (i / 4) % 2 ? "markov" : "uniform";
        selectors.push_back(std::string("fixture:") + kind + ":" + std::to_string(random_n) + "," +
                            std::to_string(sigma) + "," + std::to_string(seed + i));
      }
      spec.inputs = resolve_inputs(selectors);
      spec.algorithms.clear();
      std::stringstream as(algorithms);
      for (std::string a; std::getline(as, a, ',');) spec.algorithms.push_back(parse_algorithm(a));
      spec.repair_policy = repair_policy(policy);
      if (!spec.inputs.empty()) spec.greedy_policy = greedy_policy(greedy_pol, spec.inputs.front().text.size());
      if (encodings != "all") {
        spec.encodings.clear();
        std::stringstream es(encodings);
        for (std::string e; std::getline(es, e, ',');) spec.encodings.push_back(parse_encoding(e));
      }
      spec.ks = k_list(ks);
      spec.offset_l = l;
      spec.workers = workers;
      const Report rep = run(spec);
      output(out, emit(rep, format == "csv" ? ReportFormat::Csv : ReportFormat::Json));
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
