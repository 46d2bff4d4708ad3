#include "gcl/lab.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <future>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gcl/entropy.hpp"
#include "gcl/grammar.hpp"
#include "gcl/parsing.hpp"

namespace gcl {

namespace {

constexpr Algorithm kAlgorithms[] = {Algorithm::Repair, Algorithm::Greedy, Algorithm::Lz78,
                                     Algorithm::Lz77ns, Algorithm::OffsetParse};
constexpr std::uint64_t kRepairCap = 1ULL << 26;

std::vector<std::uint64_t> parse_numbers(std::string_view s, std::size_t expected,
                                         const std::string& what) {
  std::vector<std::uint64_t> out;
  const char* p = s.data();
  const char* end = s.data() + s.size();
  while (p < end) {
    std::uint64_t v = 0;
    auto [np, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) throw std::invalid_argument("bad fixture arguments: " + what);
    out.push_back(v);
    p = np;
    if (p < end && *p == ',') ++p;
    else if (p < end) throw std::invalid_argument("bad fixture arguments: " + what);
  }
  if (out.size() != expected) throw std::invalid_argument("bad fixture arguments: " + what);
  return out;
}

Input fixture(std::string_view body, const std::string& selector) {
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("bad fixture: " + selector);
  const std::string_view kind = body.substr(0, colon);
  const std::string_view args = body.substr(colon + 1);
  Input in;
  in.name = selector;
  if (kind == "worst") {
    in.text = worst_case_family(parse_numbers(args, 1, selector)[0]);
  } else if (kind == "gdb") {
    auto v = parse_numbers(args, 3, selector);
    GdBParams p{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
    in.text = generalized_word(p);
    in.gdb = p;
  } else if (kind == "bad") {
    in.text = expand_start(bad_grammar_fixture(static_cast<int>(parse_numbers(args, 1, selector)[0])));
  } else if (kind == "uniform") {
    auto v = parse_numbers(args, 3, selector);
    in.text = random_uniform(v[0], v[1], v[2]);
  } else if (kind == "markov") {
    auto v = parse_numbers(args, 3, selector);
    in.text = random_markov(v[0], v[1], v[2]);
  } else {
    throw std::invalid_argument("unknown fixture: " + selector);
  }
  return in;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Produced {
  std::optional<FullGrammar> grammar;
  Parsing parsing;
  std::optional<BoundReport> trace_rows;
};

Produced produce(const RunSpec& spec, const Input& in, Algorithm alg, ConfigResult& res) {
  Produced out;
  switch (alg) {
    case Algorithm::Repair: {
      if (in.text.size() >= kRepairCap) {
        throw std::invalid_argument("text of " + std::to_string(in.text.size()) +
                                    " symbols exceeds the Re-Pair cap of 2^26");
      }
      auto r = repair_run(in.text, spec.repair_policy);
      res.policy = spec.repair_policy.describe();
      res.iterations = r.trace.steps.size();
      out.trace_rows = stop_point_report(r.trace, in.text);
      out.grammar = std::move(r.grammar);
      break;
    }
    case Algorithm::Greedy: {
      auto r = greedy_run(in.text, spec.greedy_policy);
      res.policy = spec.greedy_policy.describe();
      res.iterations = r.trace.steps.size();
      out.trace_rows = greedy_stop_report(r.trace, in.text);
      out.grammar = std::move(r.grammar);
      break;
    }
    case Algorithm::Lz78:
      out.parsing = lz78_parse(in.text);
      break;
    case Algorithm::Lz77ns:
      out.parsing = lz77_parse_nonself(in.text);
      break;
    case Algorithm::OffsetParse:
      res.policy = "l=" + std::to_string(spec.offset_l);
      break;
  }
  if (out.grammar) out.parsing = start_parsing(*out.grammar);
  return out;
}

void run_one(const RunSpec& spec, const Input& in, Algorithm alg, ConfigResult& res) {
  const Text& text = in.text;
  res.n = text.size();
  res.sigma = text.sigma();
  if (text.empty()) throw std::invalid_argument("empty input");
  const double n = static_cast<double>(text.size());

  std::map<int, double> hk_total;
  for (int k : spec.ks) {
    const auto e = empirical_entropy(text, k, false);
    res.entropy[k] = e.bits_per_symbol;
    hk_total[k] = e.total_bits;
  }

  Produced prod = produce(spec, in, alg, res);
  const PhraseCostModel model(text);
  if (alg == Algorithm::OffsetParse) {
    prod.parsing = best_offset_parsing(model, spec.offset_l);
    res.bounds.append(verify_mean_entropy(model, prod.parsing, spec.offset_l));
  }
  const Parsing& parsing = prod.parsing;
  res.phrases = parsing.size();

  bool first = true;
  for (int k : spec.ks) {
    const auto rows = verify_parsing_bounds(model, parsing, k, hk_total[k]);
    for (auto row : rows.rows) {
      const bool per_k = row.name.find("kcost") != std::string::npos;
      if (!per_k && !first) continue;
      if (per_k) row.name += "_k" + std::to_string(k);
      res.bounds.rows.push_back(std::move(row));
    }
    first = false;
  }
  if (prod.trace_rows) res.bounds.append(*prod.trace_rows);

  if (in.gdb && alg != Algorithm::OffsetParse) {
    res.bounds.append(lower_bound_check(text, parsing, *in.gdb));
  }

  const double y_bits = parsing_entropy_bits(parsing);
  for (int k : spec.ks) {
    if (hk_total[k] > 0) res.ratios["parsing/k" + std::to_string(k)] = y_bits / hk_total[k];
  }

  if (!prod.grammar) return;
  const FullGrammar& g = *prod.grammar;
  const auto m = metrics(g);
  res.has_grammar = true;
  res.nonterminals = m.n_nonterminals;
  res.grammar_size = m.rhs_size_full;
  res.bounds.rows.push_back(make_flag_row("expands_to_input", static_cast<double>(g.text_length()), n,
                                          expand_start(g) == text));

  // |S_G| H_0(S_G) <= |S| H_k + |G| log |S| + (|S''| k log sigma + |L''| H_0(L'')),
  // the last term being the exact slack of the induced parsing S''.
  const double sg_bits = zero_order_bits(std::span<const Symbol>(concatenated_rhs(g)));
  const auto induced = induced_parsing(g);
  const double log_sigma = std::log2(static_cast<double>(text.sigma()));
  for (int k : spec.ks) {
    const double slack = static_cast<double>(induced.parsing.size()) * k * log_sigma +
                         lengths_entropy_bits(induced.parsing);
    res.bounds.rows.push_back(make_bound_row(
        "entropy_coding_concatenation_k" + std::to_string(k), sg_bits,
        hk_total[k] + static_cast<double>(g.n_nonterminals()) * std::log2(n), slack + 1e-6,
        "slack = |S''| k log sigma + |L''| H0(L'')"));
  }

  if (alg == Algorithm::Greedy && spec.greedy_policy.kind == GreedyPolicy::Kind::RunToEnd) {
    const auto irr = check_irreducible(g);
    res.bounds.rows.push_back(make_flag_row("irreducible", irr.all() ? 1 : 0, 1, irr.all(),
                                            "IG1-IG3 on the run-to-end output"));
    if (text.sigma() >= 2 && text.size() >= 2) {
      const double log_sigma_n = std::log(n) / std::log(static_cast<double>(text.sigma()));
      res.bounds.rows.push_back(make_bound_row("irreducible_size", static_cast<double>(m.rhs_size_full),
                                               64 * n / log_sigma_n, 0, "||S,G|| vs 64 n / log_sigma n"));
    }
  }

  for (Encoding e : spec.encodings) {
    const std::string en = encoding_name(e);
    if (e == Encoding::Incremental && !m.is_cnf) continue;
    const EncodedGrammar enc = encode(g, e);
    const SizeBreakdown& sz = enc.size;
    res.encodings.emplace_back(e, sz);
    res.bounds.rows.push_back(make_bound_row("encoding_bound_" + en, static_cast<double>(sz.total_bits),
                                             sz.formula_bound_bits, 0,
                                             "main term + 10 ||S',G|| + sigma + 8"));
    if (sz.has_huffman) {
      const double payload = static_cast<double>(sz.huffman_payload_bits);
      const bool sandwich = sz.ideal_bits <= payload + 1e-6 &&
                            payload <= sz.ideal_bits + static_cast<double>(sz.coded_symbols) + 1e-6;
      res.bounds.rows.push_back(make_flag_row("huffman_sandwich_" + en, payload, sz.ideal_bits, sandwich,
                                              "|Y|H0(Y) <= payload <= |Y|H0(Y) + |Y|"));
    }
    const FullGrammar back = decode(enc);
    res.bounds.rows.push_back(make_flag_row("roundtrip_" + en, 0, 0, expand_start(back) == text));
    for (int k : spec.ks) {
      if (hk_total[k] > 0) {
        res.ratios[en + "/k" + std::to_string(k)] = static_cast<double>(sz.total_bits) / hk_total[k];
      }
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Repair: return "repair";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Lz78: return "lz78";
    case Algorithm::Lz77ns: return "lz77ns";
    case Algorithm::OffsetParse: return "offset-parse";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

Text random_uniform(std::uint64_t n, std::uint64_t sigma, std::uint64_t seed) {
  if (sigma == 0) throw std::invalid_argument("random_uniform: sigma must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Symbol> s(n);
  for (auto& c : s) c = static_cast<Symbol>(rng() % sigma);
  return Text(std::move(s), sigma);
}

Text random_markov(std::uint64_t n, std::uint64_t sigma, std::uint64_t seed) {
  if (sigma == 0) throw std::invalid_argument("random_markov: sigma must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Symbol> s(n);
  std::uint64_t prev = rng() % sigma;
  for (auto& c : s) {
    std::uint64_t j;
    do {
      j = static_cast<std::uint64_t>(std::countr_one(rng()));
    } while (j >= sigma);
    prev = (prev + j) % sigma;
    c = static_cast<Symbol>(prev);
  }
  return Text(std::move(s), sigma);
}

std::vector<Input> resolve_inputs(const std::vector<std::string>& selectors) {
  namespace fs = std::filesystem;
  std::vector<Input> out;
  for (const std::string& sel : selectors) {
    if (sel.starts_with("fixture:")) {
      out.push_back(fixture(std::string_view(sel).substr(8), sel));
      continue;
    }
    const fs::path path(sel);
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back({f.string(), load_text(f.string()), std::nullopt});
    } else if (fs::is_regular_file(path)) {
      out.push_back({sel, load_text(sel), std::nullopt});
    } else {
      throw std::invalid_argument("no such input: " + sel);
    }
  }
  return out;
}

bool Report::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const ConfigResult& r) { return r.ok(); });
}

Report run(const RunSpec& spec) {
  for (int k : spec.ks) {
    if (k < 0) throw std::invalid_argument("run: k must be non-negative");
  }
  std::vector<const Input*> inputs;
  for (const auto& in : spec.inputs) inputs.push_back(&in);
  std::stable_sort(inputs.begin(), inputs.end(),
                   [](const Input* a, const Input* b) { return a->name < b->name; });

  Report report;
  report.timestamp = utc_timestamp();
  report.ks = spec.ks;
  report.encodings = spec.encodings;
  const std::size_t n_alg = spec.algorithms.size();
  report.results.resize(inputs.size() * n_alg);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < report.results.size();) {
      const Input& in = *inputs[t / n_alg];
      const Algorithm alg = spec.algorithms[t % n_alg];
      ConfigResult& res = report.results[t];
      res.input = in.name;
      res.algorithm = algorithm_name(alg);
      try {
        run_one(spec, in, alg, res);
      } catch (const std::exception& e) {
        res.error = e.what();
      }
    }
  };
  unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, report.results.size()));
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return report;
}

std::string emit(const Report& report, ReportFormat format, bool with_timestamp) {
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "input,algorithm,policy,n,sigma";
    for (int k : report.ks) os << ",H" << k;
    os << ",nonterminals,grammar_size,iterations,phrases";
    for (Encoding e : report.encodings) os << ",bits_" << encoding_name(e);
    os << ",rows,failed_rows,pass,error\n";
    for (const auto& r : report.results) {
      os << csv_field(r.input) << ',' << r.algorithm << ',' << csv_field(r.policy) << ',' << r.n << ','
         << r.sigma;
      for (int k : report.ks) {
        auto it = r.entropy.find(k);
        os << ',' << (it == r.entropy.end() ? "" : num(it->second));
      }
      os << ',' << r.nonterminals << ',' << r.grammar_size << ',' << r.iterations << ',' << r.phrases;
      for (Encoding e : report.encodings) {
        os << ',';
        for (const auto& [enc, sz] : r.encodings) {
          if (enc == e) os << sz.total_bits;
        }
      }
      std::string failed;
      for (const auto& row : r.bounds.rows) {
        if (!row.pass) failed += (failed.empty() ? "" : ";") + row.name;
      }
      os << ',' << r.bounds.rows.size() << ',' << csv_field(failed) << ',' << (r.ok() ? 1 : 0) << ','
         << csv_field(r.error) << '\n';
    }
    return os.str();
  }

  using json = nlohmann::ordered_json;
  json j;
  j["schema_version"] = Report::kSchemaVersion;
  if (with_timestamp) j["timestamp"] = report.timestamp;
  j["ks"] = report.ks;
  j["all_pass"] = report.all_pass();
  j["results"] = json::array();
  for (const auto& r : report.results) {
    json jr;
    jr["input"] = r.input;
    jr["algorithm"] = r.algorithm;
    jr["policy"] = r.policy;
    jr["n"] = r.n;
    jr["sigma"] = r.sigma;
    jr["entropy"] = json::object();
    for (auto [k, h] : r.entropy) jr["entropy"]["H" + std::to_string(k)] = h;
    if (r.has_grammar) {
      jr["grammar"] = {{"nonterminals", r.nonterminals},
                       {"size", r.grammar_size},
                       {"iterations", r.iterations}};
    } else {
      jr["grammar"] = nullptr;
    }
    jr["phrases"] = r.phrases;
    jr["encodings"] = json::array();
    for (const auto& [e, sz] : r.encodings) {
      jr["encodings"].push_back({{"encoding", encoding_name(e)},
                                 {"payload_bits", sz.payload_bits},
                                 {"dictionary_bits", sz.dictionary_bits},
                                 {"lengths_side_bits", sz.lengths_side_bits},
                                 {"total_bits", sz.total_bits},
                                 {"main_term_bits", sz.main_term_bits},
                                 {"formula_bound_bits", sz.formula_bound_bits},
                                 {"slack_coefficient", sz.slack_coefficient},
                                 {"ideal_bits", sz.ideal_bits}});
    }
    jr["ratios"] = json::object();
    for (const auto& [name, v] : r.ratios) jr["ratios"][name] = v;
    jr["bounds"] = json::array();
    for (const auto& row : r.bounds.rows) {
      jr["bounds"].push_back({{"name", row.name},
                              {"lhs_bits", row.lhs_bits},
                              {"rhs_bits", row.rhs_bits},
                              {"slack_bits", row.slack_bits},
                              {"pass", row.pass},
                              {"note", row.note}});
    }
    jr["error"] = r.error;
    jr["pass"] = r.ok();
    j["results"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

}  // namespace gcl
