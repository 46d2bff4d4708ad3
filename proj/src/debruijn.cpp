#include "gcl/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gcl/entropy.hpp"

namespace gcl {

void GdBParams::validate() const {
  if (k < 1 || l < 0 || p < 1) throw std::invalid_argument("GdBParams: need k >= 1, l >= 0, p >= 1");
  if (length_exponent() > 30) {
    throw std::invalid_argument("GdBParams: word length 2^" + std::to_string(length_exponent()) +
                                " exceeds 2^30");
  }
}

std::string GdBParams::describe() const {
  return "k=" + std::to_string(k) + " l=" + std::to_string(l) + " p=" + std::to_string(p);
}

namespace {

void fkm(std::uint64_t t, std::uint64_t period, std::uint64_t q, std::uint64_t m,
         std::vector<Symbol>& a, std::vector<Symbol>& out) {
  if (t > m) {
    if (m % period == 0) out.insert(out.end(), a.begin() + 1, a.begin() + 1 + period);
    return;
  }
  a[t] = a[t - period];
  fkm(t + 1, period, q, m, a, out);
  for (Symbol j = a[t - period] + 1; j < q; ++j) {
    a[t] = j;
    fkm(t + 1, t, q, m, a, out);
  }
}

// One line-graph step: nodes are the cyclic windows of length len of s.
std::vector<Symbol> line_step(const std::vector<Symbol>& s, std::uint64_t sigma, std::size_t len,
                              std::uint64_t q) {
  const std::size_t n = s.size();
  Text t(s, sigma);
  {
    const auto full = window_classes(t, len, true);
    if (*std::max_element(full.begin(), full.end()) + 1ULL != n) {
      throw std::logic_error("line_step: repeated window of length " + std::to_string(len));
    }
  }
  // Successors of node i: nodes u whose (len-1)-prefix equals the (len-1)-suffix of i.
  const auto cls = window_classes(t, len - 1, true);
  const std::size_t classes = *std::max_element(cls.begin(), cls.end()) + 1ULL;
  std::vector<std::size_t> start(classes + 1, 0);
  for (auto c : cls) ++start[c + 1];
  for (std::size_t c = 0; c < classes; ++c) {
    if (start[c + 1] != q) throw std::logic_error("line_step: graph is not q-regular");
    start[c + 1] += start[c];
  }
  std::vector<std::uint32_t> bucket(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t u = 0; u < n; ++u) bucket[fill[cls[u]]++] = static_cast<std::uint32_t>(u);
  }
  auto last_letter = [&](std::uint32_t u) { return s[(u + len - 1) % n]; };
  for (std::size_t c = 0; c < classes; ++c) {
    std::sort(bucket.begin() + start[c], bucket.begin() + start[c + 1],
              [&](std::uint32_t a, std::uint32_t b) { return last_letter(a) < last_letter(b); });
  }

  // Hierholzer from node 0; every node has q unused out-edges at the start.
  std::vector<std::uint32_t> used(n, 0);
  std::vector<std::uint32_t> stack{0};
  std::vector<std::uint32_t> circuit;
  circuit.reserve(q * n + 1);
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    if (used[v] < q) {
      const auto c = cls[(v + 1) % n];
      stack.push_back(bucket[start[c] + used[v]++]);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  if (circuit.size() != q * n + 1) throw std::logic_error("line_step: graph is not connected");
  std::reverse(circuit.begin(), circuit.end());
  std::vector<Symbol> next(q * n);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = s[circuit[i]];
  return next;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Text base_debruijn(std::uint64_t q, std::uint64_t m) {
  if (q < 2 || m < 1) throw std::invalid_argument("base_debruijn: need q >= 2, m >= 1");
  if (m * std::log2(static_cast<double>(q)) > 30) throw std::invalid_argument("base_debruijn: too long");
  std::vector<Symbol> a(m + 1, 0), out;
  out.reserve(ipow(q, static_cast<int>(m)));
  fkm(1, 1, q, m, a, out);
  return Text(std::move(out), q);
}

Text build_s0(int k, int p) {
  GdBParams params{k, 0, p};
  params.validate();
  const std::uint64_t q = params.root();
  const Text b = base_debruijn(q, 2 * static_cast<std::uint64_t>(k) + 1);
  const std::size_t n = b.size();  // odd power of q, so pairs wrap at the odd phase
  std::vector<Symbol> s;
  s.reserve(n);
  for (std::size_t i = 0; i + 1 < n; i += 2) s.push_back(static_cast<Symbol>(b[i] * q + b[i + 1]));
  for (std::size_t i = 1; i < n; i += 2) s.push_back(static_cast<Symbol>(b[i] * q + b[(i + 1) % n]));
  return Text(std::move(s), q * q);
}

Text generalized_word(const GdBParams& params) {
  params.validate();
  Text s0 = build_s0(params.k, params.p);
  std::vector<Symbol> s = s0.to_vector();
  for (int i = 1; i <= params.l; ++i) {
    s = line_step(s, params.sigma(), static_cast<std::size_t>(params.k + i), params.root());
  }
  return Text(std::move(s), params.sigma());
}

GdBCertificate verify_gdb(const Text& text, const GdBParams& params) {
  params.validate();
  if (text.size() != params.length()) {
    throw std::invalid_argument("verify_gdb: length " + std::to_string(text.size()) +
                                " does not match 2^" + std::to_string(params.length_exponent()));
  }
  const std::uint64_t sigma = params.sigma();
  const std::uint64_t q = params.root();
  const int k = params.k, z = params.z();

  GdBCertificate cert;
  cert.params = params;
  cert.length = text.size();
  cert.db1 = cert.db2 = cert.db3 = true;
  for_each_window_length(text, static_cast<std::size_t>(z), true,
                         [&](std::size_t len, const std::vector<std::uint32_t>& cls) {
    if (len == 0) return;
    const int i = static_cast<int>(len);
    GdBLevel level;
    level.length = i;
    // sigma^(k-i+(l+1)/2) = q^(2(k-i)+l+1); sigma^((z-i)/2) = q^(z-i).
    level.expected = i < k ? ipow(q, 2 * (k - i) + params.l + 1) : ipow(q, z - i);
    std::vector<std::uint64_t> counts;
    for (auto c : cls) {
      if (c >= counts.size()) counts.resize(c + 1ULL, 0);
      ++counts[c];
    }
    level.words_present = counts.size();
    for (auto c : counts) ++level.count_histogram[c];
    const bool uniform = level.count_histogram.size() == 1 &&
                         level.count_histogram.begin()->first == level.expected;
    if (i < k) {
      level.pass = uniform && level.words_present == ipow(sigma, i);
      cert.db1 = cert.db1 && level.pass;
    } else {
      level.pass = uniform;
      cert.db2 = cert.db2 && level.pass;
    }
    if (i == z) cert.db3 = level.count_histogram.size() == 1 && level.count_histogram.begin()->first == 1;
    cert.levels.push_back(std::move(level));
  });

  const auto lin = entropy_profile(text, k + params.l, false);
  const auto cyc = entropy_profile(text, k + params.l, true);
  const double logn = std::log2(static_cast<double>(text.size()));
  const double logsigma = std::log2(static_cast<double>(sigma));
  cert.entropy_upper_ok = true;
  for (int i = 0; i <= k + params.l; ++i) {
    GdBEntropyRow row;
    row.order = i;
    row.target = i < k ? logsigma : logsigma / 2;
    row.cyclic = cyc.per_order[i].bits_per_symbol;
    row.linear = lin.per_order[i].bits_per_symbol;
    row.upper_ok = row.cyclic <= row.target + 1e-9;
    if (i >= 1) {
      const double gap = std::max(std::fabs(row.target - row.linear), row.target - row.cyclic);
      row.slack_constant = std::max(0.0, gap) * static_cast<double>(text.size()) / (i * logn);
    } else if (std::fabs(row.target - row.linear) > 1e-9) {
      row.upper_ok = false;
    }
    cert.entropy_upper_ok = cert.entropy_upper_ok && row.upper_ok;
    cert.max_slack_constant = std::max(cert.max_slack_constant, row.slack_constant);
    cert.entropy.push_back(row);
  }
  return cert;
}

std::string certificate_json(const GdBCertificate& cert) {
  nlohmann::ordered_json j;
  j["k"] = cert.params.k;
  j["l"] = cert.params.l;
  j["p"] = cert.params.p;
  j["sigma"] = cert.params.sigma();
  j["length"] = cert.length;
  j["dB1"] = cert.db1;
  j["dB2"] = cert.db2;
  j["dB3"] = cert.db3;
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& lv : cert.levels) {
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (auto [c, w] : lv.count_histogram) h[std::to_string(c)] = w;
    j["levels"].push_back({{"length", lv.length},
                           {"expected", lv.expected},
                           {"words_present", lv.words_present},
                           {"count_histogram", h},
                           {"pass", lv.pass}});
  }
  j["entropy"] = nlohmann::ordered_json::array();
  for (const auto& r : cert.entropy) {
    j["entropy"].push_back({{"order", r.order},
                            {"target", r.target},
                            {"cyclic", r.cyclic},
                            {"linear", r.linear},
                            {"slack_constant", r.slack_constant},
                            {"upper_ok", r.upper_ok}});
  }
  j["max_slack_constant"] = cert.max_slack_constant;
  j["entropy_upper_ok"] = cert.entropy_upper_ok;
  return j.dump(2);
}

BoundReport lower_bound_check(const Text& text, const Parsing& parsing, const GdBParams& params) {
  params.validate();
  BoundReport report;
  const double n = static_cast<double>(text.size());
  const double m = static_cast<double>(parsing.size());
  const double logsigma = std::log2(static_cast<double>(params.sigma()));
  const int k = params.k, z = params.z();

  const auto maxlen = static_cast<double>(parsing.max_phrase_length());
  const bool short_phrases = maxlen <= z;
  report.rows.push_back(make_flag_row("debruijn_phrase_length", maxlen, z, short_phrases,
                                      "longest phrase vs k+l+1"));

  const double y_bits = parsing_entropy_bits(parsing);
  const double lower = n * (z + k) / (2.0 * z) * logsigma - m * std::log2(n / m);
  if (short_phrases) {
    report.rows.push_back(make_bound_row("debruijn_lower_bound", lower, y_bits, 1e-6,
                                         "|Y|H0(Y) >= n(z+k)/(2z) log sigma - m log(n/m)"));
  } else {
    report.rows.push_back(make_flag_row("debruijn_lower_bound", lower, y_bits, true,
                                        "not applied: a phrase is longer than k+l+1"));
  }

  const auto natural = is_natural_parsing(parsing);
  report.rows.push_back(make_flag_row("debruijn_natural_parsing",
                                      static_cast<double>(natural.violations.size()), 0,
                                      natural.natural, "violating phrases"));

  const double hk = empirical_entropy(text, k, false).bits_per_symbol;
  const double logn_sigma = std::log2(n) / logsigma;
  const double rho = k / (2 * logn_sigma - k);
  const double lambda = m / n * std::log2(n / m);
  const double ratio = y_bits / (n * hk);
  const double target = 1 + rho - lambda / hk;
  if (short_phrases) {
    report.rows.push_back(make_bound_row("debruijn_ratio", target, ratio, 1e-9,
                                         "|Y|H0(Y)/(|S|H_k) >= 1 + rho - lambda/H_k"));
  } else {
    report.rows.push_back(make_flag_row("debruijn_ratio", target, ratio, true,
                                        "not applied: a phrase is longer than k+l+1"));
  }
  report.rows.push_back(make_bound_row("debruijn_lambda", lambda, std::log2(std::exp(1.0)) / std::exp(1.0),
                                       1e-12, "(m/n) log(n/m) <= log(e)/e"));
  return report;
}

}  // namespace gcl
