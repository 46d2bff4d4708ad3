#include "gcl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace gcl {

namespace {

// Extends windows of length len by one symbol. `cls` holds the classes of
// the length-len windows.
std::vector<std::uint32_t> extend_classes(const Text& text, const std::vector<std::uint32_t>& cls,
                                          std::size_t len, bool cyclic) {
  const std::size_t n = text.size();
  const std::size_t count = cyclic ? n : (n >= len + 1 ? n - len : 0);
  auto next_of = [&](std::size_t i) { return text[cyclic ? (i + len) % n : i + len]; };
  std::vector<std::uint32_t> out(count);
  if (count == 0) return out;
  std::uint32_t cls_top = 0;
  for (std::size_t i = 0; i < count; ++i) cls_top = std::max(cls_top, cls[i]);

  std::vector<std::uint32_t> order(count);
  if (text.sigma() <= 4 * count + 256) {
    // LSD radix sort: by next symbol, then stably by current class.
    std::vector<std::uint32_t> by_sym(count);
    std::vector<std::uint32_t> bucket(text.sigma() + 1, 0);
    for (std::size_t i = 0; i < count; ++i) ++bucket[next_of(i) + 1];
    for (std::size_t c = 1; c < bucket.size(); ++c) bucket[c] += bucket[c - 1];
    for (std::size_t i = 0; i < count; ++i) by_sym[bucket[next_of(i)]++] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> cb(cls_top + 2, 0);
    for (std::size_t i = 0; i < count; ++i) ++cb[cls[i] + 1];
    for (std::size_t c = 1; c < cb.size(); ++c) cb[c] += cb[c - 1];
    for (std::uint32_t i : by_sym) order[cb[cls[i]]++] = i;
  } else {
    for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return cls[a] != cls[b] ? cls[a] < cls[b] : next_of(a) < next_of(b);
    });
  }
  std::uint32_t id = 0;
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0 && (cls[order[j]] != cls[order[j - 1]] || next_of(order[j]) != next_of(order[j - 1]))) ++id;
    out[order[j]] = id;
  }
  return out;
}

std::vector<std::uint64_t> histogram(const std::vector<std::uint32_t>& cls) {
  std::uint32_t top = 0;
  for (auto c : cls) top = std::max(top, c);
  std::vector<std::uint64_t> h(cls.empty() ? 0 : top + 1ULL, 0);
  for (auto c : cls) ++h[c];
  return h;
}

// sum over (k+1)-classes u of c_u log(c_parent(u) / c_u).
double conditional_bits(const std::vector<std::uint32_t>& ctx, std::uint64_t empty_ctx_count,
                        const std::vector<std::uint32_t>& ext, std::size_t k) {
  if (ext.empty()) return 0;
  const auto ctx_counts = histogram(ctx);
  const auto ext_counts = histogram(ext);
  std::vector<std::uint32_t> parent(ext_counts.size());
  for (std::size_t i = 0; i < ext.size(); ++i) parent[ext[i]] = ctx[i];
  double bits = 0;
  for (std::size_t u = 0; u < ext_counts.size(); ++u) {
    const double cu = static_cast<double>(ext_counts[u]);
    const double cv = k == 0 ? static_cast<double>(empty_ctx_count)
                             : static_cast<double>(ctx_counts[parent[u]]);
    bits += cu * std::log2(cv / cu);
  }
  return std::max(bits, 0.0);
}

void check_order(const Text& text, int k, bool cyclic) {
  if (k < 0) throw std::invalid_argument("entropy: order k must be non-negative");
  if (cyclic && !text.empty() && static_cast<std::size_t>(k) >= text.size()) {
    throw std::invalid_argument("entropy: cyclic mode requires k < |S|");
  }
}

}  // namespace

std::vector<std::uint32_t> window_classes(const Text& text, std::size_t len, bool cyclic) {
  const std::size_t n = text.size();
  if (cyclic && len > n) throw std::invalid_argument("window_classes: len > |S| in cyclic mode");
  if (!cyclic && len > n) return {};
  std::vector<std::uint32_t> cls(cyclic ? n : n - len + 1, 0);
  if (len == 0) return cls;
  cls.assign(n, 0);
  for (std::size_t l = 0; l < len; ++l) cls = extend_classes(text, cls, l, cyclic);
  return cls;
}

void for_each_window_length(
    const Text& text, std::size_t max_len, bool cyclic,
    const std::function<void(std::size_t, const std::vector<std::uint32_t>&)>& visit) {
  const std::size_t n = text.size();
  if (cyclic && max_len > n) throw std::invalid_argument("for_each_window_length: len > |S| in cyclic mode");
  std::vector<std::uint32_t> cls(cyclic ? n : n + 1, 0);
  visit(0, cls);
  cls.resize(n);
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (!cyclic && len > n) {
      visit(len, {});
      continue;
    }
    cls = extend_classes(text, cls, len - 1, cyclic);
    visit(len, cls);
  }
}

EntropyValue empirical_entropy(const Text& text, int k, bool cyclic) {
  check_order(text, k, cyclic);
  const std::size_t n = text.size();
  if (n == 0 || (!cyclic && static_cast<std::size_t>(k) >= n)) return {};
  const auto ctx = window_classes(text, k, cyclic);
  const auto ext = extend_classes(text, ctx, k, cyclic);
  const double bits = conditional_bits(ctx, n, ext, k);
  return {bits, bits / static_cast<double>(n)};
}

EntropyProfile entropy_profile(const Text& text, int k_max, bool cyclic) {
  if (k_max < 0) throw std::invalid_argument("entropy_profile: k_max must be non-negative");
  EntropyProfile prof;
  prof.cyclic = cyclic;
  const std::size_t n = text.size();
  std::vector<std::uint32_t> ctx(n, 0);
  double running = 0;
  for (int k = 0; k <= k_max; ++k) {
    EntropyProfile::Order row{k, 0, 0};
    const bool defined = n > 0 && static_cast<std::size_t>(k) < n;
    if (cyclic && n > 0 && !defined) {
      throw std::invalid_argument("entropy_profile: cyclic mode requires k_max < |S|");
    }
    if (defined) {
      auto ext = extend_classes(text, ctx, k, cyclic);
      row.total_bits = conditional_bits(ctx, n, ext, k);
      row.bits_per_symbol = row.total_bits / static_cast<double>(n);
      ctx = std::move(ext);
    }
    prof.per_order.push_back(row);
    running += row.bits_per_symbol;
    prof.mean_up_to[k + 1] = running / (k + 1);
  }
  return prof;
}

double entropy_of_counts(std::span<const std::uint64_t> counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  double bits = 0;
  for (auto c : counts) {
    if (c > 0) bits += static_cast<double>(c) * std::log2(total / static_cast<double>(c));
  }
  return bits;
}

double zero_order_bits(std::span<const std::uint64_t> ids) {
  std::unordered_map<std::uint64_t, std::uint64_t> freq;
  for (auto id : ids) ++freq[id];
  std::vector<std::uint64_t> counts;
  counts.reserve(freq.size());
  for (const auto& [id, c] : freq) counts.push_back(c);
  std::sort(counts.begin(), counts.end());  // fixed summation order
  return entropy_of_counts(counts);
}

double zero_order_bits(std::span<const Symbol> ids) {
  std::vector<std::uint64_t> wide(ids.begin(), ids.end());
  return zero_order_bits(std::span<const std::uint64_t>(wide));
}

}  // namespace gcl
