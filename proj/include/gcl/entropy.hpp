#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gcl/text.hpp"

namespace gcl {

struct EntropyValue {
  double total_bits = 0;       // |S| H_k(S)
  double bits_per_symbol = 0;  // H_k(S)
};

struct EntropyProfile {
  struct Order {
    int k = 0;
    double total_bits = 0;
    double bits_per_symbol = 0;
  };
  std::vector<Order> per_order;  // k = 0..k_max
  bool cyclic = false;
  // l -> (1/l) * sum_{i<l} H_i, bits per symbol, for l = 1..k_max+1.
  std::map<int, double> mean_up_to;
};

// |S| H_k(S). In linear mode the context counts |S|_v include an occurrence
// of v as a suffix of S (which has no following letter). In cyclic mode all
// counts wrap around and k < |S| is required.
EntropyValue empirical_entropy(const Text& text, int k, bool cyclic);

EntropyProfile entropy_profile(const Text& text, int k_max, bool cyclic);

// Class ids of the windows S[i..i+len) for i = 0..|S|-len (linear) or
// i = 0..|S|-1 (cyclic, wrapping). Equal windows share an id; ids are dense.
std::vector<std::uint32_t> window_classes(const Text& text, std::size_t len, bool cyclic);

// Calls visit(len, classes) with window_classes(text, len, cyclic) for
// len = 0..max_len, refining the classes one symbol at a time.
void for_each_window_length(
    const Text& text, std::size_t max_len, bool cyclic,
    const std::function<void(std::size_t, const std::vector<std::uint32_t>&)>& visit);

// sum_c c log(total / c) for a histogram.
double entropy_of_counts(std::span<const std::uint64_t> counts);

// |w| H_0(w) of an arbitrary id sequence.
double zero_order_bits(std::span<const std::uint64_t> ids);
double zero_order_bits(std::span<const Symbol> ids);

}  // namespace gcl
