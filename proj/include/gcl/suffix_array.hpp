#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gcl {

// SA-IS over an integer alphabet: every s[i] < alphabet.
std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> s, std::uint32_t alphabet);

// lcp[i] = LCP of suffixes sa[i-1] and sa[i]; lcp[0] = 0 (Kasai et al.).
std::vector<std::uint32_t> lcp_array(std::span<const std::uint32_t> s,
                                     std::span<const std::uint32_t> sa);

}  // namespace gcl
