#include "gcl/suffix_array.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcl {

namespace {

// Induced sorting; s has no sentinel, values in [0, upper].
std::vector<std::uint32_t> sa_is(const std::vector<std::uint32_t>& s, std::uint32_t upper) {
  const std::size_t n = s.size();
  if (n == 0) return {};
  if (n == 1) return {0};
  if (n == 2) return s[0] < s[1] ? std::vector<std::uint32_t>{0, 1} : std::vector<std::uint32_t>{1, 0};
  constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::vector<std::uint32_t> sa(n);
  std::vector<bool> ls(n, false);  // true = S-type
  for (std::size_t i = n - 1; i-- > 0;) {
    ls[i] = s[i] == s[i + 1] ? ls[i + 1] : s[i] < s[i + 1];
  }
  std::vector<std::uint32_t> sum_l(upper + 2, 0), sum_s(upper + 2, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!ls[i]) {
      ++sum_s[s[i]];
    } else {
      ++sum_l[s[i] + 1];
    }
  }
  for (std::uint32_t i = 0; i <= upper; ++i) {
    sum_s[i] += sum_l[i];
    if (i < upper) sum_l[i + 1] += sum_s[i];
  }

  auto induce = [&](const std::vector<std::uint32_t>& lms) {
    std::fill(sa.begin(), sa.end(), kEmpty);
    std::vector<std::uint32_t> buf(upper + 1);
    std::copy(sum_s.begin(), sum_s.begin() + upper + 1, buf.begin());
    for (auto d : lms) {
      if (d == n) continue;
      sa[buf[s[d]]++] = d;
    }
    std::copy(sum_l.begin(), sum_l.begin() + upper + 1, buf.begin());
    sa[buf[s[n - 1]]++] = static_cast<std::uint32_t>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t v = sa[i];
      if (v != kEmpty && v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    std::copy(sum_l.begin(), sum_l.begin() + upper + 1, buf.begin());
    for (std::size_t i = n; i-- > 0;) {
      const std::uint32_t v = sa[i];
      if (v != kEmpty && v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<std::uint32_t> lms_map(n + 1, kEmpty);
  std::uint32_t m = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (!ls[i - 1] && ls[i]) lms_map[i] = m++;
  }
  std::vector<std::uint32_t> lms;
  lms.reserve(m);
  for (std::size_t i = 1; i < n; ++i) {
    if (!ls[i - 1] && ls[i]) lms.push_back(static_cast<std::uint32_t>(i));
  }
  induce(lms);

  if (m) {
    std::vector<std::uint32_t> sorted_lms;
    sorted_lms.reserve(m);
    for (auto v : sa) {
      if (lms_map[v] != kEmpty) sorted_lms.push_back(v);
    }
    std::vector<std::uint32_t> rec_s(m);
    std::uint32_t rec_upper = 0;
    rec_s[lms_map[sorted_lms[0]]] = 0;
    for (std::uint32_t i = 1; i < m; ++i) {
      std::uint32_t l = sorted_lms[i - 1], r = sorted_lms[i];
      const std::uint32_t end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : static_cast<std::uint32_t>(n);
      const std::uint32_t end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : static_cast<std::uint32_t>(n);
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l) {
          if (s[l] != s[r]) break;
          ++l;
          ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++rec_upper;
      rec_s[lms_map[sorted_lms[i]]] = rec_upper;
    }
    const auto rec_sa = sa_is(rec_s, rec_upper);
    for (std::uint32_t i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    induce(sorted_lms);
  }
  return sa;
}

}  // namespace

std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> s, std::uint32_t alphabet) {
  if (s.size() >= 0x7fffffffULL) throw std::invalid_argument("suffix_array: input too long");
  if (s.empty()) return {};
  std::vector<std::uint32_t> v(s.begin(), s.end());
  for (auto x : v) {
    if (x >= alphabet) throw std::invalid_argument("suffix_array: symbol outside alphabet");
  }
  return sa_is(v, alphabet == 0 ? 0 : alphabet - 1);
}

std::vector<std::uint32_t> lcp_array(std::span<const std::uint32_t> s,
                                     std::span<const std::uint32_t> sa) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::uint32_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (h > 0) --h;
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
  }
  return lcp;
}

}  // namespace gcl
