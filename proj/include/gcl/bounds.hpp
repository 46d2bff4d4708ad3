#pragma once

#include <string>
#include <vector>

namespace gcl {

// One checked inequality: lhs <= rhs + slack.
struct BoundRow {
  std::string name;
  double lhs_bits = 0;
  double rhs_bits = 0;
  double slack_bits = 0;
  bool pass = false;
  std::string note;
};

BoundRow make_bound_row(std::string name, double lhs, double rhs, double slack,
                        std::string note = {});

// Same row type for flag-style checks (lhs/rhs hold the compared quantities).
BoundRow make_flag_row(std::string name, double lhs, double rhs, bool pass, std::string note = {});

struct BoundReport {
  std::vector<BoundRow> rows;

  bool all_pass() const;
  const BoundRow* find(const std::string& name) const;
  void append(const BoundReport& other);
};

}  // namespace gcl
