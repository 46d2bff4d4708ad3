#include "gcl/bounds.hpp"

#include <algorithm>

namespace gcl {

BoundRow make_bound_row(std::string name, double lhs, double rhs, double slack, std::string note) {
  BoundRow row{std::move(name), lhs, rhs, slack, lhs <= rhs + slack, std::move(note)};
  return row;
}

BoundRow make_flag_row(std::string name, double lhs, double rhs, bool pass, std::string note) {
  return BoundRow{std::move(name), lhs, rhs, 0, pass, std::move(note)};
}

bool BoundReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.pass; });
}

const BoundRow* BoundReport::find(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

void BoundReport::append(const BoundReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

}  // namespace gcl
