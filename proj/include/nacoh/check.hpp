#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nacoh {

/// Outcome of one exhaustive identity scan. A failing check carries the first
/// witness found in row-major index order.
struct Check {
  std::string name;
  bool ok = true;
  std::vector<std::int64_t> witness;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    for (auto const& c : checks)
      if (!c.ok) return false;
    return true;
  }

  Check const* first_failure() const {
    for (auto const& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }

  Check const* find(std::string const& name) const {
    for (auto const& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(Report const& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

inline Check pass(std::string name) { return Check{std::move(name), true, {}, {}}; }

inline Check fail(std::string name, std::vector<std::int64_t> witness, std::string detail = {}) {
  return Check{std::move(name), false, std::move(witness), std::move(detail)};
}

}  // namespace nacoh
