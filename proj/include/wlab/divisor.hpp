#pragma once

#include <vector>

#include "wlab/meromorphic.hpp"

namespace wlab {

/// Formal sum of chart points: branch points carry multiplicities m >= 1,
/// ends carry branch orders k >= 0 (end multiplicity is k+1).
struct Divisor {
  enum class Kind { branch_points, ends };
  struct Entry {
    PointOnSphere point;
    int order; ///< m for branch points, k for ends
  };
  Kind kind = Kind::branch_points;
  std::vector<Entry> entries;

  static Divisor branch(std::vector<Entry> e) { return {Kind::branch_points, std::move(e)}; }
  static Divisor ends(std::vector<Entry> e) { return {Kind::ends, std::move(e)}; }

  int size() const { return static_cast<int>(entries.size()); }
  /// |D| = sum of multiplicities
  int total_multiplicity() const {
    int t = 0;
    for (const auto& e : entries) t += kind == Kind::ends ? e.order + 1 : e.order;
    return t;
  }
  /// sum of (m(p) - 1) over branch points
  int excess() const {
    int t = 0;
    for (const auto& e : entries) t += e.order - 1;
    return t;
  }
};

} // namespace wlab
