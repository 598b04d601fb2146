#pragma once

#include <cstddef>
#include <vector>

#include "tincalc/geom.hpp"

namespace tincalc {

struct Location {
  enum class Kind { Inside, OnEdge, OnVertex, Outside };

  Kind kind = Kind::Outside;
  /// Triangle index, edge index (tin_edges order) or vertex index.
  std::size_t index = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

/// Locates every query point in the terrain with one left-to-right sweep.
/// Requires a valid terrain without vertical edges (throws VerticalEdge).
std::vector<Location> batch_locate(const Tin& t, const std::vector<Point>& pts);

/// Reference classification by testing every triangle.
Location locate_brute_force(const Tin& t, const Point& p);

}  // namespace tincalc
