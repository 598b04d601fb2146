#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tincalc/geom.hpp"

namespace tincalc {

/// Non-vertical segment with a.x < b.x.
struct Segment {
  Point a;
  Point b;

  Scalar slope() const { return (b.y - a.y) / (b.x - a.x); }
};

/// Orients a segment left to right. Throws VerticalEdge.
Segment make_segment(const Point& p, const Point& q);

/// Complete bipartite set of crossing pairs: every red crosses every blue.
struct Clique {
  std::vector<std::size_t> red;
  std::vector<std::size_t> blue;
  /// True when every red slope is below every blue slope.
  bool red_lower;
};

struct CliqueFamily {
  std::vector<Clique> cliques;

  /// Sum of |R| + |B| over all cliques.
  std::size_t total_size() const;
  /// Number of red/blue pairs covered (with multiplicity).
  std::size_t pair_count() const;
};

/// Covers every transversal red/blue crossing exactly once. Reds must not
/// cross reds, blues must not cross blues. Crossings on a slab boundary
/// belong to the slab on their right. Throws DegenerateInput on touching or
/// overlapping red/blue pairs other than shared endpoints.
CliqueFamily build_clique_cover(const std::vector<Segment>& red, const std::vector<Segment>& blue);

/// True when the open segments cross at a single point interior to both.
bool segments_cross(const Segment& r, const Segment& b);

struct CoverCheck {
  bool all_cross = true;      // every pair listed in a clique crosses
  bool slopes_separated = true;
  bool exactly_once = true;   // each crossing pair listed once, no extras
  std::size_t crossings = 0;
  std::size_t total_size = 0;
  std::vector<std::string> problems;

  bool ok() const { return all_cross && slopes_separated && exactly_once; }
};

/// Brute-force check of a clique family against all red/blue pairs.
CoverCheck verify_clique_cover(const CliqueFamily& fam, const std::vector<Segment>& red,
                               const std::vector<Segment>& blue);

struct CoverStats {
  std::size_t segments = 0;
  std::size_t cliques = 0;
  std::size_t total_size = 0;
  std::size_t crossings = 0;
  /// total_size / (n log2^2 n) with n the number of segments.
  double ratio = 0;
};

CoverStats cover_stats(const CliqueFamily& fam, std::size_t segments);

/// Interior edges of a terrain as segments, in build_edge_data order
/// restricted to non-boundary edges; `edge_ids` receives the indices into
/// build_edge_data.
std::vector<Segment> interior_segments(const Tin& t, const std::vector<EdgeData>& edges,
                                       std::vector<std::size_t>* edge_ids = nullptr);

}  // namespace tincalc
