#pragma once

#include <array>
#include <vector>

#include "tincalc/geom.hpp"
#include "tincalc/sympoly.hpp"

namespace tincalc {

using TrianglePts = std::array<Point, 3>;

/// Signed corner term: delta times the wedge integral of h.
struct WedgeTerm {
  WedgeLines lines;
  int delta = 1;
  Quadratic h;

  Scalar value() const { return delta * wedge_integral(lines, h); }
};

/// t1 intersected with t2 as a counterclockwise polygon; empty when the
/// intersection has zero area.
std::vector<Point> clip_triangles(const TrianglePts& t1, const TrianglePts& t2);

/// Exact integral of f*g over a triangle (edge-midpoint rule).
Scalar integrate_product_over_triangle(const LinearFunc& f, const LinearFunc& g, const TrianglePts& tri);

/// Integral of f*g over the common domain by clipping every pair of
/// triangles. Quadratic in the number of triangles.
Scalar naive_inner_product(const Tin& f, const Tin& g);

/// One term per overlay-cell corner located at a vertex of either terrain.
/// Requires a general-position pair without vertical edges; throws
/// DegenerateInput when a vertex lies inside an interior edge of the other
/// terrain or both terrains share an interior vertex.
std::vector<WedgeTerm> vertex_terms(const Tin& f, const Tin& g);
Scalar vertex_term_sum(const Tin& f, const Tin& g);

/// Contribution of the four cells around the crossing of two interior edges.
/// `literal` sums the four cell products; otherwise the equivalent
/// -(jump_f)(jump_g) form is used. Throws DegenerateInput when the edges do
/// not cross transversally.
Scalar crossing_contribution(const Tin& f, const EdgeData& e1, const Tin& g, const EdgeData& e2,
                             bool literal = true);

/// Sum of crossing_contribution over every crossing pair of interior edges.
Scalar naive_edge_term_sum(const Tin& f, const Tin& g);

}  // namespace tincalc
