#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tincalc/scalar.hpp"

namespace tincalc {

struct Point {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Lexicographic (x, then y) order on points.
bool point_less(const Point& a, const Point& b);

/// Twice the signed area of (a, b, c): positive for a counterclockwise turn.
Scalar orient(const Point& a, const Point& b, const Point& c);

/// Cross product of two direction vectors.
Scalar cross(const Point& u, const Point& v);

struct Vertex {
  Scalar x;
  Scalar y;
  Scalar z;

  Point xy() const { return {x, y}; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Axis-aligned rectangle.
struct Rect {
  Scalar xmin;
  Scalar ymin;
  Scalar xmax;
  Scalar ymax;

  Scalar area() const { return (xmax - xmin) * (ymax - ymin); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using Triangle = std::array<std::size_t, 3>;

/// Triangulated irregular network: a piecewise-linear function over a
/// triangulated rectangle. Triangles are counterclockwise vertex triples.
struct Tin {
  std::vector<Vertex> vertices;
  std::vector<Triangle> triangles;
  Rect domain;

  Point point(std::size_t v) const { return vertices[v].xy(); }
  friend bool operator==(const Tin&, const Tin&) = default;
};

/// (x, y) -> a + b*x + c*y
struct LinearFunc {
  Scalar a;
  Scalar b;
  Scalar c;

  Scalar operator()(const Scalar& x, const Scalar& y) const { return a + b * x + c * y; }
  Scalar operator()(const Point& p) const { return (*this)(p.x, p.y); }
  LinearFunc operator-(const LinearFunc& o) const { return {a - o.a, b - o.b, c - o.c}; }
  LinearFunc operator*(const Scalar& k) const { return {a * k, b * k, c * k}; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
  friend bool operator==(const LinearFunc&, const LinearFunc&) = default;
};

/// Interpolating plane through three vertices. Throws DegenerateTriangle when
/// the projections are collinear.
LinearFunc plane_from_triangle(const Vertex& p1, const Vertex& p2, const Vertex& p3);

/// The linear function of every triangle, in triangle order.
std::vector<LinearFunc> triangle_functions(const Tin& t);

/// Undirected edge with its incident triangles (-1 when absent).
struct TinEdge {
  std::size_t a;
  std::size_t b;
  std::array<std::ptrdiff_t, 2> triangles{-1, -1};

  bool is_boundary() const { return triangles[1] < 0; }
};

/// Distinct edges of a triangulation, each listed once. Throws
/// InvalidParameter if an edge has more than two incident triangles.
std::vector<TinEdge> tin_edges(const Tin& t);

struct EdgeData {
  /// Vertex indices, ordered by x then y.
  std::array<std::size_t, 2> endpoints;
  /// Supporting line y = y_intercept + slope * x.
  Scalar y_intercept;
  Scalar slope;
  /// Interpolants of the triangles above and below the edge; zero when the
  /// side lies outside the domain.
  LinearFunc upper;
  LinearFunc lower;
  std::ptrdiff_t upper_triangle = -1;
  std::ptrdiff_t lower_triangle = -1;
  bool is_boundary = false;

  bool has_upper() const { return upper_triangle >= 0; }
  bool has_lower() const { return lower_triangle >= 0; }
  /// upper - lower: the jump of the function across the edge.
  LinearFunc jump() const { return upper - lower; }
};

/// One record per distinct edge, in tin_edges() order. Throws VerticalEdge if
/// any edge is vertical.
std::vector<EdgeData> build_edge_data(const Tin& t);

/// The area-preserving map (x, y) -> (x + shear*y + shift, y).
struct TransformRecord {
  Scalar shear;
  Scalar shift;

  Point apply(const Point& p) const { return {p.x + shear * p.y + shift, p.y}; }
};

Tin apply_transform(const Tin& t, const TransformRecord& tr);

struct NormalizedPair {
  Tin f;
  Tin g;
  TransformRecord transform;
};

/// Shears both terrains by a common rational factor so that no edge is
/// vertical and translates so that every x-coordinate is at least 1. Heights
/// are unchanged; the domain field keeps the original rectangle.
NormalizedPair normalize_pair(const Tin& f, const Tin& g, std::uint64_t seed = 0);

enum class ViolationKind {
  InvalidTin,
  DomainMismatch,
  VertexOnEdge,
  SharedInteriorVertex,
  CollinearOverlap,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Checks a single terrain: orientation, edge manifoldness, exact coverage of
/// the domain rectangle, distinct and referenced vertices.
Report validate_tin(const Tin& t);

/// Cross-terrain general-position check. O(n^2) in the worst case.
Report validate_pair(const Tin& f, const Tin& g);

/// True when p lies on the boundary of the rectangle.
bool on_rect_boundary(const Rect& r, const Point& p);

}  // namespace tincalc
