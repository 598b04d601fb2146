#include "tincalc/geom.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "tincalc/errors.hpp"

namespace tincalc {

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Scalar orient(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

LinearFunc plane_from_triangle(const Vertex& p1, const Vertex& p2, const Vertex& p3) {
  const Scalar dx2 = p2.x - p1.x, dy2 = p2.y - p1.y, dz2 = p2.z - p1.z;
  const Scalar dx3 = p3.x - p1.x, dy3 = p3.y - p1.y, dz3 = p3.z - p1.z;
  const Scalar det = dx2 * dy3 - dx3 * dy2;
  if (det == 0) throw DegenerateTriangle("triangle vertices are collinear");
  LinearFunc f;
  f.b = (dz2 * dy3 - dz3 * dy2) / det;
  f.c = (dx2 * dz3 - dx3 * dz2) / det;
  f.a = p1.z - f.b * p1.x - f.c * p1.y;
  return f;
}

std::vector<LinearFunc> triangle_functions(const Tin& t) {
  std::vector<LinearFunc> out;
  out.reserve(t.triangles.size());
  for (const auto& tri : t.triangles)
    out.push_back(plane_from_triangle(t.vertices[tri[0]], t.vertices[tri[1]], t.vertices[tri[2]]));
  return out;
}

std::vector<TinEdge> tin_edges(const Tin& t) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<TinEdge> edges;
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& tri = t.triangles[ti];
    for (int k = 0; k < 3; ++k) {
      std::size_t a = tri[k], b = tri[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] = index.emplace(key, edges.size());
      if (inserted) {
        edges.push_back({key.first, key.second, {static_cast<std::ptrdiff_t>(ti), -1}});
      } else {
        TinEdge& e = edges[it->second];
        if (e.triangles[1] >= 0)
          throw InvalidParameter("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") has more than two incident triangles");
        e.triangles[1] = static_cast<std::ptrdiff_t>(ti);
      }
    }
  }
  return edges;
}

namespace {

std::size_t third_vertex(const Triangle& tri, std::size_t a, std::size_t b) {
  for (std::size_t v : tri)
    if (v != a && v != b) return v;
  throw InvalidParameter("edge is not part of its incident triangle");
}

}  // namespace

std::vector<EdgeData> build_edge_data(const Tin& t) {
  const auto edges = tin_edges(t);
  const auto funcs = triangle_functions(t);
  std::vector<EdgeData> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    Point pa = t.point(e.a), pb = t.point(e.b);
    EdgeData d;
    if (point_less(pa, pb)) {
      d.endpoints = {e.a, e.b};
    } else {
      d.endpoints = {e.b, e.a};
      std::swap(pa, pb);
    }
    if (pa.x == pb.x)
      throw VerticalEdge("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") is vertical");
    d.slope = (pb.y - pa.y) / (pb.x - pa.x);
    d.y_intercept = pa.y - d.slope * pa.x;
    d.is_boundary = e.is_boundary();
    for (std::ptrdiff_t ti : e.triangles) {
      if (ti < 0) continue;
      const Point w = t.point(third_vertex(t.triangles[ti], e.a, e.b));
      const bool above = w.y > d.y_intercept + d.slope * w.x;
      if (above) {
        if (d.upper_triangle >= 0) throw InvalidParameter("both triangles above an edge");
        d.upper_triangle = ti;
        d.upper = funcs[ti];
      } else {
        if (d.lower_triangle >= 0) throw InvalidParameter("both triangles below an edge");
        d.lower_triangle = ti;
        d.lower = funcs[ti];
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

Tin apply_transform(const Tin& t, const TransformRecord& tr) {
  Tin out = t;
  for (auto& v : out.vertices) v.x = v.x + tr.shear * v.y + tr.shift;
  return out;
}

NormalizedPair normalize_pair(const Tin& f, const Tin& g, std::uint64_t seed) {
  std::vector<Point> directions;
  for (const Tin* t : {&f, &g})
    for (const auto& e : tin_edges(*t)) {
      Point d{t->vertices[e.b].x - t->vertices[e.a].x, t->vertices[e.b].y - t->vertices[e.a].y};
      directions.push_back(d);
    }

  std::mt19937_64 rng(seed);
  Scalar shear;
  for (int attempt = 0;; ++attempt) {
    // Small rationals first; widen the pool if every draw keeps failing.
    const long max_den = 7 + attempt;
    std::uniform_int_distribution<long> den_dist(2, max_den);
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(1, den - 1);
    shear = Scalar(num_dist(rng), den);
    shear.canonicalize();
    bool good = true;
    for (const auto& d : directions)
      if (d.x + shear * d.y == 0) {
        good = false;
        break;
      }
    if (good) break;
  }

  Scalar min_x;
  bool first = true;
  for (const Tin* t : {&f, &g})
    for (const auto& v : t->vertices) {
      Scalar x = v.x + shear * v.y;
      if (first || x < min_x) min_x = x;
      first = false;
    }
  TransformRecord tr{shear, Scalar(1) - min_x};
  return {apply_transform(f, tr), apply_transform(g, tr), tr};
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidTin: return "invalid-tin";
    case ViolationKind::DomainMismatch: return "domain-mismatch";
    case ViolationKind::VertexOnEdge: return "vertex-on-edge";
    case ViolationKind::SharedInteriorVertex: return "shared-interior-vertex";
    case ViolationKind::CollinearOverlap: return "collinear-overlap";
  }
  return "unknown";
}

bool Report::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

bool on_rect_boundary(const Rect& r, const Point& p) {
  const bool in_x = p.x >= r.xmin && p.x <= r.xmax;
  const bool in_y = p.y >= r.ymin && p.y <= r.ymax;
  return ((p.x == r.xmin || p.x == r.xmax) && in_y) || ((p.y == r.ymin || p.y == r.ymax) && in_x);
}

namespace {

bool on_same_side(const Rect& r, const Point& a, const Point& b) {
  return (a.x == r.xmin && b.x == r.xmin) || (a.x == r.xmax && b.x == r.xmax) ||
         (a.y == r.ymin && b.y == r.ymin) || (a.y == r.ymax && b.y == r.ymax);
}

std::string describe(const Point& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

// Conservative floating-point bounding box used only to skip exact tests.
struct Box {
  double x0, y0, x1, y1;

  static Box of(const Point& a, const Point& b) {
    const double ax = a.x.get_d(), ay = a.y.get_d(), bx = b.x.get_d(), by = b.y.get_d();
    Box box{std::min(ax, bx), std::min(ay, by), std::max(ax, bx), std::max(ay, by)};
    const double pad = 1e-9 * (1.0 + std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by)}));
    box.x0 -= pad;
    box.y0 -= pad;
    box.x1 += pad;
    box.y1 += pad;
    return box;
  }
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

// p strictly inside segment ab (collinear, not an endpoint).
bool in_relative_interior(const Point& a, const Point& b, const Point& p) {
  if (orient(a, b, p) != 0) return false;
  if (p == a || p == b) return false;
  const Scalar dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  const Scalar len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  return dot > 0 && dot < len2;
}

void check_vertices_against_edges(const Tin& owner, const char* owner_name, const Tin& other,
                                  const char* other_name, Report& report) {
  const auto edges = tin_edges(other);
  std::vector<Box> boxes;
  boxes.reserve(edges.size());
  for (const auto& e : edges) boxes.push_back(Box::of(other.point(e.a), other.point(e.b)));
  for (std::size_t vi = 0; vi < owner.vertices.size(); ++vi) {
    const Point p = owner.point(vi);
    const Box pb = Box::of(p, p);
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      if (!boxes[ei].overlaps(pb) || edges[ei].is_boundary()) continue;
      if (in_relative_interior(other.point(edges[ei].a), other.point(edges[ei].b), p)) {
        report.violations.push_back(
            {ViolationKind::VertexOnEdge, std::string(owner_name) + " vertex " + std::to_string(vi) + " " +
                                              describe(p) + " lies inside interior edge (" +
                                              std::to_string(edges[ei].a) + "," + std::to_string(edges[ei].b) +
                                              ") of " + other_name});
      }
    }
  }
}

}  // namespace

Report validate_tin(const Tin& t) {
  Report report;
  auto fail = [&](std::string msg) { report.violations.push_back({ViolationKind::InvalidTin, std::move(msg)}); };
  const Rect& r = t.domain;
  if (!(r.xmin < r.xmax && r.ymin < r.ymax)) {
    fail("empty domain rectangle");
    return report;
  }
  if (t.triangles.empty()) {
    fail("no triangles");
    return report;
  }
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    const Point p = t.point(i);
    if (p.x < r.xmin || p.x > r.xmax || p.y < r.ymin || p.y > r.ymax)
      fail("vertex " + std::to_string(i) + " " + describe(p) + " outside the domain");
  }
  std::vector<bool> referenced(t.vertices.size(), false);
  Scalar area_sum = 0;
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const auto& tri = t.triangles[ti];
    bool in_range = true;
    for (std::size_t v : tri)
      if (v >= t.vertices.size()) in_range = false;
    if (!in_range) {
      fail("triangle " + std::to_string(ti) + " references a missing vertex");
      return report;
    }
    for (std::size_t v : tri) referenced[v] = true;
    const Scalar twice_area = orient(t.point(tri[0]), t.point(tri[1]), t.point(tri[2]));
    if (twice_area <= 0) fail("triangle " + std::to_string(ti) + " is not counterclockwise with positive area");
    area_sum += twice_area;
  }
  for (std::size_t i = 0; i < referenced.size(); ++i)
    if (!referenced[i]) fail("vertex " + std::to_string(i) + " is not used by any triangle");

  std::vector<std::size_t> order(t.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return point_less(t.point(a), t.point(b)); });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (t.point(order[i]) == t.point(order[i - 1]))
      fail("vertices " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) + " coincide");

  std::vector<TinEdge> edges;
  try {
    edges = tin_edges(t);
  } catch (const Error& e) {
    fail(e.what());
    return report;
  }
  for (const auto& e : edges) {
    if (e.is_boundary() && !on_same_side(r, t.point(e.a), t.point(e.b)))
      fail("boundary edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") is not on the domain boundary");
  }
  if (area_sum != 2 * r.area()) fail("triangle areas do not sum to the domain area");
  return report;
}

Report validate_pair(const Tin& f, const Tin& g) {
  Report report;
  for (const auto& [name, t] : {std::pair<const char*, const Tin*>{"f", &f}, {"g", &g}}) {
    for (auto& v : validate_tin(*t).violations)
      report.violations.push_back({v.kind, std::string(name) + ": " + v.detail});
  }
  if (!report.ok()) return report;
  if (!(f.domain == g.domain)) {
    report.violations.push_back({ViolationKind::DomainMismatch, "f and g triangulate different rectangles"});
    return report;
  }

  // Coincident vertices: only allowed on the domain boundary.
  std::map<std::pair<Scalar, Scalar>, std::size_t> f_points;
  for (std::size_t i = 0; i < f.vertices.size(); ++i) f_points.emplace(std::pair{f.vertices[i].x, f.vertices[i].y}, i);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    auto it = f_points.find({g.vertices[i].x, g.vertices[i].y});
    if (it != f_points.end() && !on_rect_boundary(f.domain, g.point(i)))
      report.violations.push_back({ViolationKind::SharedInteriorVertex,
                                   "f vertex " + std::to_string(it->second) + " and g vertex " + std::to_string(i) +
                                       " coincide at " + describe(g.point(i))});
  }

  check_vertices_against_edges(g, "g", f, "f", report);
  check_vertices_against_edges(f, "f", g, "g", report);

  // Collinear overlap between interior edges.
  const auto fe = tin_edges(f);
  const auto ge = tin_edges(g);
  std::vector<Box> gboxes;
  for (const auto& e : ge) gboxes.push_back(Box::of(g.point(e.a), g.point(e.b)));
  for (const auto& e1 : fe) {
    if (e1.is_boundary()) continue;
    const Point a = f.point(e1.a), b = f.point(e1.b);
    const Box box = Box::of(a, b);
    for (std::size_t j = 0; j < ge.size(); ++j) {
      const auto& e2 = ge[j];
      if (e2.is_boundary() || !box.overlaps(gboxes[j])) continue;
      const Point c = g.point(e2.a), d = g.point(e2.b);
      if (orient(a, b, c) != 0 || orient(a, b, d) != 0) continue;
      // Collinear: project onto the dominant axis and compare intervals.
      const bool use_x = a.x != b.x;
      auto key = [&](const Point& p) { return use_x ? p.x : p.y; };
      Scalar lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
      Scalar lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
      if (std::max(lo1, lo2) < std::min(hi1, hi2))
        report.violations.push_back({ViolationKind::CollinearOverlap,
                                     "interior edges f(" + std::to_string(e1.a) + "," + std::to_string(e1.b) + ") and g(" +
                                         std::to_string(e2.a) + "," + std::to_string(e2.b) + ") overlap"});
    }
  }
  return report;
}

}  // namespace tincalc
