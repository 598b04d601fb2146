#include "tincalc/locate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tincalc/errors.hpp"

namespace tincalc {

namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return point_less(a, b); }
};

struct SweepEdge {
  std::size_t id;
  Scalar slope;
  Scalar intercept;
};

// Orders edges by height at the current sweep abscissa, then by slope. A
// bare Scalar key compares by height only (lookup of a query ordinate).
struct SweepOrder {
  using is_transparent = void;
  const Scalar* x;

  bool operator()(const SweepEdge* a, const SweepEdge* b) const {
    const Scalar ya = a->intercept + a->slope * *x;
    const Scalar yb = b->intercept + b->slope * *x;
    if (ya != yb) return ya < yb;
    return a->slope < b->slope;
  }
  bool operator()(const SweepEdge* a, const Scalar& y) const { return a->intercept + a->slope * *x < y; }
  bool operator()(const Scalar& y, const SweepEdge* b) const { return y < b->intercept + b->slope * *x; }
};

}  // namespace

std::vector<Location> batch_locate(const Tin& t, const std::vector<Point>& pts) {
  std::vector<Location> out(pts.size());
  const auto edges = build_edge_data(t);

  std::map<Point, std::size_t, PointLess> vertex_at;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) vertex_at.emplace(t.point(v), v);

  std::vector<SweepEdge> sweep_edges;
  sweep_edges.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) sweep_edges.push_back({i, edges[i].slope, edges[i].y_intercept});

  // Events keyed by abscissa.
  struct Bucket {
    std::vector<std::size_t> starts, ends, queries;
  };
  std::map<Scalar, Bucket> events;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    events[t.vertices[edges[i].endpoints[0]].x].starts.push_back(i);
    events[t.vertices[edges[i].endpoints[1]].x].ends.push_back(i);
  }
  for (std::size_t q = 0; q < pts.size(); ++q) {
    auto it = vertex_at.find(pts[q]);
    if (it != vertex_at.end()) {
      out[q] = {Location::Kind::OnVertex, it->second};
      continue;
    }
    events[pts[q].x].queries.push_back(q);
  }

  Scalar sweep_x;
  std::set<const SweepEdge*, SweepOrder> active(SweepOrder{&sweep_x});
  std::vector<std::set<const SweepEdge*, SweepOrder>::iterator> where(edges.size(), active.end());
  for (auto& [x, bucket] : events) {
    sweep_x = x;
    for (std::size_t e : bucket.ends) {
      active.erase(where[e]);
      where[e] = active.end();
    }
    for (std::size_t e : bucket.starts) where[e] = active.insert(&sweep_edges[e]).first;
    for (std::size_t q : bucket.queries) {
      const Scalar& y = pts[q].y;
      auto above = active.lower_bound(y);
      if (above != active.end() && (*above)->intercept + (*above)->slope * x == y) {
        out[q] = {Location::Kind::OnEdge, (*above)->id};
        continue;
      }
      if (above == active.begin()) {
        out[q] = {Location::Kind::Outside, 0};
        continue;
      }
      const EdgeData& below = edges[(*std::prev(above))->id];
      if (below.has_upper())
        out[q] = {Location::Kind::Inside, static_cast<std::size_t>(below.upper_triangle)};
      else
        out[q] = {Location::Kind::Outside, 0};
    }
  }
  return out;
}

Location locate_brute_force(const Tin& t, const Point& p) {
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    if (t.point(v) == p) return {Location::Kind::OnVertex, v};
  const auto edges = tin_edges(t);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Point a = t.point(edges[i].a), b = t.point(edges[i].b);
    if (orient(a, b, p) != 0) continue;
    const Scalar lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
    const Scalar lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
    if (lo_x <= p.x && p.x <= hi_x && lo_y <= p.y && p.y <= hi_y) return {Location::Kind::OnEdge, i};
  }
  for (std::size_t k = 0; k < t.triangles.size(); ++k) {
    const auto& tri = t.triangles[k];
    const Point a = t.point(tri[0]), b = t.point(tri[1]), c = t.point(tri[2]);
    if (orient(a, b, p) > 0 && orient(b, c, p) > 0 && orient(c, a, p) > 0) return {Location::Kind::Inside, k};
  }
  return {Location::Kind::Outside, 0};
}

}  // namespace tincalc
