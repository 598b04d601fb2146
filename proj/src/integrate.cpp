#include "tincalc/integrate.hpp"

#include <algorithm>
#include <map>

#include "tincalc/cliques.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/locate.hpp"
#include "tincalc/ops.hpp"

namespace tincalc {

namespace {

TrianglePts triangle_points(const Tin& t, std::size_t k) {
  const auto& tri = t.triangles[k];
  return {t.point(tri[0]), t.point(tri[1]), t.point(tri[2])};
}

}  // namespace

std::vector<Point> clip_triangles(const TrianglePts& t1, const TrianglePts& t2) {
  std::vector<Point> poly(t1.begin(), t1.end());
  if (orient(poly[0], poly[1], poly[2]) < 0) std::swap(poly[1], poly[2]);
  TrianglePts clip = t2;
  if (orient(clip[0], clip[1], clip[2]) < 0) std::swap(clip[1], clip[2]);
  for (int k = 0; k < 3 && !poly.empty(); ++k) {
    const Point& a = clip[k];
    const Point& b = clip[(k + 1) % 3];
    std::vector<Point> next;
    const std::size_t m = poly.size();
    std::vector<Scalar> side(m);
    for (std::size_t i = 0; i < m; ++i) side[i] = orient(a, b, poly[i]);
    ops::tick(7 * m);
    for (std::size_t i = 0; i < m; ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % m];
      const Scalar& sp = side[i];
      const Scalar& sq = side[(i + 1) % m];
      if (sp >= 0) next.push_back(p);
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
        const Scalar t = sp / (sp - sq);
        next.push_back({p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t});
        ops::tick(7);
      }
    }
    poly = std::move(next);
  }
  // Drop repeated points; anything left with no area is empty.
  std::vector<Point> out;
  for (const auto& p : poly)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) return {};
  Scalar area2 = 0;
  for (std::size_t i = 1; i + 1 < out.size(); ++i) area2 += orient(out[0], out[i], out[i + 1]);
  if (area2 == 0) return {};
  return out;
}

Scalar integrate_product_over_triangle(const LinearFunc& f, const LinearFunc& g, const TrianglePts& tri) {
  Scalar area2 = orient(tri[0], tri[1], tri[2]);
  if (area2 < 0) area2 = -area2;
  Scalar acc = 0;
  for (int k = 0; k < 3; ++k) {
    const Point& a = tri[k];
    const Point& b = tri[(k + 1) % 3];
    const Point m{(a.x + b.x) / 2, (a.y + b.y) / 2};
    acc += f(m) * g(m);
  }
  ops::tick(40);
  return area2 * acc / 6;
}

Scalar naive_inner_product(const Tin& f, const Tin& g) {
  const auto ff = triangle_functions(f);
  const auto gf = triangle_functions(g);
  std::vector<TrianglePts> gt;
  for (std::size_t j = 0; j < g.triangles.size(); ++j) gt.push_back(triangle_points(g, j));
  std::vector<Scalar> parts;
  for (std::size_t i = 0; i < f.triangles.size(); ++i) {
    const TrianglePts ti = triangle_points(f, i);
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const auto cell = clip_triangles(ti, gt[j]);
      for (std::size_t k = 1; k + 1 < cell.size(); ++k)
        parts.push_back(integrate_product_over_triangle(ff[i], gf[j], {cell[0], cell[k], cell[k + 1]}));
    }
  }
  ops::tick(parts.size());
  return sum_exact(std::move(parts));
}

namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return point_less(a, b); }
};

// Adjacency of one terrain, as needed around a single point.
struct Local {
  const Tin& t;
  std::vector<TinEdge> edges;
  std::vector<EdgeData> edge_data;
  std::vector<LinearFunc> funcs;
  std::vector<std::vector<std::size_t>> incident;   // vertex -> triangles
  std::vector<std::vector<std::size_t>> neighbors;  // vertex -> vertices
  std::vector<bool> on_boundary;

  explicit Local(const Tin& tin) : t(tin), edges(tin_edges(tin)), edge_data(build_edge_data(tin)),
                                   funcs(triangle_functions(tin)) {
    incident.resize(t.vertices.size());
    neighbors.resize(t.vertices.size());
    on_boundary.assign(t.vertices.size(), false);
    for (std::size_t k = 0; k < t.triangles.size(); ++k)
      for (std::size_t v : t.triangles[k]) incident[v].push_back(k);
    for (const auto& e : edges) {
      neighbors[e.a].push_back(e.b);
      neighbors[e.b].push_back(e.a);
      if (e.is_boundary()) on_boundary[e.a] = on_boundary[e.b] = true;
    }
  }

  // Triangle containing p + eps*b for all small eps > 0, among candidates.
  std::ptrdiff_t containing(const std::vector<std::size_t>& candidates, const Point& p, const Point& b) const {
    for (std::size_t k : candidates) {
      const auto& tri = t.triangles[k];
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        const Point u = t.point(tri[i]);
        const Point v = t.point(tri[(i + 1) % 3]);
        const int s = sgn(orient(u, v, p));
        if (s > 0) continue;
        if (s < 0 || sgn(cross({v.x - u.x, v.y - u.y}, b)) <= 0) inside = false;
      }
      if (inside) return static_cast<std::ptrdiff_t>(k);
    }
    return -1;
  }
};

// Upper half-plane (including the positive x-axis) first, then by angle.
bool angle_less(const Point& a, const Point& b) {
  auto half = [](const Point& d) { return d.y > 0 || (d.y == 0 && d.x > 0) ? 0 : 1; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

bool same_direction(const Point& a, const Point& b) {
  return cross(a, b) == 0 && a.x * b.x + a.y * b.y > 0;
}

struct Presence {
  Location where;
  std::vector<std::size_t> candidates;
};

Presence presence(const Local& L, const Location& loc, const Point& p, std::vector<Point>& rays) {
  Presence pr{loc, {}};
  switch (loc.kind) {
    case Location::Kind::OnVertex:
      pr.candidates = L.incident[loc.index];
      for (std::size_t w : L.neighbors[loc.index]) rays.push_back({L.t.point(w).x - p.x, L.t.point(w).y - p.y});
      break;
    case Location::Kind::OnEdge: {
      const TinEdge& e = L.edges[loc.index];
      if (!e.is_boundary()) throw DegenerateInput("vertex lies inside an interior edge of the other terrain");
      pr.candidates.push_back(static_cast<std::size_t>(e.triangles[0]));
      const Point d{L.t.point(e.b).x - L.t.point(e.a).x, L.t.point(e.b).y - L.t.point(e.a).y};
      rays.push_back(d);
      rays.push_back({-d.x, -d.y});
      break;
    }
    case Location::Kind::Inside:
      pr.candidates.push_back(loc.index);
      break;
    case Location::Kind::Outside:
      break;
  }
  return pr;
}

}  // namespace

std::vector<WedgeTerm> vertex_terms(const Tin& f, const Tin& g) {
  const Local F(f), G(g);
  std::vector<Point> fpts, gpts;
  for (std::size_t v = 0; v < f.vertices.size(); ++v) fpts.push_back(f.point(v));
  for (std::size_t v = 0; v < g.vertices.size(); ++v) gpts.push_back(g.point(v));
  const auto f_in_g = batch_locate(g, fpts);
  const auto g_in_f = batch_locate(f, gpts);

  // Each distinct point once, with its location in both terrains.
  std::map<Point, std::pair<Location, Location>, PointLess> points;
  for (std::size_t v = 0; v < fpts.size(); ++v) points[fpts[v]] = {{Location::Kind::OnVertex, v}, f_in_g[v]};
  for (std::size_t v = 0; v < gpts.size(); ++v) {
    auto it = points.find(gpts[v]);
    if (it != points.end()) {
      if (!F.on_boundary[it->second.first.index] || !G.on_boundary[v])
        throw DegenerateInput("terrains share an interior vertex");
      continue;
    }
    points[gpts[v]] = {g_in_f[v], {Location::Kind::OnVertex, v}};
  }

  std::vector<WedgeTerm> terms;
  for (const auto& [p, locs] : points) {
    std::vector<Point> rays;
    const Presence pf = presence(F, locs.first, p, rays);
    const Presence pg = presence(G, locs.second, p, rays);
    std::sort(rays.begin(), rays.end(), angle_less);
    std::vector<Point> uniq;
    for (const auto& r : rays)
      if (uniq.empty() || !same_direction(uniq.back(), r)) uniq.push_back(r);
    while (uniq.size() > 1 && same_direction(uniq.front(), uniq.back())) uniq.pop_back();
    const std::size_t m = uniq.size();
    for (std::size_t i = 0; i < m && m >= 2; ++i) {
      const Point& d1 = uniq[i];
      const Point& d2 = uniq[(i + 1) % m];
      if (cross(d1, d2) <= 0) continue;
      const Point b{d1.x + d2.x, d1.y + d2.y};
      const std::ptrdiff_t tf = F.containing(pf.candidates, p, b);
      const std::ptrdiff_t tg = G.containing(pg.candidates, p, b);
      if (tf < 0 || tg < 0) continue;
      WedgeTerm term;
      term.lines = wedge_at(p, d1, d2);
      term.delta = corner_sign(term.lines, b);
      term.h = Quadratic::product(F.funcs[static_cast<std::size_t>(tf)], G.funcs[static_cast<std::size_t>(tg)]);
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

Scalar vertex_term_sum(const Tin& f, const Tin& g) {
  std::vector<Scalar> values;
  for (const auto& t : vertex_terms(f, g)) values.push_back(t.value());
  return sum_exact(std::move(values));
}

Scalar crossing_contribution(const Tin& f, const EdgeData& e1, const Tin& g, const EdgeData& e2, bool literal) {
  const Segment s1 = make_segment(f.point(e1.endpoints[0]), f.point(e1.endpoints[1]));
  const Segment s2 = make_segment(g.point(e2.endpoints[0]), g.point(e2.endpoints[1]));
  if (!segments_cross(s1, s2)) throw DegenerateInput("edges do not cross transversally");
  const Scalar x = (e2.y_intercept - e1.y_intercept) / (e1.slope - e2.slope);
  const Point p{x, e1.y_intercept + e1.slope * x};
  const WedgeLines w = wedge_at(p, {1, e1.slope}, {1, e2.slope});
  if (!literal) return -wedge_integral(w, Quadratic::product(e1.jump(), e2.jump()));
  const Quadratic h = Quadratic::product(e1.upper, e2.lower) + Quadratic::product(e1.lower, e2.upper) -
                      Quadratic::product(e1.upper, e2.upper) - Quadratic::product(e1.lower, e2.lower);
  return wedge_integral(w, h);
}

Scalar naive_edge_term_sum(const Tin& f, const Tin& g) {
  const auto fe = build_edge_data(f);
  const auto ge = build_edge_data(g);
  std::vector<std::size_t> fid, gid;
  const auto fs = interior_segments(f, fe, &fid);
  const auto gs = interior_segments(g, ge, &gid);
  std::vector<Scalar> values;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Segment& a = fs[i];
    const Scalar aymin = std::min(a.a.y, a.b.y), aymax = std::max(a.a.y, a.b.y);
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const Segment& b = gs[j];
      if (b.b.x < a.a.x || a.b.x < b.a.x) continue;
      if (std::max(b.a.y, b.b.y) < aymin || aymax < std::min(b.a.y, b.b.y)) continue;
      if (segments_cross(a, b)) {
        values.push_back(crossing_contribution(f, fe[fid[i]], g, ge[gid[j]], true));
        continue;
      }
      // Any other contact must be a shared endpoint.
      const int o1 = sgn(orient(a.a, a.b, b.a)), o2 = sgn(orient(a.a, a.b, b.b));
      const int o3 = sgn(orient(b.a, b.b, a.a)), o4 = sgn(orient(b.a, b.b, a.b));
      if (o1 * o2 > 0 || o3 * o4 > 0) continue;
      if (o1 == 0 && o2 == 0) {
        if (std::min(a.b.x, b.b.x) > std::max(a.a.x, b.a.x)) throw DegenerateInput("collinear interior edges overlap");
        continue;
      }
      const bool shared = a.a == b.a || a.a == b.b || a.b == b.a || a.b == b.b;
      if (!shared) throw DegenerateInput("interior edges touch without crossing");
    }
  }
  return sum_exact(std::move(values));
}

}  // namespace tincalc
