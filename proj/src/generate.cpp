#include "tincalc/generate.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "tincalc/errors.hpp"

namespace tincalc {

Surface Surface::parse(const std::string& text) {
  if (text == "random") return random_uniform();
  if (text == "saddle") return saddle();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameter("unknown surface '" + text + "'");
  const std::string kind = text.substr(0, colon);
  std::vector<Scalar> values;
  std::stringstream ss(text.substr(colon + 1));
  for (std::string tok; std::getline(ss, tok, ',');) values.push_back(parse_scalar(tok));
  if (kind == "plane") {
    if (values.size() != 3) throw InvalidParameter("plane surface needs three coefficients a,b,c");
    return plane(values[0], values[1], values[2]);
  }
  if (kind == "poly") {
    if (values.empty()) throw InvalidParameter("poly surface needs coefficients");
    return polynomial(std::move(values));
  }
  throw InvalidParameter("unknown surface '" + text + "'");
}

Scalar Surface::eval(const Scalar& x, const Scalar& y, std::uint64_t draw) const {
  switch (kind) {
    case Kind::RandomUniform: {
      Scalar z(static_cast<long>(draw % 65), 8);
      z.canonicalize();
      return z;
    }
    case Kind::Plane: return coeffs[0] + coeffs[1] * x + coeffs[2] * y;
    case Kind::Saddle: return x * y;
    case Kind::Polynomial: {
      Scalar total = 0;
      std::size_t k = 0;
      for (unsigned degree = 0; k < coeffs.size(); ++degree) {
        for (unsigned j = 0; j <= degree && k < coeffs.size(); ++j, ++k) {
          Scalar term = coeffs[k];
          for (unsigned e = 0; e < degree - j; ++e) term *= x;
          for (unsigned e = 0; e < j; ++e) term *= y;
          total += term;
        }
      }
      return total;
    }
  }
  return 0;
}

FlipMode parse_flip_mode(const std::string& text) {
  if (text == "none") return FlipMode::None;
  if (text == "random") return FlipMode::Random;
  if (text == "delaunay") return FlipMode::Delaunay;
  throw InvalidParameter("unknown flip mode '" + text + "'");
}

namespace {

using Coord = std::int64_t;
struct IPoint {
  Coord x, y;
  bool operator==(const IPoint&) const = default;
};
using ITri = std::array<int, 3>;

__int128 iorient(const IPoint& a, const IPoint& b, const IPoint& c) {
  return static_cast<__int128>(b.x - a.x) * (c.y - a.y) - static_cast<__int128>(c.x - a.x) * (b.y - a.y);
}

// > 0 when d lies strictly inside the circumcircle of counterclockwise abc.
__int128 incircle(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  const __int128 adx = a.x - d.x, ady = a.y - d.y;
  const __int128 bdx = b.x - d.x, bdy = b.y - d.y;
  const __int128 cdx = c.x - d.x, cdy = c.y - d.y;
  const __int128 alift = adx * adx + ady * ady;
  const __int128 blift = bdx * bdx + bdy * bdy;
  const __int128 clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - bdy * cdx) - blift * (adx * cdy - ady * cdx) + clift * (adx * bdy - ady * bdx);
}

class LatticeMesh {
 public:
  LatticeMesh(Coord size, std::mt19937_64& rng) : size_(size), rng_(rng) {
    pts_ = {{0, 0}, {size, 0}, {size, size}, {0, size}};
    tris_ = {{0, 1, 2}, {0, 2, 3}};
  }

  void insert_interior() {
    std::uniform_int_distribution<Coord> dist(1, size_ - 1);
    for (;;) {
      IPoint p{dist(rng_), dist(rng_)};
      for (std::size_t ti = 0; ti < tris_.size(); ++ti) {
        const ITri t = tris_[ti];
        const __int128 o0 = iorient(pts_[t[0]], pts_[t[1]], p);
        const __int128 o1 = iorient(pts_[t[1]], pts_[t[2]], p);
        const __int128 o2 = iorient(pts_[t[2]], pts_[t[0]], p);
        if (o0 < 0 || o1 < 0 || o2 < 0) continue;
        if (o0 == 0 || o1 == 0 || o2 == 0) break;  // on an edge or vertex: resample
        const int pi = static_cast<int>(pts_.size());
        pts_.push_back(p);
        tris_[ti] = {t[0], t[1], pi};
        tris_.push_back({t[1], t[2], pi});
        tris_.push_back({t[2], t[0], pi});
        return;
      }
    }
  }

  void insert_boundary() {
    std::uniform_int_distribution<Coord> dist(1, size_ - 1);
    std::uniform_int_distribution<int> side_dist(0, 3);
    for (;;) {
      const Coord s = dist(rng_);
      IPoint p;
      switch (side_dist(rng_)) {
        case 0: p = {s, 0}; break;
        case 1: p = {size_, s}; break;
        case 2: p = {s, size_}; break;
        default: p = {0, s}; break;
      }
      if (std::find(pts_.begin(), pts_.end(), p) != pts_.end()) continue;
      for (std::size_t ti = 0; ti < tris_.size(); ++ti) {
        const ITri t = tris_[ti];
        for (int k = 0; k < 3; ++k) {
          const IPoint& a = pts_[t[k]];
          const IPoint& b = pts_[t[(k + 1) % 3]];
          if (iorient(a, b, p) != 0) continue;
          const bool between = std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
                               std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
          if (!between) continue;
          const int pi = static_cast<int>(pts_.size());
          pts_.push_back(p);
          const int c = t[(k + 2) % 3];
          tris_[ti] = {t[k], pi, c};
          tris_.push_back({pi, t[(k + 1) % 3], c});
          return;
        }
      }
    }
  }

  void delaunay() {
    rebuild_edge_map();
    std::vector<std::pair<int, int>> stack;
    for (const auto& [key, ti] : edge_tri_) stack.push_back(unkey(key));
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      int c, d;
      std::size_t t1, t2;
      if (!quad(a, b, c, d, t1, t2)) continue;
      if (incircle(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) continue;
      flip(a, b, c, d, t1, t2);
      stack.push_back({a, d});
      stack.push_back({d, b});
      stack.push_back({b, c});
      stack.push_back({c, a});
    }
  }

  void random_flips(std::size_t attempts) {
    rebuild_edge_map();
    for (std::size_t i = 0; i < attempts; ++i) {
      std::uniform_int_distribution<std::size_t> tri_dist(0, tris_.size() - 1);
      std::uniform_int_distribution<int> k_dist(0, 2);
      const ITri t = tris_[tri_dist(rng_)];
      const int k = k_dist(rng_);
      const int a = t[k], b = t[(k + 1) % 3];
      int c, d;
      std::size_t t1, t2;
      if (!quad(a, b, c, d, t1, t2)) continue;
      if (iorient(pts_[a], pts_[d], pts_[c]) <= 0 || iorient(pts_[d], pts_[b], pts_[c]) <= 0) continue;
      flip(a, b, c, d, t1, t2);
    }
  }

  const std::vector<IPoint>& points() const { return pts_; }
  const std::vector<ITri>& triangles() const { return tris_; }

 private:
  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }
  static std::pair<int, int> unkey(std::uint64_t k) {
    return {static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu)};
  }

  void rebuild_edge_map() {
    edge_tri_.clear();
    for (std::size_t ti = 0; ti < tris_.size(); ++ti) register_tri(ti);
  }
  void register_tri(std::size_t ti) {
    const ITri& t = tris_[ti];
    for (int k = 0; k < 3; ++k) edge_tri_[key(t[k], t[(k + 1) % 3])] = ti;
  }

  // Directed edge a->b in t1 = (a, b, c); b->a in t2 = (b, a, d).
  bool quad(int a, int b, int& c, int& d, std::size_t& t1, std::size_t& t2) const {
    auto i1 = edge_tri_.find(key(a, b));
    auto i2 = edge_tri_.find(key(b, a));
    if (i1 == edge_tri_.end() || i2 == edge_tri_.end()) return false;
    t1 = i1->second;
    t2 = i2->second;
    c = third(tris_[t1], a, b);
    d = third(tris_[t2], a, b);
    return true;
  }
  static int third(const ITri& t, int a, int b) {
    for (int v : t)
      if (v != a && v != b) return v;
    return -1;
  }

  void flip(int a, int b, int c, int d, std::size_t t1, std::size_t t2) {
    edge_tri_.erase(key(a, b));
    edge_tri_.erase(key(b, a));
    tris_[t1] = {a, d, c};
    tris_[t2] = {d, b, c};
    register_tri(t1);
    register_tri(t2);
  }

  Coord size_;
  std::mt19937_64& rng_;
  std::vector<IPoint> pts_;
  std::vector<ITri> tris_;
  std::unordered_map<std::uint64_t, std::size_t> edge_tri_;
};

}  // namespace

Tin generate_tin(const GenerateOptions& options) {
  const std::size_t n = options.triangles;
  if (n < 2 || n < 2 + options.boundary_points || (n - options.boundary_points) % 2 != 0)
    throw InvalidParameter("cannot build " + std::to_string(n) + " triangles with " +
                           std::to_string(options.boundary_points) + " boundary points");
  if (options.grid_bits < 2 || options.grid_bits > 24) throw InvalidParameter("grid_bits must be in [2, 24]");
  const Rect& dom = options.domain;
  if (!(dom.xmin < dom.xmax && dom.ymin < dom.ymax)) throw InvalidParameter("empty domain");

  std::mt19937_64 rng(options.seed);
  const Coord size = Coord{1} << options.grid_bits;
  LatticeMesh mesh(size, rng);
  const std::size_t interior = (n - 2 - options.boundary_points) / 2;
  if (static_cast<double>(interior + options.boundary_points) > 0.25 * static_cast<double>(size) * static_cast<double>(size))
    throw InvalidParameter("lattice too coarse for the requested triangle count");

  // Interleave boundary and interior insertions.
  std::vector<bool> order(interior + options.boundary_points, false);
  std::fill(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(options.boundary_points), true);
  std::shuffle(order.begin(), order.end(), rng);
  for (bool on_boundary : order) {
    if (on_boundary) {
      mesh.insert_boundary();
    } else {
      mesh.insert_interior();
    }
  }
  switch (options.flips) {
    case FlipMode::None: break;
    case FlipMode::Random: mesh.random_flips(options.random_flips ? options.random_flips : n); break;
    case FlipMode::Delaunay: mesh.delaunay(); break;
  }

  Tin t;
  t.domain = dom;
  const Scalar width = dom.xmax - dom.xmin, height = dom.ymax - dom.ymin;
  std::uniform_int_distribution<std::uint64_t> draw(0, 64);
  for (const auto& p : mesh.points()) {
    Scalar x = dom.xmin + width * Scalar(p.x) / Scalar(size);
    Scalar y = dom.ymin + height * Scalar(p.y) / Scalar(size);
    x.canonicalize();
    y.canonicalize();
    Scalar z = options.surface.eval(x, y, draw(rng));
    t.vertices.push_back({x, y, z});
  }
  for (const auto& tri : mesh.triangles())
    t.triangles.push_back({static_cast<std::size_t>(tri[0]), static_cast<std::size_t>(tri[1]),
                           static_cast<std::size_t>(tri[2])});
  return t;
}

Tin generate_tin(std::size_t triangles, std::uint64_t seed, const Surface& surface) {
  GenerateOptions options;
  options.triangles = triangles;
  options.seed = seed;
  options.surface = surface;
  return generate_tin(options);
}

TinPair generate_pair(const GenerateOptions& base, std::uint64_t seed, const Surface& f_surface,
                      const Surface& g_surface) {
  std::seed_seq seq{seed, std::uint64_t{0x7469}};
  std::mt19937_64 rng(seq);
  TinPair pair;
  for (;;) {
    GenerateOptions fo = base, go = base;
    fo.seed = rng();
    go.seed = rng();
    fo.surface = f_surface;
    go.surface = g_surface;
    pair.f = generate_tin(fo);
    pair.g = generate_tin(go);
    if (validate_pair(pair.f, pair.g).ok()) return pair;
    if (++pair.rejected == 1000) throw InvalidParameter("no general-position pair after 1000 attempts");
  }
}

}  // namespace tincalc
