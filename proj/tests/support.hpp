#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tincalc/generate.hpp"
#include "tincalc/geom.hpp"
#include "tincalc/scalar.hpp"

namespace testing_support {

using namespace tincalc;

inline Scalar q(const std::string& s) { return parse_scalar(s); }

/// Unit square (or `dom`) split by the diagonal through its lower-left corner
/// when `main` is true, otherwise through its lower-right corner. Heights
/// sample `h`.
inline Tin square(bool main, const LinearFunc& h = {0, 0, 0}, const Rect& dom = {0, 0, 1, 1}) {
  Tin t;
  t.domain = dom;
  const Point c[4] = {{dom.xmin, dom.ymin}, {dom.xmax, dom.ymin}, {dom.xmax, dom.ymax}, {dom.xmin, dom.ymax}};
  for (const auto& p : c) t.vertices.push_back({p.x, p.y, h(p)});
  if (main)
    t.triangles = {{0, 1, 2}, {0, 2, 3}};
  else
    t.triangles = {{0, 1, 3}, {1, 2, 3}};
  return t;
}

/// The same triangulation with every height replaced by h(x, y).
inline Tin with_heights(Tin t, const LinearFunc& h) {
  for (auto& v : t.vertices) v.z = h(v.x, v.y);
  return t;
}

inline Tin scale_heights(Tin t, const Scalar& a, const Scalar& b = 0) {
  for (auto& v : t.vertices) v.z = a * v.z + b;
  return t;
}

/// A general-position pair of random terrains with n triangles each.
inline TinPair random_pair(std::size_t n, std::uint64_t seed) {
  GenerateOptions opt;
  opt.triangles = n;
  return generate_pair(opt, seed, Surface::random_uniform(), Surface::random_uniform());
}

/// Random rational with numerator in [-range, range] and denominator in [1, den].
inline Scalar random_rational(std::mt19937_64& rng, long range, long den = 16) {
  std::uniform_int_distribution<long> n(-range, range), d(1, den);
  Scalar r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

/// Dense univariate polynomial over the rationals, lowest degree first. Used
/// as an oracle that shares no code with the library's polynomial engines.
struct UPoly {
  std::vector<Scalar> c;

  static UPoly constant(const Scalar& k) { return {{k}}; }
  static UPoly linear(const Scalar& a, const Scalar& b) { return {{a, b}}; }  // a + b x

  UPoly operator+(const UPoly& o) const {
    UPoly r{std::vector<Scalar>(std::max(c.size(), o.c.size()))};
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  UPoly operator-(const UPoly& o) const { return *this + o * Scalar(-1); }
  UPoly operator*(const Scalar& k) const {
    UPoly r = *this;
    for (auto& x : r.c) x *= k;
    return r;
  }
  UPoly operator*(const UPoly& o) const {
    if (c.empty() || o.c.empty()) return {};
    UPoly r{std::vector<Scalar>(c.size() + o.c.size() - 1)};
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
  UPoly pow(unsigned k) const {
    UPoly r = constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  UPoly integral() const {
    UPoly r{std::vector<Scalar>(c.size() + 1)};
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i] / static_cast<long>(i + 1);
    return r;
  }
  Scalar operator()(const Scalar& x) const {
    Scalar acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

/// Integral of x^i y^j for x between 0 and the lines' intersection and y
/// between the two lines, by iterated integration.
inline Scalar wedge_oracle(const Scalar& y_l, const Scalar& s_l, const Scalar& y_u, const Scalar& s_u, unsigned i,
                           unsigned j) {
  const Scalar xp = -(y_u - y_l) / (s_u - s_l);
  UPoly xi{std::vector<Scalar>(i + 1)};
  xi.c[i] = 1;
  const UPoly inner = (UPoly::linear(y_u, s_u).pow(j + 1) - UPoly::linear(y_l, s_l).pow(j + 1)) *
                      Scalar(1, static_cast<long>(j + 1));
  return (xi * inner).integral()(xp);
}

/// Exact integral of a polynomial of degree <= 2 over a triangle by the
/// edge-midpoint rule.
template <class H>
Scalar midpoint_rule(const Point& a, const Point& b, const Point& c, H h) {
  Scalar area2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (area2 < 0) area2 = -area2;
  const Scalar two = 2;
  const Scalar s = h((a.x + b.x) / two, (a.y + b.y) / two) + h((b.x + c.x) / two, (b.y + c.y) / two) +
                   h((c.x + a.x) / two, (c.y + a.y) / two);
  return area2 * s / 6;
}

}  // namespace testing_support
