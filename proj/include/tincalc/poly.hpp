#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "tincalc/errors.hpp"
#include "tincalc/field.hpp"

namespace tincalc {

/// Dense univariate polynomial, lowest degree first, with no trailing zeros.
/// The zero polynomial is the empty vector and has degree -1.
template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void trim(const F& field, Poly<F>& p) {
  while (!p.empty() && field.is_zero(p.back())) p.pop_back();
}

template <class V>
long degree(const V& p) {
  return static_cast<long>(p.size()) - 1;
}

template <class F>
Poly<F> poly_add(const F& field, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = field.add(a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(field, r);
  return r;
}

template <class F>
Poly<F> poly_sub(const F& field, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), field.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = field.sub(a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : field.neg(b[i]);
  }
  trim(field, r);
  return r;
}

template <class F>
Poly<F> poly_scale(const F& field, const Poly<F>& a, const typename F::Elem& k) {
  Poly<F> r;
  if (field.is_zero(k)) return r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(field.mul(c, k));
  trim(field, r);
  return r;
}

template <class F>
typename F::Elem horner(const F& field, const Poly<F>& p, const typename F::Elem& x) {
  auto acc = field.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

template <class F>
Poly<F> poly_mul_schoolbook(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = field.add(r[i + j], field.mul(a[i], b[j]));
  }
  trim(field, r);
  return r;
}

namespace detail {

inline constexpr std::size_t kNttCutoff = 48;

inline std::size_t ceil_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

inline bool ntt_supports(const ModField& field, std::size_t len) {
  return len <= (std::size_t{1} << std::min(field.two_adicity(), 40u));
}

/// In-place transform of length a.size() (a power of two).
inline void ntt(const ModField& field, std::vector<std::uint64_t>& a, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint64_t> w;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t wl = field.root_of_unity();
    for (std::size_t k = len; k < (std::size_t{1} << field.two_adicity()); k <<= 1) wl = mulmod(wl, wl, field.modulus());
    if (invert) wl = field.inv(wl);
    const std::size_t half = len / 2;
    w.assign(half, 1);
    for (std::size_t k = 1; k < half; ++k) w[k] = field.mul(w[k - 1], wl);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = field.mul(a[i + k + half], w[k]);
        a[i + k] = field.add(u, v);
        a[i + k + half] = field.sub(u, v);
      }
    }
  }
  if (invert) {
    const std::uint64_t inv_n = field.inv(n % field.modulus());
    for (auto& x : a) x = field.mul(x, inv_n);
  }
}

inline std::vector<std::uint64_t> ntt_forward(const ModField& field, const std::vector<std::uint64_t>& p,
                                              std::size_t len) {
  std::vector<std::uint64_t> a(len, 0);
  std::copy(p.begin(), p.end(), a.begin());
  ntt(field, a, false);
  return a;
}

}  // namespace detail

/// Product of two polynomials. Uses the number-theoretic transform for prime
/// fields with a large enough 2-power root of unity, schoolbook otherwise.
template <class F>
Poly<F> poly_mul(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  if constexpr (std::is_same_v<F, ModField>) {
    const std::size_t out = a.size() + b.size() - 1;
    const std::size_t len = detail::ceil_pow2(out);
    if (std::min(a.size(), b.size()) > detail::kNttCutoff && detail::ntt_supports(field, len)) {
      auto fa = detail::ntt_forward(field, a, len);
      const auto fb = detail::ntt_forward(field, b, len);
      for (std::size_t i = 0; i < len; ++i) fa[i] = field.mul(fa[i], fb[i]);
      detail::ntt(field, fa, true);
      fa.resize(out);
      trim(field, fa);
      return fa;
    }
  }
  return poly_mul_schoolbook(field, a, b);
}

/// a1*b1 + a2*b2, sharing transforms where possible.
template <class F>
Poly<F> poly_mul_add(const F& field, const Poly<F>& a1, const Poly<F>& b1, const Poly<F>& a2, const Poly<F>& b2) {
  return poly_add(field, poly_mul(field, a1, b1), poly_mul(field, a2, b2));
}

/// First n coefficients of 1/a; requires a[0] invertible.
template <class F>
Poly<F> poly_inverse_series(const F& field, const Poly<F>& a, std::size_t n) {
  if (a.empty() || field.is_zero(a[0])) throw InvalidParameter("series is not invertible");
  Poly<F> g{field.inv(a[0])};
  std::size_t k = 1;
  while (k < n) {
    k = std::min(2 * k, n);
    Poly<F> head(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(k, a.size())));
    Poly<F> e = poly_mul(field, head, g);
    e.resize(k, field.zero());
    for (auto& c : e) c = field.neg(c);
    e[0] = field.add(e[0], field.from_int(2));
    trim(field, e);
    g = poly_mul(field, g, e);
    g.resize(std::min(g.size(), k));
    trim(field, g);
  }
  return g;
}

/// Quotient and remainder of a by b (b nonzero).
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw InvalidParameter("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  const std::size_t qlen = a.size() - b.size() + 1;
  if (qlen <= detail::kNttCutoff || b.size() <= detail::kNttCutoff) {
    Poly<F> r = a, q(qlen, field.zero());
    const auto lead_inv = field.inv(b.back());
    for (std::size_t k = qlen; k-- > 0;) {
      const auto c = field.mul(r[k + b.size() - 1], lead_inv);
      q[k] = c;
      if (field.is_zero(c)) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = field.sub(r[k + j], field.mul(c, b[j]));
    }
    r.resize(b.size() - 1);
    trim(field, r);
    trim(field, q);
    return {q, r};
  }
  Poly<F> ra(a.rbegin(), a.rend()), rb(b.rbegin(), b.rend());
  ra.resize(std::min(ra.size(), qlen));
  trim(field, ra);
  Poly<F> q = poly_mul(field, ra, poly_inverse_series(field, rb, qlen));
  q.resize(qlen, field.zero());
  std::reverse(q.begin(), q.end());
  trim(field, q);
  Poly<F> r = poly_sub(field, a, poly_mul(field, q, b));
  return {q, r};
}

/// Subproduct tree over a fixed point set; evaluates any number of
/// polynomials at all points via the remainder tree.
template <class F>
class SubproductTree {
 public:
  using Elem = typename F::Elem;

  SubproductTree(const F& field, std::vector<Elem> points) : field_(field), points_(std::move(points)) {
    if (!points_.empty()) build(1, 0, points_.size());
  }

  std::size_t size() const { return points_.size(); }
  /// Product of (X - x_i) over all points.
  const Poly<F>& root() const { return nodes_.at(1); }

  std::vector<Elem> evaluate(const Poly<F>& p) const {
    std::vector<Elem> out(points_.size(), field_.zero());
    if (points_.empty() || p.empty()) return out;
    descend(1, 0, points_.size(), poly_divmod(field_, p, nodes_.at(1)).second, out);
    return out;
  }

 private:
  static constexpr std::size_t kLeaf = 8;

  void build(std::size_t node, std::size_t lo, std::size_t hi) {
    if (nodes_.size() <= node) nodes_.resize(2 * node + 2);
    if (hi - lo <= kLeaf) {
      Poly<F> p{field_.one()};
      for (std::size_t i = lo; i < hi; ++i) p = poly_mul_schoolbook(field_, p, Poly<F>{field_.neg(points_[i]), field_.one()});
      nodes_[node] = std::move(p);
      return;
    }
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    build(2 * node, lo, mid);
    build(2 * node + 1, mid, hi);
    nodes_[node] = poly_mul(field_, nodes_[2 * node], nodes_[2 * node + 1]);
  }

  void descend(std::size_t node, std::size_t lo, std::size_t hi, const Poly<F>& r, std::vector<Elem>& out) const {
    if (hi - lo <= kLeaf) {
      for (std::size_t i = lo; i < hi; ++i) out[i] = horner(field_, r, points_[i]);
      return;
    }
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    descend(2 * node, lo, mid, poly_divmod(field_, r, nodes_[2 * node]).second, out);
    descend(2 * node + 1, mid, hi, poly_divmod(field_, r, nodes_[2 * node + 1]).second, out);
  }

  const F& field_;
  std::vector<Elem> points_;
  std::vector<Poly<F>> nodes_;
};

/// p(x) for every x in pts.
template <class F>
std::vector<typename F::Elem> multipoint_eval(const F& field, const Poly<F>& p,
                                              const std::vector<typename F::Elem>& pts) {
  return SubproductTree<F>(field, pts).evaluate(p);
}

template <class F>
struct FracSum {
  Poly<F> N;
  Poly<F> D;
};

/// Common-denominator form of a sum of fractions u_k / (X - v_k)^d that
/// share their poles: one denominator, one numerator per channel.
template <class F>
struct FracBatch {
  Poly<F> D;
  std::vector<Poly<F>> N;
};

namespace detail {

template <class F>
FracBatch<F> sum_fractions_rec(const F& field, std::span<const typename F::Elem> poles,
                               const std::vector<std::vector<typename F::Elem>>& weights, std::size_t offset,
                               unsigned d) {
  const std::size_t n = poles.size();
  if (n == 1) {
    FracBatch<F> leaf;
    // (X - v)^d by repeated multiplication.
    leaf.D = Poly<F>{field.one()};
    const Poly<F> lin{field.neg(poles[0]), field.one()};
    for (unsigned k = 0; k < d; ++k) leaf.D = poly_mul_schoolbook(field, leaf.D, lin);
    for (const auto& w : weights) {
      Poly<F> c{w[offset]};
      trim(field, c);
      leaf.N.push_back(std::move(c));
    }
    return leaf;
  }
  const std::size_t half = (n + 1) / 2;
  FracBatch<F> left = sum_fractions_rec(field, poles.first(half), weights, offset, d);
  FracBatch<F> right = sum_fractions_rec(field, poles.subspan(half), weights, offset + half, d);
  FracBatch<F> out;
  out.N.resize(weights.size());
  if constexpr (std::is_same_v<F, ModField>) {
    const std::size_t out_len = left.D.size() + right.D.size() - 1;
    const std::size_t len = ceil_pow2(out_len);
    if (std::min(left.D.size(), right.D.size()) > kNttCutoff && ntt_supports(field, len)) {
      const auto fl = ntt_forward(field, left.D, len);
      const auto fr = ntt_forward(field, right.D, len);
      std::vector<std::uint64_t> prod(len);
      for (std::size_t i = 0; i < len; ++i) prod[i] = field.mul(fl[i], fr[i]);
      ntt(field, prod, true);
      prod.resize(out_len);
      trim(field, prod);
      out.D = std::move(prod);
      for (std::size_t c = 0; c < weights.size(); ++c) {
        if (left.N[c].empty() && right.N[c].empty()) continue;
        auto a = ntt_forward(field, left.N[c], len);
        const auto b = ntt_forward(field, right.N[c], len);
        for (std::size_t i = 0; i < len; ++i) a[i] = field.add(field.mul(a[i], fr[i]), field.mul(b[i], fl[i]));
        ntt(field, a, true);
        a.resize(out_len);
        trim(field, a);
        out.N[c] = std::move(a);
      }
      return out;
    }
  }
  out.D = poly_mul(field, left.D, right.D);
  for (std::size_t c = 0; c < weights.size(); ++c)
    out.N[c] = poly_mul_add(field, left.N[c], right.D, right.N[c], left.D);
  return out;
}

}  // namespace detail

/// For each channel c: sum_k weights[c][k] / (X - poles[k])^d as N_c / D,
/// with D = prod (X - poles[k])^d shared by all channels. Pairwise
/// divide-and-conquer; deg N_c <= (n-1)d, deg D = nd.
template <class F>
FracBatch<F> sum_fractions_batch(const F& field, const std::vector<typename F::Elem>& poles,
                                 const std::vector<std::vector<typename F::Elem>>& weights, unsigned d) {
  if (d == 0) throw InvalidParameter("fraction order must be at least 1");
  for (const auto& w : weights)
    if (w.size() != poles.size()) throw InvalidParameter("weight channel has the wrong length");
  if (poles.empty()) return {Poly<F>{field.one()}, std::vector<Poly<F>>(weights.size())};
  return detail::sum_fractions_rec(field, std::span<const typename F::Elem>(poles), weights, 0, d);
}

/// sum_k u_k / (X - v_k)^d as N / D.
template <class F>
FracSum<F> sum_fractions(const F& field, const std::vector<std::pair<typename F::Elem, typename F::Elem>>& terms,
                         unsigned d) {
  std::vector<typename F::Elem> poles;
  std::vector<std::vector<typename F::Elem>> weights(1);
  for (const auto& [u, v] : terms) {
    weights[0].push_back(u);
    poles.push_back(v);
  }
  FracBatch<F> b = sum_fractions_batch(field, poles, weights, d);
  return {std::move(b.N[0]), std::move(b.D)};
}

/// Polynomial in X0..Xr stored as univariate-in-X0 coefficients keyed by the
/// exponents of X1..Xr.
template <class F>
using MultiPoly = std::map<std::vector<unsigned>, Poly<F>>;

/// P at every point (x0, x1, ..., xr): one univariate multipoint evaluation
/// per monomial in X1..Xr, sharing a single subproduct tree.
template <class F>
std::vector<typename F::Elem> multipoint_multivar(const F& field, const MultiPoly<F>& P,
                                                  const std::vector<std::vector<typename F::Elem>>& pts) {
  std::vector<typename F::Elem> first;
  first.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.empty()) throw InvalidParameter("evaluation point has no coordinates");
    first.push_back(p[0]);
  }
  std::vector<typename F::Elem> out(pts.size(), field.zero());
  if (pts.empty()) return out;
  const SubproductTree<F> tree(field, first);
  for (const auto& [exps, coeff] : P) {
    const auto vals = tree.evaluate(coeff);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].size() != exps.size() + 1) throw InvalidParameter("evaluation point has the wrong arity");
      auto mono = vals[i];
      for (std::size_t k = 0; k < exps.size(); ++k) mono = field.mul(mono, field.pow(pts[i][k + 1], exps[k]));
      out[i] = field.add(out[i], mono);
    }
  }
  return out;
}

}  // namespace tincalc
