#include "tincalc/sympoly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tincalc/errors.hpp"
#include "tincalc/ops.hpp"

namespace tincalc {

MPoly::MPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

MPoly MPoly::constant(std::vector<std::string> variables, const Scalar& value) {
  MPoly p(std::move(variables));
  p.add_term(Exponents(p.nvars(), 0), value);
  return p;
}

MPoly MPoly::variable(std::vector<std::string> variables, std::size_t index) {
  MPoly p(std::move(variables));
  Exponents e(p.nvars(), 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

Scalar MPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MPoly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != vars_.size()) throw InvalidParameter("exponent vector has the wrong arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MPoly::require_same_ring(const MPoly& o) const {
  if (vars_ != o.vars_) throw InvalidParameter("polynomials over different variable sets");
}

MPoly MPoly::operator+(const MPoly& o) const {
  require_same_ring(o);
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator-() const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  require_same_ring(o);
  MPoly r(vars_);
  Exponents e(vars_.size());
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MPoly MPoly::operator*(const Scalar& k) const {
  MPoly r(vars_);
  if (k == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly result = constant(vars_, 1);
  MPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponents d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

MPoly MPoly::antiderivative(std::size_t var) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    ++d.at(var);
    r.add_term(d, c / Scalar(d[var]));
  }
  return r;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
  require_same_ring(value);
  MPoly r(vars_);
  std::vector<MPoly> powers{constant(vars_, 1)};
  for (const auto& [e, c] : terms_) {
    const unsigned k = e.at(var);
    while (powers.size() <= k) powers.push_back(powers.back() * value);
    Exponents rest = e;
    rest[var] = 0;
    MPoly mono(vars_);
    mono.add_term(rest, c);
    r = r + mono * powers[k];
  }
  return r;
}

Scalar MPoly::evaluate(std::span<const Scalar> values) const {
  if (values.size() != vars_.size()) throw InvalidParameter("wrong number of values");
  std::vector<std::vector<Scalar>> powers(vars_.size(), std::vector<Scalar>{Scalar(1)});
  Scalar total = 0;
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      auto& pk = powers[k];
      while (pk.size() <= e[k]) pk.push_back(pk.back() * values[k]);
      term *= pk[e[k]];
    }
    total += term;
  }
  return total;
}

int MPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return best;
}

unsigned MPoly::degree_in(std::size_t var) const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e.at(var));
  return best;
}

std::pair<MPoly, MPoly> MPoly::divide(const MPoly& divisor) const {
  require_same_ring(divisor);
  if (divisor.is_zero()) throw InvalidParameter("division by the zero polynomial");
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  MPoly quotient(vars_), remainder(vars_), work = *this;
  while (!work.is_zero()) {
    const auto [e, c] = *work.terms_.rbegin();
    bool divisible = true;
    Exponents q(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] < lead_e[k]) {
        divisible = false;
        break;
      }
      q[k] = e[k] - lead_e[k];
    }
    if (!divisible) {
      remainder.add_term(e, c);
      work.terms_.erase(e);
      continue;
    }
    MPoly step(vars_);
    step.add_term(q, c / lead_c);
    quotient = quotient + step;
    work = work - step * divisor;
  }
  return {quotient, remainder};
}

MPoly MPoly::remap(std::vector<std::string> variables, std::span<const std::size_t> mapping) const {
  if (mapping.size() != vars_.size()) throw InvalidParameter("mapping has the wrong arity");
  MPoly r(std::move(variables));
  for (const auto& [e, c] : terms_) {
    Exponents d(r.nvars(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) d.at(mapping[k]) += e[k];
    r.add_term(d, c);
  }
  return r;
}

MPoly MPoly::drop_variable(std::size_t var) const {
  if (degree_in(var) != 0) throw InvalidParameter("variable " + vars_.at(var) + " still occurs");
  std::vector<std::string> vars = vars_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
  MPoly r(vars);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(var));
    r.add_term(d, c);
  }
  return r;
}

std::string MPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    out << (first ? "" : " + ") << "(" << tincalc::to_string(c) << ")";
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      out << "*" << vars_[k];
      if (e[k] > 1) out << "^" << e[k];
    }
    first = false;
  }
  return out.str();
}

MPoly antiderivative_Q(unsigned i, unsigned j) {
  const std::vector<std::string> vars{"u", "v", "x"};
  const MPoly x = MPoly::variable(vars, 2);
  const MPoly line = MPoly::variable(vars, 0) + MPoly::variable(vars, 1) * x;
  return (x.pow(i) * line.pow(j)).antiderivative(2);
}

MPoly wedge_numerator_P(unsigned i, unsigned j) {
  // Work in (y_l, y_u, s_l, s_u, x), then eliminate x.
  const std::vector<std::string> vars{"y_l", "y_u", "s_l", "s_u", "x"};
  constexpr std::size_t kX = 4;
  const MPoly q = antiderivative_Q(i, j + 1);
  const std::array<std::size_t, 3> upper_map{1, 3, kX};
  const std::array<std::size_t, 3> lower_map{0, 2, kX};
  const MPoly value = (q.remap(vars, upper_map) - q.remap(vars, lower_map)) * Scalar(1, j + 1);

  // x_p = -(y_u - y_l) / (s_u - s_l): multiply through by (s_u - s_l)^(i+j+2).
  const unsigned top = i + j + 2;
  const MPoly dy = MPoly::variable(vars, 1) - MPoly::variable(vars, 0);
  const MPoly ds = MPoly::variable(vars, 3) - MPoly::variable(vars, 2);
  std::vector<MPoly> neg_dy_pow{MPoly::constant(vars, 1)}, ds_pow{MPoly::constant(vars, 1)};
  for (unsigned k = 1; k <= top; ++k) {
    neg_dy_pow.push_back(neg_dy_pow.back() * (-dy));
    ds_pow.push_back(ds_pow.back() * ds);
  }
  MPoly cleared(vars);
  for (const auto& [e, c] : value.terms()) {
    const unsigned k = e[kX];
    if (k > top) throw std::logic_error("Q has unexpected degree in x");
    MPoly::Exponents rest = e;
    rest[kX] = 0;
    MPoly mono(vars);
    mono.add_term(rest, c);
    cleared = cleared + mono * neg_dy_pow[k] * ds_pow[top - k];
  }
  auto [quotient, remainder] = cleared.divide(ds);
  if (!remainder.is_zero())
    throw std::logic_error("wedge numerator is not divisible by (s_u - s_l)");
  return quotient.drop_variable(kX);
}

namespace {

struct WedgeCache {
  std::mutex mutex;
  std::map<std::pair<unsigned, unsigned>, MPoly> entries;

  WedgeCache() {
    for (unsigned i = 0; i <= 2; ++i)
      for (unsigned j = 0; i + j <= 2; ++j) entries.emplace(std::pair{i, j}, wedge_numerator_P(i, j));
  }
};

WedgeCache& wedge_cache() {
  static WedgeCache cache;
  return cache;
}

}  // namespace

const MPoly& wedge_numerator(unsigned i, unsigned j) {
  WedgeCache& cache = wedge_cache();
  std::lock_guard lock(cache.mutex);
  auto it = cache.entries.find({i, j});
  if (it == cache.entries.end()) it = cache.entries.emplace(std::pair{i, j}, wedge_numerator_P(i, j)).first;
  return it->second;
}

Scalar wedge_integral_monomial(const WedgeLines& w, unsigned i, unsigned j) {
  const Scalar ds = w.s_u - w.s_l;
  if (ds == 0) throw ParallelLines("wedge lines are parallel");
  const std::array<Scalar, 4> at{w.y_l, w.y_u, w.s_l, w.s_u};
  Scalar den = 1;
  for (unsigned k = 0; k < i + j + 1; ++k) den *= ds;
  const MPoly& P = wedge_numerator(i, j);
  ops::tick(2 * P.terms().size() + i + j + 2);
  return P.evaluate(at) / den;
}

Quadratic Quadratic::product(const LinearFunc& f, const LinearFunc& g) {
  return {{f.a * g.a, f.a * g.b + f.b * g.a, f.a * g.c + f.c * g.a, f.b * g.b, f.b * g.c + f.c * g.b, f.c * g.c}};
}

Quadratic Quadratic::operator+(const Quadratic& o) const {
  Quadratic r;
  for (std::size_t k = 0; k < 6; ++k) r.c[k] = c[k] + o.c[k];
  return r;
}

Quadratic Quadratic::operator-(const Quadratic& o) const {
  Quadratic r;
  for (std::size_t k = 0; k < 6; ++k) r.c[k] = c[k] - o.c[k];
  return r;
}

Quadratic Quadratic::operator*(const Scalar& k) const {
  Quadratic r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] * k;
  return r;
}

Scalar Quadratic::operator()(const Scalar& x, const Scalar& y) const {
  return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
}

Scalar wedge_integral(const WedgeLines& w, const Quadratic& h) {
  const Scalar ds = w.s_u - w.s_l;
  if (ds == 0) throw ParallelLines("wedge lines are parallel");
  const std::array<Scalar, 4> at{w.y_l, w.y_u, w.s_l, w.s_u};
  // Group by total degree so each degree shares one power of ds.
  Scalar total = 0;
  Scalar ds_pow = ds;
  std::size_t k = 0;
  for (unsigned degree = 0; degree <= 2; ++degree) {
    Scalar numer = 0;
    for (; k < 6 && Quadratic::kExponents[k][0] + Quadratic::kExponents[k][1] == degree; ++k) {
      if (h.c[k] == 0) continue;
      const MPoly& P = wedge_numerator(Quadratic::kExponents[k][0], Quadratic::kExponents[k][1]);
      ops::tick(2 * P.terms().size() + 2);
      numer += h.c[k] * P.evaluate(at);
    }
    total += numer / ds_pow;
    ds_pow *= ds;
    ops::tick(3);
  }
  return total;
}

WedgeLines wedge_at(const Point& p, const Point& dir1, const Point& dir2) {
  if (dir1.x == 0 || dir2.x == 0) throw VerticalEdge("wedge direction is vertical");
  Scalar s1 = dir1.y / dir1.x;
  Scalar s2 = dir2.y / dir2.x;
  if (s1 == s2) throw ParallelLines("wedge directions are parallel");
  if (s1 < s2) std::swap(s1, s2);
  return {p.y - s1 * p.x, s1, p.y - s2 * p.x, s2};
}

int corner_sign(const WedgeLines& w, const Point& inside) {
  // `inside` is a direction from the apex; compare it with each line's
  // direction (1, s).
  const int side_l = sgn(inside.y - w.s_l * inside.x);
  const int side_u = sgn(inside.y - w.s_u * inside.x);
  if (side_l == 0 || side_u == 0) throw DegenerateInput("interior direction lies on a wedge line");
  return side_l == side_u ? -1 : 1;
}

Scalar integrate_over_convex_polygon(std::span<const Point> vertices, const MPoly& h) {
  const std::size_t k = vertices.size();
  if (k < 3) throw NotConvex("polygon needs at least three vertices");
  if (h.nvars() != 2) throw InvalidParameter("integrand must be a polynomial in (x, y)");
  for (std::size_t i = 0; i < k; ++i) {
    const Point& a = vertices[(i + k - 1) % k];
    const Point& b = vertices[i];
    const Point& c = vertices[(i + 1) % k];
    if (orient(a, b, c) <= 0) throw NotConvex("polygon is not strictly convex and counterclockwise");
  }
  for (std::size_t i = 2; i < k; ++i)
    if (orient(vertices[0], vertices[i - 1], vertices[i]) <= 0) throw NotConvex("polygon winds more than once");

  // Remove vertical edges with a shear; the integrand follows the map.
  Scalar shear = 0;
  for (long den = 2;; ++den) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const Point& a = vertices[i];
      const Point& b = vertices[(i + 1) % k];
      if ((b.x - a.x) + shear * (b.y - a.y) == 0) ok = false;
    }
    if (ok) break;
    shear = Scalar(1, den);
  }
  std::vector<Point> pts(vertices.begin(), vertices.end());
  MPoly g = h;
  if (shear != 0) {
    for (auto& p : pts) p.x += shear * p.y;
    const auto& vars = h.variables();
    g = h.substitute(0, MPoly::variable(vars, 0) - MPoly::variable(vars, 1) * shear);
  }

  Scalar total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Point& p = pts[i];
    const Point& prev = pts[(i + k - 1) % k];
    const Point& next = pts[(i + 1) % k];
    const Point d1{prev.x - p.x, prev.y - p.y};
    const Point d2{next.x - p.x, next.y - p.y};
    const WedgeLines w = wedge_at(p, d1, d2);
    const int delta = corner_sign(w, Point{d1.x + d2.x, d1.y + d2.y});
    Scalar term = 0;
    for (const auto& [e, c] : g.terms()) term += c * wedge_integral_monomial(w, e[0], e[1]);
    total += delta * term;
  }
  return total;
}

}  // namespace tincalc
