#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tincalc/geom.hpp"
#include "tincalc/scalar.hpp"

namespace tincalc {

/// Sparse multivariate polynomial with rational coefficients over a fixed,
/// named variable set. Terms are kept in lexicographic exponent order
/// (variable 0 most significant); zero coefficients are never stored.
class MPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit MPoly(std::vector<std::string> variables);

  static MPoly constant(std::vector<std::string> variables, const Scalar& value);
  static MPoly variable(std::vector<std::string> variables, std::size_t index);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the given monomial (zero if absent).
  Scalar coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Scalar& c);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Scalar& k) const;
  MPoly pow(unsigned k) const;
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  MPoly derivative(std::size_t var) const;
  /// The antiderivative in `var` that vanishes at var = 0.
  MPoly antiderivative(std::size_t var) const;
  MPoly substitute(std::size_t var, const MPoly& value) const;
  Scalar evaluate(std::span<const Scalar> values) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(std::size_t var) const;

  /// Multivariate division in lex order: returns {quotient, remainder}.
  std::pair<MPoly, MPoly> divide(const MPoly& divisor) const;

  /// Re-expresses the polynomial over `variables`; old variable k becomes new
  /// variable mapping[k].
  MPoly remap(std::vector<std::string> variables, std::span<const std::size_t> mapping) const;
  /// Removes a variable that does not occur.
  MPoly drop_variable(std::size_t var) const;

  std::string to_string() const;

 private:
  void require_same_ring(const MPoly& o) const;

  std::vector<std::string> vars_;
  std::map<Exponents, Scalar> terms_;
};

/// Q_{i,j}(u, v, x): the antiderivative of x^i (u + v x)^j in x vanishing at
/// x = 0. Variables are (u, v, x).
MPoly antiderivative_Q(unsigned i, unsigned j);

/// P_{i,j}(y_l, y_u, s_l, s_u): numerator of the wedge integral of x^i y^j,
/// derived symbolically from Q_{i,j+1}. Variables are (y_l, y_u, s_l, s_u).
MPoly wedge_numerator_P(unsigned i, unsigned j);

/// Cached P_{i,j}; entries with i + j <= 2 are built on first use of the
/// cache, higher ones lazily. Thread-safe.
const MPoly& wedge_numerator(unsigned i, unsigned j);

/// The two lines bounding a corner wedge: L (y = y_l + s_l x, the higher
/// slope) and U (y = y_u + s_u x).
struct WedgeLines {
  Scalar y_l;
  Scalar s_l;
  Scalar y_u;
  Scalar s_u;
};

/// Integral of x^i y^j over x in [0, x_p], y between L and U, where x_p is
/// the abscissa of L and U's intersection. Throws ParallelLines if s_l == s_u.
Scalar wedge_integral_monomial(const WedgeLines& w, unsigned i, unsigned j);

/// Quadratic bivariate polynomial, coefficients of 1, x, y, x^2, xy, y^2.
struct Quadratic {
  std::array<Scalar, 6> c;

  static constexpr std::array<std::array<unsigned, 2>, 6> kExponents{
      {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};

  static Quadratic product(const LinearFunc& f, const LinearFunc& g);
  Quadratic operator+(const Quadratic& o) const;
  Quadratic operator-(const Quadratic& o) const;
  Quadratic operator*(const Scalar& k) const;
  Scalar operator()(const Scalar& x, const Scalar& y) const;
};

/// Integral of a quadratic over the wedge.
Scalar wedge_integral(const WedgeLines& w, const Quadratic& h);

/// Lines through p along two non-parallel, non-vertical directions, ordered
/// so that the first is L (higher slope).
WedgeLines wedge_at(const Point& p, const Point& dir1, const Point& dir2);

/// Sign of the corner term: +1 when the direction `inside` lies between the
/// two lines of the wedge at that corner, -1 when it is above or below both.
int corner_sign(const WedgeLines& w, const Point& inside);

/// Integral of h(x, y) over a strictly convex polygon given counterclockwise,
/// as the signed sum of one wedge term per vertex. Vertical edges are removed
/// internally by an area-preserving shear. Throws NotConvex.
Scalar integrate_over_convex_polygon(std::span<const Point> vertices, const MPoly& h);

}  // namespace tincalc
