#include "tincalc/match.hpp"

#include "tincalc/errors.hpp"
#include "tincalc/integrate.hpp"

namespace tincalc {

Method parse_method(const std::string& name) {
  if (name == "naive") return Method::Naive;
  if (name == "fast") return Method::Fast;
  throw InvalidParameter("unknown method '" + name + "'");
}

Moments moments(const Tin& t) {
  Moments m;
  m.area = 0;
  const auto funcs = triangle_functions(t);
  const LinearFunc one{1, 0, 0};
  std::vector<Scalar> f1, f2, a;
  for (std::size_t k = 0; k < t.triangles.size(); ++k) {
    const auto& tri = t.triangles[k];
    const TrianglePts pts{t.point(tri[0]), t.point(tri[1]), t.point(tri[2])};
    f1.push_back(integrate_product_over_triangle(funcs[k], one, pts));
    f2.push_back(integrate_product_over_triangle(funcs[k], funcs[k], pts));
    a.push_back(integrate_product_over_triangle(one, one, pts));
  }
  m.integral = sum_exact(std::move(f1));
  m.integral_squared = sum_exact(std::move(f2));
  m.area = sum_exact(std::move(a));
  return m;
}

Scalar inner_product(const Tin& f, const Tin& g, Method method, const FastOptions& options) {
  if (method == Method::Naive) return naive_inner_product(f, g);
  return inner_product_fast(f, g, options).value;
}

Distance l2_distance(const Tin& f, const Tin& g, Method method, const FastOptions& options) {
  const Moments mf = moments(f), mg = moments(g);
  const Scalar fg = inner_product(f, g, method, options);
  Distance d;
  d.squared = mf.integral_squared - 2 * fg + mg.integral_squared;
  d.root = sqrt_decimal(d.squared);
  return d;
}

Fit fit_from_moments(const Moments& mf, const Moments& mg, const Scalar& fg) {
  const Scalar& A = mg.area;
  const Scalar& F = mf.integral;
  const Scalar& G = mg.integral;
  const Scalar& FF = mf.integral_squared;
  const Scalar& GG = mg.integral_squared;
  Fit fit;
  const Scalar det = A * GG - G * G;
  if (det == 0) {
    fit.degenerate = true;
    fit.s = 0;
    fit.t = F / A;
  } else {
    fit.s = (A * fg - F * G) / det;
    fit.t = (F - fit.s * G) / A;
  }
  const Scalar& s = fit.s;
  const Scalar& t = fit.t;
  fit.residual2 = FF - 2 * s * fg - 2 * t * F + s * s * GG + 2 * s * t * G + t * t * A;
  return fit;
}

Fit best_fit(const Tin& f, const Tin& g, Method method, const FastOptions& options) {
  return fit_from_moments(moments(f), moments(g), inner_product(f, g, method, options));
}

}  // namespace tincalc
