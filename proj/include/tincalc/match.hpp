#pragma once

#include <string>

#include "tincalc/fastinner.hpp"
#include "tincalc/geom.hpp"

namespace tincalc {

enum class Method { Naive, Fast };

Method parse_method(const std::string& name);

struct Moments {
  Scalar integral;          // of f
  Scalar integral_squared;  // of f^2
  Scalar area;
};

Moments moments(const Tin& t);

/// Integral of f*g by the chosen method.
Scalar inner_product(const Tin& f, const Tin& g, Method method, const FastOptions& options = {});

struct Distance {
  Scalar squared;
  /// Correctly rounded 17-digit decimal square root of `squared`.
  std::string root;
};

Distance l2_distance(const Tin& f, const Tin& g, Method method, const FastOptions& options = {});

struct Fit {
  Scalar s;
  Scalar t;
  Scalar residual2;
  /// g is constant on the domain, so s is undetermined and set to 0.
  bool degenerate = false;
};

/// Minimises the squared L2 norm of f - (s*g + t).
Fit best_fit(const Tin& f, const Tin& g, Method method, const FastOptions& options = {});

/// The same fit from precomputed moments and inner product.
Fit fit_from_moments(const Moments& mf, const Moments& mg, const Scalar& fg);

}  // namespace tincalc
