#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tincalc/geom.hpp"

namespace tincalc {

/// Height field sampled at the vertices of a generated terrain.
struct Surface {
  enum class Kind { RandomUniform, Plane, Saddle, Polynomial };

  Kind kind = Kind::RandomUniform;
  /// Plane: a, b, c. Polynomial: coefficients in graded order
  /// 1, x, y, x^2, xy, y^2, x^3, ...
  std::vector<Scalar> coeffs;

  static Surface random_uniform() { return {}; }
  static Surface plane(Scalar a, Scalar b, Scalar c) { return {Kind::Plane, {a, b, c}}; }
  static Surface saddle() { return {Kind::Saddle, {}}; }
  static Surface polynomial(std::vector<Scalar> c) { return {Kind::Polynomial, std::move(c)}; }

  /// "random", "saddle", "plane:a,b,c" or "poly:c0,c1,...".
  static Surface parse(const std::string& text);

  /// Height at (x, y). RandomUniform ignores the position and needs `draw`, a
  /// uniform integer in [0, 64].
  Scalar eval(const Scalar& x, const Scalar& y, std::uint64_t draw = 0) const;
};

enum class FlipMode { None, Random, Delaunay };

FlipMode parse_flip_mode(const std::string& text);

struct GenerateOptions {
  std::size_t triangles = 2;
  std::uint64_t seed = 0;
  Surface surface;
  Rect domain{0, 0, 1, 1};
  /// Extra vertices inserted on the domain sides; each adds one triangle.
  std::size_t boundary_points = 0;
  FlipMode flips = FlipMode::Delaunay;
  /// Number of attempted flips in FlipMode::Random (0 means `triangles`).
  std::size_t random_flips = 0;
  /// Vertices lie on a (2^grid_bits)^2 lattice over the domain.
  unsigned grid_bits = 12;
};

/// Deterministic random terrain: the domain split by one diagonal, then
/// random points inserted into their containing triangles, then flips.
/// Throws InvalidParameter unless triangles >= 2 and the triangle count is
/// reachable (triangles - boundary_points even).
Tin generate_tin(const GenerateOptions& options);
Tin generate_tin(std::size_t triangles, std::uint64_t seed, const Surface& surface);

struct TinPair {
  Tin f;
  Tin g;
  /// Number of candidate pairs rejected by validate_pair before this one.
  std::size_t rejected = 0;
};

/// Two independently triangulated terrains over the same domain that pass
/// validate_pair. `base` supplies every option except seed and surface.
/// Throws InvalidParameter after 1000 rejected candidates (FlipMode::None,
/// for instance, gives both terrains the same corner diagonal).
TinPair generate_pair(const GenerateOptions& base, std::uint64_t seed, const Surface& f_surface,
                      const Surface& g_surface);

}  // namespace tincalc
