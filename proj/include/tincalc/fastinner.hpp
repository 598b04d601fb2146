#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tincalc/cliques.hpp"
#include "tincalc/field.hpp"
#include "tincalc/geom.hpp"

namespace tincalc {

/// How the four cell products at a crossing are fed to the fraction sums.
enum class GridForm {
  /// One product of the two jumps (nine monomial terms).
  Difference9,
  /// The four cell products separately (thirty-six terms).
  Literal36,
};

/// Rational data of an interior edge taking part in crossings. The upper and
/// lower functions must agree on the edge's supporting line.
struct CrossingEdge {
  Scalar slope;
  Scalar intercept;
  LinearFunc upper;
  LinearFunc lower;

  static CrossingEdge from(const EdgeData& e) { return {e.slope, e.y_intercept, e.upper, e.lower}; }
};

/// Per-prime evaluator of the crossing sum of one clique.
class CliqueEvaluator {
 public:
  using Elem = ModField::Elem;

  struct ModEdge {
    Elem y;
    Elem s;
    /// Coefficients (1, x, y) of jump, upper and lower functions.
    std::array<std::array<Elem, 3>, 3> funcs;
  };

  CliqueEvaluator(const ModField& field, std::size_t prime_id, GridForm form);

  /// Throws BadPrime when the prime divides a denominator.
  ModEdge convert(const CrossingEdge& e) const;

  /// Sum over every (steep, shallow) pair of the crossing contribution,
  /// where every steep slope exceeds every shallow slope. Pairs are summed
  /// directly when the smaller side has at most `direct_cutover` edges,
  /// otherwise by fraction sums and multipoint evaluation.
  Elem sigma(std::span<const ModEdge> steep, std::span<const ModEdge> shallow, std::size_t direct_cutover) const;

  Elem sigma_fast(std::span<const ModEdge> steep, std::span<const ModEdge> shallow) const;
  Elem sigma_direct(std::span<const ModEdge> steep, std::span<const ModEdge> shallow) const;

 private:
  struct Spec {
    Elem sign;
    std::size_t steep_func;
    std::size_t shallow_func;
  };
  // Terms of one wedge numerator grouped by the powers of the steep line's
  // slope (dx) and intercept (dy); each holds monomials in the shallow line.
  struct Group {
    unsigned dx;
    unsigned dy;
    std::vector<std::array<unsigned, 2>> exps;  // (intercept, slope) powers
    std::vector<Elem> coeffs;
  };
  struct Numerator {
    unsigned i, j;
    std::vector<Group> groups;
    std::vector<std::array<unsigned, 4>> exps;  // full (y_l, y_u, s_l, s_u) terms
    std::vector<Elem> coeffs;
  };

  const Numerator& numerator(unsigned alpha, unsigned beta) const;

  Elem sigma_direct_difference(std::span<const ModEdge> steep, std::span<const ModEdge> shallow) const;

  const ModField& field_;
  std::size_t prime_id_;
  GridForm form_;
  Elem inv24_;
  std::vector<Spec> specs_;
  std::vector<Numerator> numerators_;  // indexed by monomial (i, j), i + j <= 2
};

/// Crossing sum of one clique modulo one prime of the basket.
Fp clique_sigma(const std::vector<CrossingEdge>& red, const std::vector<CrossingEdge>& blue, const Clique& c,
                const PrimeBasket& basket, std::size_t prime_id, GridForm form = GridForm::Difference9,
                std::size_t direct_cutover = 0);

struct FastOptions {
  GridForm form = GridForm::Difference9;
  /// Initial number of primes; 0 estimates it from the input.
  std::size_t primes = 0;
  unsigned prime_bits = 62;
  /// Worker threads; 0 uses TINCALC_THREADS or the hardware concurrency.
  unsigned threads = 0;
  /// Cliques whose smaller side has at most this many edges are summed pair
  /// by pair. 0 sends every clique through the fraction-sum engine.
  std::size_t direct_cutover = 4;
  std::uint64_t normalize_seed = 0;
};

struct FastResult {
  Scalar value;
  Scalar vertex_sum;
  Scalar edge_sum;
  std::size_t cliques = 0;
  std::size_t clique_size = 0;
  std::size_t crossings = 0;
  std::size_t primes_used = 0;
  std::size_t primes_discarded = 0;
  /// Vertex terms plus one prime's pass over the cliques.
  std::uint64_t field_ops = 0;
  /// Every pass over every prime, plus the vertex terms.
  std::uint64_t field_ops_total = 0;
};

/// Integral of f*g over the common domain via the clique decomposition of
/// edge crossings. The pair must pass validate_pair.
FastResult inner_product_fast(const Tin& f, const Tin& g, const FastOptions& options = {});

/// Worker count from TINCALC_THREADS, capped by the hardware.
unsigned default_threads();

}  // namespace tincalc
