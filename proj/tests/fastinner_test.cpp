#include <gtest/gtest.h>

#include "support.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/fastinner.hpp"
#include "tincalc/integrate.hpp"

using namespace tincalc;
using testing_support::q;
using testing_support::random_rational;
using testing_support::square;
using testing_support::wedge_oracle;

namespace {

// Minus the integral of the product of the two jumps over the wedge between
// the edges' lines, the steeper line taken as the lower bound.
Scalar pair_oracle(const CrossingEdge& a, const CrossingEdge& b) {
  const CrossingEdge& steep = a.slope > b.slope ? a : b;
  const CrossingEdge& shallow = a.slope > b.slope ? b : a;
  const LinearFunc u = a.upper - a.lower, v = b.upper - b.lower;
  const Scalar coeff[6] = {u.a * v.a, u.a * v.b + u.b * v.a, u.a * v.c + u.c * v.a,
                           u.b * v.b, u.b * v.c + u.c * v.b, u.c * v.c};
  const unsigned exps[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  Scalar acc = 0;
  for (int k = 0; k < 6; ++k)
    acc += coeff[k] * wedge_oracle(steep.intercept, steep.slope, shallow.intercept, shallow.slope, exps[k][0], exps[k][1]);
  return -acc;
}

LinearFunc random_func(std::mt19937_64& rng) {
  return {random_rational(rng, 30, 7), random_rational(rng, 30, 7), random_rational(rng, 30, 7)};
}

CrossingEdge random_edge(std::mt19937_64& rng, long slope_lo) {
  std::uniform_int_distribution<long> s(0, 97);
  Scalar slope = Scalar(slope_lo) + Scalar(s(rng), 97);
  slope.canonicalize();
  const Scalar intercept = random_rational(rng, 50, 11);
  // The two sides agree on the edge's line.
  const LinearFunc lower = random_func(rng);
  const LinearFunc across{-intercept, -slope, 1};
  return {slope, intercept, lower - across * random_rational(rng, 9, 5), lower};
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::uint64_t reduce(const Scalar& r, const PrimeBasket& basket, std::size_t id) {
  return rat_to_fp(r, basket, id).value;
}

}  // namespace

TEST(PairOracle, AgreesWithCrossingContribution) {
  const auto pr = testing_support::random_pair(30, 4);
  const auto np = normalize_pair(pr.f, pr.g, 4);
  const auto fe = build_edge_data(np.f), ge = build_edge_data(np.g);
  std::vector<std::size_t> fid, gid;
  const auto fs = interior_segments(np.f, fe, &fid);
  const auto gs = interior_segments(np.g, ge, &gid);
  std::size_t n = 0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j)
      if (segments_cross(fs[i], gs[j])) {
        ++n;
        EXPECT_EQ(pair_oracle(CrossingEdge::from(fe[fid[i]]), CrossingEdge::from(ge[gid[j]])),
                  crossing_contribution(np.f, fe[fid[i]], np.g, ge[gid[j]]));
      }
  EXPECT_GT(n, 5u);
}

TEST(CliqueSigma, SinglePair) {
  std::mt19937_64 rng(1);
  const PrimeBasket basket(3, 62);
  const std::vector<CrossingEdge> red{random_edge(rng, 2)}, blue{random_edge(rng, -1)};
  const Scalar exact = pair_oracle(red[0], blue[0]);
  for (GridForm form : {GridForm::Difference9, GridForm::Literal36})
    for (std::size_t cutover : {std::size_t{0}, std::size_t{1000000}})
      for (std::size_t id = 0; id < basket.size(); ++id)
        EXPECT_EQ(clique_sigma(red, blue, {{0}, {0}, false}, basket, id, form, cutover).value,
                  reduce(exact, basket, id));
}

TEST(CliqueSigma, RandomCliquesMatchDoubleLoop) {
  std::mt19937_64 rng(2);
  const PrimeBasket basket(2, 62);
  const std::pair<std::size_t, std::size_t> shapes[] = {{20, 20}, {1, 30}, {30, 1}, {7, 13}, {3, 3}};
  for (auto [nr, nb] : shapes)
    for (bool red_lower : {false, true}) {
      std::vector<CrossingEdge> red, blue;
      for (std::size_t i = 0; i < nr; ++i) red.push_back(random_edge(rng, red_lower ? -1 : 2));
      for (std::size_t j = 0; j < nb; ++j) blue.push_back(random_edge(rng, red_lower ? 2 : -1));
      Scalar exact = 0;
      for (const auto& r : red)
        for (const auto& b : blue) exact += pair_oracle(r, b);
      const Clique c{iota(nr), iota(nb), red_lower};
      for (GridForm form : {GridForm::Difference9, GridForm::Literal36})
        for (std::size_t cutover : {std::size_t{0}, std::size_t{4}, std::size_t{1000000}})
          EXPECT_EQ(clique_sigma(red, blue, c, basket, 1, form, cutover).value, reduce(exact, basket, 1))
              << nr << "x" << nb << " cutover " << cutover;
    }
}

TEST(CliqueSigma, EmptySideIsZero) {
  std::mt19937_64 rng(3);
  const PrimeBasket basket(1, 62);
  const std::vector<CrossingEdge> red{random_edge(rng, 2)}, blue;
  EXPECT_EQ(clique_sigma(red, blue, {{0}, {}, false}, basket, 0).value, 0u);
  EXPECT_EQ(clique_sigma(blue, red, {{}, {0}, false}, basket, 0, GridForm::Literal36).value, 0u);
}

TEST(CliqueSigma, PrimeDividingADenominator) {
  const PrimeBasket basket(1, 24);
  const std::uint64_t p = basket.prime(0);
  std::mt19937_64 rng(4);
  std::vector<CrossingEdge> red{random_edge(rng, 2)};
  const std::vector<CrossingEdge> blue{random_edge(rng, -1)};
  red[0].intercept = Scalar(1, static_cast<long>(p));
  EXPECT_THROW(clique_sigma(red, blue, {{0}, {0}, false}, basket, 0), BadPrime);
}

TEST(InnerProductFast, SmallExamples) {
  const LinearFunc x{0, 1, 0}, y{0, 0, 1}, one{1, 0, 0};
  EXPECT_EQ(inner_product_fast(square(true, x), square(false, y)).value, q("1/4"));
  const Rect dom{-1, 2, 3, q("7/2")};
  EXPECT_EQ(inner_product_fast(square(true, one, dom), square(false, one, dom)).value, dom.area());
  const auto r = inner_product_fast(square(true, x), square(false, x));
  EXPECT_EQ(r.value, q("1/3"));
  EXPECT_EQ(r.crossings, 1u);
  EXPECT_EQ(r.edge_sum, 0);
}

TEST(InnerProductFast, MatchesNaiveOnRandomPairs) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto pr = testing_support::random_pair(16 + 8 * seed, seed);
    const auto res = inner_product_fast(pr.f, pr.g);
    const Scalar naive = naive_inner_product(pr.f, pr.g);
    EXPECT_EQ(res.value, naive) << seed;
    EXPECT_EQ(res.vertex_sum + res.edge_sum, res.value);
    EXPECT_GE(res.primes_used, 2u);
  }
}

TEST(InnerProductFast, IndependentTriangulationSizes) {
  for (auto [nf, ng] : {std::pair<std::size_t, std::size_t>{8, 128}, {100, 6}, {2, 60}}) {
    for (std::uint64_t seed = 1;; ++seed) {
      const Tin f = generate_tin(nf, seed, Surface::random_uniform());
      const Tin g = generate_tin(ng, seed + 1000, Surface::random_uniform());
      if (!validate_pair(f, g).ok()) continue;
      EXPECT_EQ(inner_product_fast(f, g).value, naive_inner_product(f, g));
      break;
    }
  }
}

TEST(InnerProductFast, OptionsDoNotChangeTheValue) {
  const auto pr = testing_support::random_pair(60, 21);
  const Scalar expected = naive_inner_product(pr.f, pr.g);
  FastOptions o;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o.form = GridForm::Literal36;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o = {};
  o.direct_cutover = 0;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o.direct_cutover = 1000000;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o = {};
  o.prime_bits = 31;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o.primes = 2;  // grows on failure
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
  o = {};
  o.threads = 3;
  o.normalize_seed = 99;
  EXPECT_EQ(inner_product_fast(pr.f, pr.g, o).value, expected);
}

TEST(InnerProductFast, DiscardsPrimeDividingADenominator) {
  const std::uint64_t p = ntt_primes(1, 24)[0];
  // An interior vertex whose abscissa has the first basket prime as denominator.
  Tin f;
  f.domain = {0, 0, 1, 1};
  f.vertices = {{0, 0, 1}, {1, 0, 2}, {1, 1, 0}, {0, 1, 3}, {Scalar(1, 2) + Scalar(1, static_cast<long>(p)), q("1/3"), 5}};
  f.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  const Tin g = square(false, {1, 2, -1});
  ASSERT_TRUE(validate_pair(f, g).ok());
  FastOptions o;
  o.prime_bits = 24;
  const auto res = inner_product_fast(f, g, o);
  EXPECT_EQ(res.value, naive_inner_product(f, g));
  EXPECT_GE(res.primes_discarded, 1u);
}

TEST(InnerProductFast, CountsFieldOperations) {
  const auto pr = testing_support::random_pair(64, 5);
  const auto res = inner_product_fast(pr.f, pr.g);
  EXPECT_GT(res.field_ops, 0u);
  EXPECT_GE(res.field_ops_total, res.field_ops);
  EXPECT_EQ(res.clique_size > 0, res.crossings > 0);
}
