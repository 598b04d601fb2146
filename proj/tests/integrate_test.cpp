#include <gtest/gtest.h>

#include "support.hpp"
#include "tincalc/cliques.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/integrate.hpp"

using namespace tincalc;
using testing_support::q;
using testing_support::square;

namespace {

Scalar polygon_area(const std::vector<Point>& p) {
  Scalar a = 0;
  for (std::size_t k = 0; k < p.size(); ++k) a += cross(p[k], p[(k + 1) % p.size()]);
  return a / 2;
}

const LinearFunc kX{0, 1, 0}, kY{0, 0, 1}, kOne{1, 0, 0};

}  // namespace

TEST(ClipTriangles, IdenticalDisjointAndCrossed) {
  const TrianglePts a{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  EXPECT_EQ(polygon_area(clip_triangles(a, a)), q("1/2"));
  EXPECT_TRUE(clip_triangles(a, {Point{2, 2}, Point{3, 2}, Point{2, 3}}).empty());
  // Shared edge only.
  EXPECT_TRUE(clip_triangles(a, {Point{1, 0}, Point{1, 1}, Point{0, 1}}).empty());
  // Lower-right half against lower-left half of the unit square.
  const auto p = clip_triangles({Point{0, 0}, Point{1, 0}, Point{1, 1}}, {Point{0, 0}, Point{1, 0}, Point{0, 1}});
  EXPECT_EQ(polygon_area(p), q("1/4"));
  EXPECT_GT(polygon_area(p), 0);
}

TEST(IntegrateOverTriangle, Examples) {
  const TrianglePts tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  EXPECT_EQ(integrate_product_over_triangle(kOne, kOne, tri), q("1/2"));
  EXPECT_EQ(integrate_product_over_triangle(kX, kY, tri), q("1/24"));
  EXPECT_EQ(integrate_product_over_triangle(kX, kX, tri), q("1/12"));
  const LinearFunc f{1, 2, -3}, g{q("1/2"), 0, 5};
  EXPECT_EQ(integrate_product_over_triangle(f, g, tri), integrate_product_over_triangle(g, f, tri));
}

TEST(NaiveInnerProduct, Squares) {
  EXPECT_EQ(naive_inner_product(square(true, kOne), square(false, kOne)), 1);
  EXPECT_EQ(naive_inner_product(square(true, kX), square(false, kY)), q("1/4"));
  EXPECT_EQ(naive_inner_product(square(true, kX), square(true, kX)), q("1/3"));
}

TEST(NaiveInnerProduct, CommutativeAndBilinear) {
  const auto pr = testing_support::random_pair(24, 5);
  const Scalar fg = naive_inner_product(pr.f, pr.g);
  EXPECT_EQ(naive_inner_product(pr.g, pr.f), fg);
  const Tin g2 = testing_support::scale_heights(pr.g, q("-3/2"), 2);
  Scalar f_area = 0;
  for (const auto& tri : pr.f.triangles) {
    const TrianglePts pts{pr.f.point(tri[0]), pr.f.point(tri[1]), pr.f.point(tri[2])};
    f_area += integrate_product_over_triangle(plane_from_triangle(pr.f.vertices[tri[0]], pr.f.vertices[tri[1]],
                                                                  pr.f.vertices[tri[2]]),
                                              kOne, pts);
  }
  EXPECT_EQ(naive_inner_product(pr.f, g2), q("-3/2") * fg + 2 * f_area);
}

TEST(VertexTerms, OppositeDiagonals) {
  const auto np = normalize_pair(square(true, kX), square(false, kY));
  EXPECT_EQ(vertex_term_sum(np.f, np.g) + naive_edge_term_sum(np.f, np.g), q("1/4"));
}

TEST(Decomposition, VertexPlusEdgeEqualsNaive) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto pr = testing_support::random_pair(16 + 2 * (seed % 9), seed);
    const auto np = normalize_pair(pr.f, pr.g, seed);
    const Scalar naive = naive_inner_product(pr.f, pr.g);
    EXPECT_EQ(naive_inner_product(np.f, np.g), naive) << seed;
    EXPECT_EQ(vertex_term_sum(np.f, np.g) + naive_edge_term_sum(np.f, np.g), naive) << seed;
  }
}

TEST(Decomposition, VertexSumIsSymmetric) {
  for (std::uint64_t seed = 60; seed < 66; ++seed) {
    const auto pr = testing_support::random_pair(20, seed);
    const auto np = normalize_pair(pr.f, pr.g, seed);
    EXPECT_EQ(vertex_term_sum(np.f, np.g), vertex_term_sum(np.g, np.f));
    EXPECT_EQ(naive_edge_term_sum(np.f, np.g), naive_edge_term_sum(np.g, np.f));
  }
}

TEST(Decomposition, GlobalPlaneHasNoEdgeTerms) {
  // Every jump of a global plane vanishes, so crossings contribute nothing.
  const auto pr = testing_support::random_pair(32, 77);
  const Tin g = testing_support::with_heights(pr.g, {q("1/3"), 2, -1});
  const auto np = normalize_pair(pr.f, g, 1);
  EXPECT_EQ(naive_edge_term_sum(np.f, np.g), 0);
  EXPECT_EQ(vertex_term_sum(np.f, np.g), naive_inner_product(pr.f, g));
}

TEST(CrossingContribution, LiteralEqualsJumpForm) {
  const auto pr = testing_support::random_pair(40, 8);
  const auto np = normalize_pair(pr.f, pr.g, 8);
  const auto fe = build_edge_data(np.f), ge = build_edge_data(np.g);
  std::size_t crossings = 0;
  for (const auto& a : fe) {
    if (a.is_boundary) continue;
    for (const auto& b : ge) {
      if (b.is_boundary) continue;
      const Segment sa = make_segment(np.f.point(a.endpoints[0]), np.f.point(a.endpoints[1]));
      const Segment sb = make_segment(np.g.point(b.endpoints[0]), np.g.point(b.endpoints[1]));
      if (!segments_cross(sa, sb)) continue;
      ++crossings;
      const Scalar lit = crossing_contribution(np.f, a, np.g, b, true);
      EXPECT_EQ(lit, crossing_contribution(np.f, a, np.g, b, false));
      EXPECT_EQ(lit, crossing_contribution(np.g, b, np.f, a, true));
    }
  }
  EXPECT_GT(crossings, 10u);
}

TEST(CrossingContribution, NonCrossingThrows) {
  const auto np = normalize_pair(square(true), square(true));
  const auto e = build_edge_data(np.f);
  std::size_t diag = 0;
  while (e[diag].is_boundary) ++diag;
  EXPECT_THROW(crossing_contribution(np.f, e[diag], np.g, e[diag]), DegenerateInput);
}

TEST(Decomposition, ShearInvariance) {
  const auto pr = testing_support::random_pair(20, 31);
  const Scalar base = naive_inner_product(pr.f, pr.g);
  for (const Scalar& lam : {q("1/2"), q("-7/3"), q("5")}) {
    const TransformRecord tr{lam, 3};
    const Tin f = apply_transform(pr.f, tr), g = apply_transform(pr.g, tr);
    EXPECT_EQ(naive_inner_product(f, g), base);
  }
}

TEST(VertexTerms, DegenerateInputs) {
  // A g vertex in the middle of f's diagonal.
  Tin g;
  g.domain = {0, 0, 1, 1};
  g.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {q("1/2"), q("1/2"), 0}};
  g.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  const TransformRecord tr{q("1/3"), 1};
  EXPECT_THROW(vertex_terms(apply_transform(square(true), tr), apply_transform(g, tr)), DegenerateInput);
  // Same interior vertex in both.
  Tin f = g;
  f.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  EXPECT_THROW(vertex_terms(apply_transform(f, tr), apply_transform(g, tr)), DegenerateInput);
}
