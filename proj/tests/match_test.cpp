#include <gtest/gtest.h>

#include "support.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/integrate.hpp"
#include "tincalc/match.hpp"

using namespace tincalc;
using testing_support::q;
using testing_support::square;

namespace {

const LinearFunc kX{0, 1, 0}, kY{0, 0, 1}, kOne{1, 0, 0};

// Squared residual of f - (s g + t), from inner products against the
// constant terrain on g's triangulation.
struct Residual {
  Scalar ff, fg, gg, f1, g1, area;

  Residual(const Tin& f, const Tin& g) {
    const Tin one = testing_support::with_heights(g, kOne);
    ff = naive_inner_product(f, f);
    fg = naive_inner_product(f, g);
    gg = naive_inner_product(g, g);
    f1 = naive_inner_product(f, one);
    g1 = naive_inner_product(g, one);
    area = naive_inner_product(one, one);
  }
  Scalar operator()(const Scalar& s, const Scalar& t) const {
    return ff - 2 * s * fg - 2 * t * f1 + s * s * gg + 2 * s * t * g1 + t * t * area;
  }
};

}  // namespace

TEST(Moments, Planes) {
  const Moments mx = moments(square(true, kX));
  EXPECT_EQ(mx.integral, q("1/2"));
  EXPECT_EQ(mx.integral_squared, q("1/3"));
  EXPECT_EQ(mx.area, 1);
  const Moments m1 = moments(square(false, kOne));
  EXPECT_EQ(m1.integral, 1);
  EXPECT_EQ(m1.integral_squared, 1);
  EXPECT_EQ(m1.area, 1);
}

TEST(Moments, CauchySchwarz) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto pr = testing_support::random_pair(30, seed);
    const Moments m = moments(pr.f);
    EXPECT_LE(m.integral * m.integral, m.area * m.integral_squared);
    EXPECT_EQ(m.integral_squared, naive_inner_product(pr.f, pr.f));
  }
}

TEST(L2Distance, Examples) {
  const Distance d = l2_distance(square(true, kX), square(false, kY), Method::Naive);
  EXPECT_EQ(d.squared, q("1/6"));
  EXPECT_EQ(d.root, "0.40824829046386302");
  EXPECT_EQ(l2_distance(square(true, kX), square(false, kY), Method::Fast).squared, q("1/6"));
  const LinearFunc h{q("2/3"), -1, 4};
  const auto pr = testing_support::random_pair(24, 3);
  const Distance same = l2_distance(testing_support::with_heights(pr.f, h), testing_support::with_heights(pr.g, h),
                                    Method::Fast);
  EXPECT_EQ(same.squared, 0);
  EXPECT_EQ(same.root, "0");
}

TEST(L2Distance, SymmetricAndMethodIndependent) {
  const auto pr = testing_support::random_pair(40, 8);
  const Distance a = l2_distance(pr.f, pr.g, Method::Fast);
  EXPECT_EQ(a.squared, l2_distance(pr.g, pr.f, Method::Fast).squared);
  EXPECT_EQ(a.squared, l2_distance(pr.f, pr.g, Method::Naive).squared);
  EXPECT_GT(a.squared, 0);
}

TEST(BestFit, ExactAffineImages) {
  const Tin g = square(false, kY);
  Fit fit = best_fit(square(true, kY), g, Method::Naive);
  EXPECT_EQ(fit.s, 1);
  EXPECT_EQ(fit.t, 0);
  EXPECT_EQ(fit.residual2, 0);
  fit = best_fit(square(true, {3, 0, 2}), g, Method::Fast);
  EXPECT_EQ(fit.s, 2);
  EXPECT_EQ(fit.t, 3);
  EXPECT_EQ(fit.residual2, 0);
  EXPECT_FALSE(fit.degenerate);
}

TEST(BestFit, ConstantTarget) {
  const Tin f = square(true, kX);
  const Fit fit = best_fit(f, square(false, {4, 0, 0}), Method::Fast);
  EXPECT_TRUE(fit.degenerate);
  EXPECT_EQ(fit.s, 0);
  EXPECT_EQ(fit.t, q("1/2"));
  EXPECT_EQ(fit.residual2, q("1/12"));
}

TEST(BestFit, RecoversAffineImageOnAnotherTriangulation) {
  const auto pr = testing_support::random_pair(36, 12);
  const LinearFunc h{q("1/9"), 3, q("-2/5")};
  const Tin g = testing_support::with_heights(pr.g, h);
  const Tin f = testing_support::with_heights(pr.f, h * q("-5/7") - LinearFunc{q("-13/3"), 0, 0});
  const Fit fit = best_fit(f, g, Method::Fast);
  EXPECT_EQ(fit.s, q("-5/7"));
  EXPECT_EQ(fit.t, q("13/3"));
  EXPECT_EQ(fit.residual2, 0);
}

TEST(BestFit, IsALocalMinimum) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto pr = testing_support::random_pair(28, seed);
    const Fit fit = best_fit(pr.f, pr.g, Method::Fast);
    const Residual r(pr.f, pr.g);
    EXPECT_EQ(fit.residual2, r(fit.s, fit.t));
    for (const Scalar& d : {q("1/1000"), q("-1/1000"), q("1/7")}) {
      EXPECT_GT(r(fit.s + d, fit.t), fit.residual2);
      EXPECT_GT(r(fit.s, fit.t + d), fit.residual2);
      EXPECT_GT(r(fit.s + d, fit.t - d), fit.residual2);
    }
  }
}

TEST(BestFit, InvariantUnderShear) {
  const auto pr = testing_support::random_pair(28, 17);
  const Fit base = best_fit(pr.f, pr.g, Method::Naive);
  const TransformRecord tr{q("3/5"), -2};
  const Fit sheared = best_fit(apply_transform(pr.f, tr), apply_transform(pr.g, tr), Method::Fast);
  EXPECT_EQ(sheared.s, base.s);
  EXPECT_EQ(sheared.t, base.t);
  EXPECT_EQ(sheared.residual2, base.residual2);
}

TEST(ParseMethod, Names) {
  EXPECT_EQ(parse_method("naive"), Method::Naive);
  EXPECT_EQ(parse_method("fast"), Method::Fast);
  EXPECT_THROW(parse_method("both"), InvalidParameter);
}
