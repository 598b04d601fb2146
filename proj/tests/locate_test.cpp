#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/locate.hpp"

using namespace tincalc;
using testing_support::q;

namespace {

using Kind = Location::Kind;

struct Sheared {
  Tin t;
  TransformRecord tr;
};

Sheared sheared_square() {
  const Tin sq = testing_support::square(true);
  const auto np = normalize_pair(sq, sq);
  return {np.f, np.transform};
}

std::size_t diagonal_index(const Tin& t) {
  const auto edges = tin_edges(t);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!edges[i].is_boundary()) return i;
  return edges.size();
}

}  // namespace

TEST(BatchLocate, SquareExamples) {
  const auto [t, tr] = sheared_square();
  const std::vector<Point> pts{tr.apply({q("1/4"), q("3/4")}), tr.apply({q("1/2"), q("1/2")}), tr.apply({2, 2}),
                               tr.apply({1, 1}), tr.apply({q("3/4"), q("1/4")})};
  const auto loc = batch_locate(t, pts);
  EXPECT_EQ(loc[0], (Location{Kind::Inside, 1}));
  EXPECT_EQ(loc[1], (Location{Kind::OnEdge, diagonal_index(t)}));
  EXPECT_EQ(loc[2].kind, Kind::Outside);
  EXPECT_EQ(loc[3], (Location{Kind::OnVertex, 2}));
  EXPECT_EQ(loc[4], (Location{Kind::Inside, 0}));
  for (std::size_t k = 0; k < pts.size(); ++k) EXPECT_EQ(loc[k], locate_brute_force(t, pts[k]));
}

TEST(BatchLocate, RejectsVerticalEdges) {
  EXPECT_THROW(batch_locate(testing_support::square(true), {{q("1/2"), q("1/4")}}), VerticalEdge);
}

TEST(BatchLocate, EmptyQuery) {
  EXPECT_TRUE(batch_locate(sheared_square().t, {}).empty());
}

TEST(BatchLocate, MatchesBruteForceOnRandomTerrains) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> coord(-120, 1117);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto pr = testing_support::random_pair(40 + 20 * seed, seed);
    const auto np = normalize_pair(pr.f, pr.g, seed);
    const Tin& t = np.f;
    std::vector<Point> pts;
    const Rect& d = pr.f.domain;
    for (int k = 0; k < 150; ++k) {
      // Covers the domain and a margin around it.
      Scalar u(coord(rng), 997), v(coord(rng), 991);
      u.canonicalize();
      v.canonicalize();
      pts.push_back(np.transform.apply({d.xmin + (d.xmax - d.xmin) * u, d.ymin + (d.ymax - d.ymin) * v}));
    }
    for (std::size_t v = 0; v < t.vertices.size(); v += 3) pts.push_back(t.point(v));
    for (const auto& e : tin_edges(t)) {
      const Point a = t.point(e.a), b = t.point(e.b);
      pts.push_back({(a.x + b.x) / 2, (a.y + b.y) / 2});
      pts.push_back({(a.x + 2 * b.x) / 3, (a.y + 2 * b.y) / 3});
    }
    const auto loc = batch_locate(t, pts);
    ASSERT_EQ(loc.size(), pts.size());
    std::size_t kinds[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < pts.size(); ++k) {
      ASSERT_EQ(loc[k], locate_brute_force(t, pts[k])) << "seed " << seed << " point " << k;
      ++kinds[static_cast<int>(loc[k].kind)];
    }
    for (std::size_t c : kinds) EXPECT_GT(c, 0u);
  }
}

TEST(BatchLocate, OrderOfQueriesDoesNotMatter) {
  const auto pr = testing_support::random_pair(64, 9);
  const Tin t = normalize_pair(pr.f, pr.g, 9).f;
  std::vector<Point> pts;
  for (const auto& e : tin_edges(t)) {
    const Point a = t.point(e.a), b = t.point(e.b);
    pts.push_back({(3 * a.x + b.x) / 4, (3 * a.y + b.y) / 4 + Scalar(1, 1000)});
  }
  const auto loc = batch_locate(t, pts);
  std::vector<std::size_t> perm(pts.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  std::vector<Point> shuffled;
  for (std::size_t k : perm) shuffled.push_back(pts[k]);
  const auto loc2 = batch_locate(t, shuffled);
  for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_EQ(loc2[k], loc[perm[k]]);
}
