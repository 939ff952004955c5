#include <gtest/gtest.h>

#include "polymeas/moments.hpp"
#include "polymeas/random.hpp"

using namespace polymeas;

namespace {

CNum pt(long x, long y) { return {Scalar(x), Scalar(y)}; }

// Psi of a triangle is Area / prod (1 - z_k u); expand the product's
// inverse as a power series by long division.
std::vector<CNum> psi_by_series_division(const PointSet& s, const TriangleRef& t, unsigned J) {
  std::vector<CNum> den{CNum(1)};
  for (int v : {t.i, t.j, t.k}) {
    den.emplace_back();
    for (std::size_t d = den.size() - 1; d > 0; --d) den[d] -= s[v] * den[d - 1];
  }
  std::vector<CNum> q(J + 1);
  for (unsigned j = 0; j <= J; ++j) {
    CNum acc = j == 0 ? CNum(area(s, t)) : CNum();
    for (unsigned d = 1; d <= std::min<unsigned>(j, 3); ++d) acc -= den[d] * q[j - d];
    q[j] = acc;
  }
  return q;
}

}  // namespace

TEST(TriangleMoments, HandValues) {
  PointSet s({pt(0, 0), pt(1, 0), pt(0, 1)});
  auto m = triangle_moments(s, {0, 1, 2}, 2);
  EXPECT_EQ(m[0], CNum(Scalar(Rational(1, 2))));
  // centroid (1/3, 1/3) times the area
  EXPECT_EQ(m[1], CNum(Scalar(Rational(1, 6)), Scalar(Rational(1, 6))));
  // integral of x^2 - y^2 vanishes by symmetry, 2 i xy integrates to i/12
  EXPECT_EQ(m[2], CNum(Scalar(0), Scalar(Rational(1, 12))));
}

TEST(TriangleMoments, MatchesBarycentricOracle) {
  ConfigSampler rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = rng.nondegenerate(3);
    auto m = triangle_moments(s, {0, 1, 2}, 10);
    for (unsigned j = 0; j <= 10; ++j) ASSERT_EQ(m[j], triangle_moment_oracle(s, {0, 1, 2}, j)) << "j=" << j;
  }
}

TEST(TriangleMoments, MatchesSeriesDivision) {
  ConfigSampler rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = rng.nondegenerate(3);
    PolygonalMeasure mu = triangle_measure(s, {0, 1, 2});
    EXPECT_EQ(psi_coefficients(mu, 12), psi_by_series_division(s, {0, 1, 2}, 12));
  }
}

TEST(TriangleMoments, DegenerateTriangleIsZero) {
  PointSet s({pt(0, 0), pt(1, 1), pt(2, 2)});
  EXPECT_TRUE(all_zero(triangle_moments(s, {0, 1, 2}, 5)));
  EXPECT_TRUE(triangle_measure(s, {0, 1, 2}).is_zero());
}

TEST(TriangleMoments, TranslationShift) {
  // m_j of the translate by w is sum_k C(j,k) w^(j-k) m_k
  ConfigSampler rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = rng.nondegenerate(3);
    CNum w = rng.point();
    std::vector<CNum> moved;
    for (const auto& z : s.points()) moved.push_back(z + w);
    PointSet t(moved);
    const unsigned J = 6;
    auto m = triangle_moments(s, {0, 1, 2}, J);
    auto mt = triangle_moments(t, {0, 1, 2}, J);
    for (unsigned j = 0; j <= J; ++j) {
      CNum expect;
      for (unsigned k = 0; k <= j; ++k) expect += CNum(Scalar(Rational(binomial(j, k)))) * pow(w, j - k) * m[k];
      EXPECT_EQ(mt[j], expect);
    }
  }
}

TEST(PolygonalMeasure, BasisOrderAndDensities) {
  auto keys = PolygonalMeasure::basis(4);
  std::vector<std::pair<int, int>> expect{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  EXPECT_EQ(keys, expect);
  PointSet s({pt(0, 0), pt(2, 0), pt(3, 1), pt(1, 3), pt(0, 2)});
  PolygonalMeasure mu(s);
  mu.set_density(1, 3, CNum(5));
  mu.set_density(2, 4, CNum(0));
  EXPECT_EQ(mu.densities().size(), 1u);
  EXPECT_EQ(mu.mass(1, 3), CNum(Scalar(5) * area(s, {0, 1, 3})));
  EXPECT_THROW(mu.set_density(3, 1, CNum(1)), GeometryError);
  EXPECT_THROW(mu.set_density(1, 5, CNum(1)), GeometryError);
  auto masses = mu.mass_vector();
  EXPECT_EQ(PolygonalMeasure::from_masses(s, masses), mu);
}

TEST(PolygonalMeasure, Linearity) {
  ConfigSampler rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = rng.nondegenerate(5);
    PolygonalMeasure a(s), b(s);
    for (auto [i, j] : a.basis()) {
      a.set_density(i, j, CNum(Scalar(rng.rational()), Scalar(rng.rational())));
      b.set_density(i, j, CNum(Scalar(rng.rational())));
    }
    CNum c(Scalar(rng.rational()), Scalar(rng.rational()));
    auto lhs = measure_moments(a + c * b, 8);
    auto ma = measure_moments(a, 8), mb = measure_moments(b, 8);
    for (unsigned j = 0; j <= 8; ++j) EXPECT_EQ(lhs[j], ma[j] + c * mb[j]);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolygonalMeasure, MismatchedBasesRejected) {
  PolygonalMeasure a(PointSet({pt(0, 0), pt(1, 0), pt(0, 1)}));
  PolygonalMeasure b(PointSet({pt(0, 0), pt(2, 0), pt(0, 1)}));
  EXPECT_THROW(a += b, GeometryError);
}

TEST(AddPolygon, FanIdentityMatchesDirectMoments) {
  // any triangle (i,j,k), in either orientation, has the moments of the
  // standard measure on it once rewritten in the z_0 basis
  ConfigSampler rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = rng.nondegenerate(5);
    for (auto t : {TriangleRef(1, 2, 3), TriangleRef(2, 3, 4), TriangleRef(0, 2, 4)}) {
      PolygonalMeasure mu(s);
      add_polygon(mu, {t.k, t.j, t.i}, CNum(1));
      auto direct = triangle_moments(s, t, 7);
      EXPECT_EQ(measure_moments(mu, 7), direct);
    }
  }
}

TEST(AddPolygon, NonConvexRing) {
  // an L-shaped hexagon, star-shaped from z_0: moments equal those of its fan
  PointSet s({pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2), pt(1, 0)});
  PolygonalMeasure l(s);
  add_polygon(l, {0, 1, 2, 3, 4, 5}, CNum(1));
  auto m = measure_moments(l, 6);
  EXPECT_EQ(m[0], CNum(3));
  std::vector<CNum> rects(7);
  for (auto t : {TriangleRef(0, 1, 2), TriangleRef(0, 2, 3), TriangleRef(0, 3, 4), TriangleRef(0, 4, 5)}) {
    auto tm = triangle_moments(s, t, 6);
    for (unsigned j = 0; j <= 6; ++j) rects[j] += tm[j];
  }
  EXPECT_EQ(m, rects);
}
