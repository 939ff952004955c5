#pragma once

#include <optional>
#include <vector>

#include "polymeas/chambers.hpp"
#include "polymeas/lp.hpp"

namespace polymeas {

/// Closed containment: a point of S on an edge also disqualifies t.
inline bool is_extreme_ray(const PointSet& s, const TriangleRef& t) {
  if (area(s, t).is_zero()) throw GeometryError("degenerate triangle " + t.to_string());
  for (int k = 0; k < s.size(); ++k) {
    if (t.has_vertex(k)) continue;
    if (point_in_triangle(s[k], s, t) != Location::outside) return false;
  }
  return true;
}

inline std::vector<TriangleRef> all_triangles(const PointSet& s) {
  std::vector<TriangleRef> out;
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j)
      for (int k = j + 1; k < s.size(); ++k) out.emplace_back(i, j, k);
  return out;
}

/// Chamber-density coordinates of the standard measure of an arbitrary triangle.
inline std::vector<Scalar> triangle_chamber_vector(const Arrangement& arr, const TriangleRef& t) {
  auto row = containment_row(arr, t);
  return {row.begin(), row.end()};
}

/// Nonnegative c with sum_g c_g mu_g = target, measures compared through
/// their chamber densities.
inline std::optional<std::vector<Scalar>> cone_membership(const Arrangement& arr,
                                                          const std::vector<Scalar>& target,
                                                          const std::vector<TriangleRef>& generators) {
  if (target.size() != arr.chambers.size()) throw GeometryError("target has wrong number of chambers");
  Matrix<Scalar> a(arr.chambers.size(), generators.size());
  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto row = containment_row(arr, generators[g]);
    for (std::size_t c = 0; c < row.size(); ++c) a(c, g) = Scalar(row[c]);
  }
  return feasible_nonnegative(a, target);
}

inline std::optional<std::vector<Scalar>> cone_membership(const Arrangement& arr,
                                                          const PolygonalMeasure& target,
                                                          const std::vector<TriangleRef>& generators) {
  return cone_membership(arr, chamber_densities(arr, target), generators);
}

/// Two triangles sharing the diagonal of a convex quadrilateral, and the two
/// sharing the other diagonal.
struct FlipPair {
  std::array<TriangleRef, 2> pair;
  std::array<TriangleRef, 2> flipped;
};

inline std::vector<FlipPair> flips(const PointSet& s) {
  std::vector<FlipPair> out;
  const int n = s.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          std::vector<CNum> quad{s[a], s[b], s[c], s[d]};
          PointSet four(quad, s.field());
          if (!four.nondegenerate()) continue;
          auto hull = convex_hull(four);
          if (hull.size() != 4) continue;
          std::array<int, 4> ids{a, b, c, d};
          int p0 = ids[hull[0]], p1 = ids[hull[1]], p2 = ids[hull[2]], p3 = ids[hull[3]];
          FlipPair f{{TriangleRef::sorted(p0, p1, p2), TriangleRef::sorted(p0, p2, p3)},
                     {TriangleRef::sorted(p0, p1, p3), TriangleRef::sorted(p1, p2, p3)}};
          if (f.flipped[0] < f.pair[0]) std::swap(f.pair, f.flipped);
          out.push_back(f);
        }
  return out;
}

}  // namespace polymeas
