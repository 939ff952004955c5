#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polymeas/chambers.hpp"
#include "polymeas/nullspace.hpp"

namespace polymeas {

/// A null measure whose chamber densities lie in {0, +1, -1}: the difference
/// of the standard measures of two equipotential polygons.
struct UnitDensityCertificate {
  PolygonalMeasure measure;
  std::vector<std::size_t> plus_chambers, minus_chambers, zero_chambers;
  unsigned moment_check_order = 0;
  Scalar plus_area, minus_area;
};

/// lambda > 0 with lambda * d in {0, +1, -1} for every entry, if one exists
/// and d is not identically zero.
inline std::optional<Scalar> unit_scaling(const std::vector<Scalar>& densities) {
  std::optional<Scalar> common;
  for (const auto& d : densities) {
    if (d.is_zero()) continue;
    Scalar mag = d.abs();
    if (!common)
      common = mag;
    else if (!(*common == mag))
      return std::nullopt;
  }
  if (!common) return std::nullopt;
  return common->inverse();
}

/// Solves for basis densities reproducing the given chamber densities;
/// nullopt when no polygonal measure on S has them.
inline std::optional<PolygonalMeasure> measure_from_chamber_densities(const Arrangement& arr,
                                                                      const std::vector<Scalar>& target) {
  auto inc = incidence(arr);
  const std::size_t rows = arr.chambers.size(), cols = inc.rows.size();
  Matrix<Scalar> aug(rows, cols + 1);
  for (std::size_t c = 0; c < rows; ++c) {
    for (std::size_t t = 0; t < cols; ++t) aug(c, t) = Scalar(inc.entries[t][c]);
    aug(c, cols) = target.at(c);
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  PolygonalMeasure mu(arr.points);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    mu.set_density(inc.rows[pivots[r]].j, inc.rows[pivots[r]].k, CNum(aug(r, cols)));
  return mu;
}

inline unsigned default_moment_order(const PointSet& s) { return static_cast<unsigned>(2 * s.last() + 5); }

/// Builds the certificate for lambda * mu if its chamber densities can be
/// scaled into {0, +1, -1} and its moments vanish to `order`.
inline std::optional<UnitDensityCertificate> certify_unit_density(const Arrangement& arr,
                                                                   const PolygonalMeasure& mu,
                                                                   unsigned order) {
  auto dens = chamber_densities(arr, mu);
  auto lambda = unit_scaling(dens);
  if (!lambda) return std::nullopt;
  UnitDensityCertificate cert{CNum(*lambda) * mu, {}, {}, {}, order, {}, {}};
  if (!all_zero(measure_moments(cert.measure, order))) return std::nullopt;
  for (std::size_t c = 0; c < dens.size(); ++c) {
    int sg = dens[c].sign();
    if (sg > 0) {
      cert.plus_chambers.push_back(c);
      cert.plus_area += arr.chambers[c].area;
    } else if (sg < 0) {
      cert.minus_chambers.push_back(c);
      cert.minus_area += arr.chambers[c].area;
    } else {
      cert.zero_chambers.push_back(c);
    }
  }
  return cert;
}

/// Exact decision for 5 points: the real null space is a line, so a unit
/// density multiple exists iff all nonzero chamber densities of its spanning
/// measure share one absolute value.
inline std::optional<UnitDensityCertificate> unit_density_decide_1d(const PointSet& s) {
  if (s.size() != 5) throw GeometryError("unit_density_decide_1d needs exactly 5 points");
  if (!s.nondegenerate()) throw GeometryError("unit_density_decide_1d needs a non-degenerate set");
  auto null = null_measures(s, Kind::real);
  if (null.measures.size() != 1) throw GeometryError("internal: 5-point real null space is not a line");
  return certify_unit_density(build_arrangement(s), null.measures.front(), default_moment_order(s));
}

/// Bounded search over integer combinations of the real null basis with
/// coefficients in [-bound, bound]. Exact when the null space has dimension
/// at most 1; a heuristic otherwise. Only primitive coefficient vectors with
/// a positive leading entry are tried, since the scaling step absorbs the rest.
inline std::vector<UnitDensityCertificate> unit_density_search(const PointSet& s, int bound) {
  if (bound < 1) throw GeometryError("search bound must be positive");
  auto null = null_measures(s, Kind::real);
  std::vector<UnitDensityCertificate> found;
  const std::size_t k = null.measures.size();
  if (k == 0) return found;
  auto arr = build_arrangement(s);
  std::vector<std::vector<Scalar>> dens;
  for (const auto& mu : null.measures) dens.push_back(chamber_densities(arr, mu));
  const unsigned order = default_moment_order(s);

  std::vector<long> alpha(k, -bound);
  for (;;) {
    long g = 0;
    long lead = 0;
    for (long x : alpha) {
      g = std::gcd(g, x);
      if (lead == 0) lead = x;
    }
    if (g == 1 && lead > 0) {
      std::vector<Scalar> combo(arr.chambers.size());
      for (std::size_t b = 0; b < k; ++b)
        if (alpha[b] != 0)
          for (std::size_t c = 0; c < combo.size(); ++c) combo[c] += Scalar(alpha[b]) * dens[b][c];
      if (unit_scaling(combo)) {
        PolygonalMeasure mu(s);
        for (std::size_t b = 0; b < k; ++b) mu += CNum(alpha[b]) * null.measures[b];
        if (auto cert = certify_unit_density(arr, mu, order)) found.push_back(std::move(*cert));
      }
    }
    std::size_t pos = k;
    while (pos > 0 && alpha[pos - 1] == bound) alpha[--pos] = -bound;
    if (pos == 0) break;
    ++alpha[pos - 1];
  }
  return found;
}

/// (conv(S) minus D_{+1}, conv(S) minus D_{-1}) as chamber index sets.
struct PolygonPair {
  std::vector<std::size_t> first, second;
};

inline PolygonPair extract_polygon_pair(const Arrangement& arr, const UnitDensityCertificate& cert) {
  PolygonPair pp;
  for (std::size_t c = 0; c < arr.chambers.size(); ++c) {
    if (std::find(cert.plus_chambers.begin(), cert.plus_chambers.end(), c) == cert.plus_chambers.end())
      pp.first.push_back(c);
    if (std::find(cert.minus_chambers.begin(), cert.minus_chambers.end(), c) == cert.minus_chambers.end())
      pp.second.push_back(c);
  }
  return pp;
}

/// The signed difference mu(first) - mu(second) in the z_0 basis.
inline std::optional<PolygonalMeasure> polygon_pair_difference(const Arrangement& arr, const PolygonPair& pp) {
  std::vector<Scalar> target(arr.chambers.size());
  for (auto c : pp.first) target[c] += Scalar(1);
  for (auto c : pp.second) target[c] -= Scalar(1);
  return measure_from_chamber_densities(arr, target);
}

struct EquipotentialReport {
  bool nonzero = false;
  bool moments_vanish = false;
  bool unit_densities = false;
  bool areas_balanced = false;
  std::string first_failure;  // empty when passed
  Scalar plus_area, minus_area;
  std::vector<Scalar> densities;

  bool passed() const { return first_failure.empty(); }
};

inline EquipotentialReport verify_equipotential(const Arrangement& arr, const PolygonalMeasure& mu,
                                                unsigned order) {
  EquipotentialReport rep;
  auto fail = [&](const char* what) {
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  rep.nonzero = !mu.is_zero();
  if (!rep.nonzero) fail("nonzero");
  rep.moments_vanish = all_zero(measure_moments(mu, order));
  if (!rep.moments_vanish) fail("moments");
  rep.densities = chamber_densities(arr, mu);
  rep.unit_densities = true;
  for (std::size_t c = 0; c < rep.densities.size(); ++c) {
    const auto& d = rep.densities[c];
    if (d == Scalar(1))
      rep.plus_area += arr.chambers[c].area;
    else if (d == Scalar(-1))
      rep.minus_area += arr.chambers[c].area;
    else if (!d.is_zero())
      rep.unit_densities = false;
  }
  if (!rep.unit_densities) fail("densities");
  rep.areas_balanced = rep.plus_area == rep.minus_area;
  if (!rep.areas_balanced) fail("areas");
  return rep;
}

inline EquipotentialReport verify_equipotential(const PolygonalMeasure& mu, unsigned order) {
  return verify_equipotential(build_arrangement(mu.base()), mu, order);
}

/// Hexagram configuration T = {2I, -r3+I, -r3-I, -2I, r3-I, r3+I} with the
/// measure mu(T1) + mu(T2) - mu(conv T), T1 = (2I, -r3-I, r3-I) and
/// T2 = (-2I, -r3+I, r3+I). Density +1 on the inner hexagon T1 n T2, 0 on
/// the six star tips, -1 on the six notches along the edges of conv T.
struct HexagramExample {
  PointSet points;
  PolygonalMeasure measure;
  /// Total masses of two alternative transcriptions of the same example;
  /// both are nonzero, so neither can have vanishing moments.
  Scalar unit_inner_hexagon_mass;  // F' built from the modulus-1 hexagon
  Scalar six_minus_two_mass;       // 6 rotated triangles minus 2 triangles
};

inline HexagramExample hexagram_example() {
  const Scalar r3 = Scalar::sqrt3();
  const Scalar one{1}, two{2}, half{Rational(1, 2)};
  std::vector<CNum> pts{CNum(0, two),  CNum(-r3, one), CNum(-r3, -one),
                        CNum(0, -two), CNum(r3, -one), CNum(r3, one)};
  PointSet s(pts, Field::sqrt3);
  PolygonalMeasure mu(s);
  add_polygon(mu, {0, 2, 4}, CNum{1});
  add_polygon(mu, {3, 5, 1}, CNum{1});
  add_polygon(mu, {0, 1, 2, 3, 4, 5}, CNum{-1});

  auto tri_area = [](const CNum& a, const CNum& b, const CNum& c) { return orient(a, b, c).abs() * Scalar(Rational(1, 2)); };
  // literal: F - F' = conv(T') - six notches with apex 1
  std::vector<CNum> unit_hex{CNum(one), CNum(half, r3 * half), CNum(-half, r3 * half),
                             CNum(-one), CNum(-half, -(r3 * half)), CNum(half, -(r3 * half))};
  Scalar hex_area;
  for (std::size_t a = 1; a + 1 < unit_hex.size(); ++a) hex_area += tri_area(unit_hex[0], unit_hex[a], unit_hex[a + 1]);
  Scalar literal = hex_area - Scalar(6) * tri_area(CNum(r3, one), CNum(r3, -one), CNum(one));
  // printed identity: sum of six rotations of (r3+I, r3-I, -2I) minus two triangles
  Scalar identity = Scalar(6) * tri_area(CNum(r3, one), CNum(r3, -one), CNum(0, -two)) -
                    tri_area(CNum(r3, one), CNum(r3, -one), CNum(-r3, one)) -
                    tri_area(CNum(r3, -one), CNum(r3, one), CNum(-r3, -one));
  return {s, mu, literal, identity};
}

}  // namespace polymeas
