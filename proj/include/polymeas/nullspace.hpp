#pragma once

#include <vector>

#include "polymeas/linalg.hpp"
#include "polymeas/moments.hpp"

namespace polymeas {

enum class Kind { real, complex };

inline const char* to_string(Kind k) { return k == Kind::real ? "real" : "complex"; }

/// Column (i, j) of the moment matrix holds the coefficients of
/// g_ij(u) = prod_{k >= 1, k != i, j} (1 - z_k u) in degrees 0..n-2.
/// Takes raw points so that coincident points can be probed too.
inline Matrix<CNum> build_matrix_complex(const std::vector<CNum>& s) {
  const int n = static_cast<int>(s.size()) - 1;
  auto keys = PolygonalMeasure::basis(n);
  Matrix<CNum> m(static_cast<std::size_t>(n - 1), keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    std::vector<CNum> poly{CNum{1}};
    for (int k = 1; k <= n; ++k) {
      if (k == keys[c].first || k == keys[c].second) continue;
      poly.emplace_back();
      for (std::size_t d = poly.size() - 1; d > 0; --d) poly[d] -= s[k] * poly[d - 1];
    }
    for (std::size_t r = 0; r < poly.size(); ++r) m(r, c) = poly[r];
  }
  return m;
}

inline Matrix<CNum> build_matrix_complex(const PointSet& s) { return build_matrix_complex(s.points()); }

/// Row 0 (all ones), then the real and imaginary parts of rows 1..n-2.
inline Matrix<Scalar> build_matrix_real(const std::vector<CNum>& s) {
  auto mc = build_matrix_complex(s);
  const std::size_t rows = mc.rows() == 0 ? 0 : 2 * mc.rows() - 1;
  Matrix<Scalar> m(rows, mc.cols());
  for (std::size_t c = 0; c < mc.cols(); ++c) {
    m(0, c) = mc(0, c).re;
    for (std::size_t k = 1; k < mc.rows(); ++k) {
      m(2 * k - 1, c) = mc(k, c).re;
      m(2 * k, c) = mc(k, c).im;
    }
  }
  return m;
}

inline Matrix<Scalar> build_matrix_real(const PointSet& s) { return build_matrix_real(s.points()); }

struct KernelBasis {
  Kind kind = Kind::real;
  std::vector<std::vector<CNum>> vectors;

  std::size_t dimension() const { return vectors.size(); }
};

inline KernelBasis kernel(const Matrix<Scalar>& a) {
  KernelBasis out{Kind::real, {}};
  for (auto& v : kernel_rref(a)) {
    normalize_primitive(v);
    out.vectors.emplace_back(v.begin(), v.end());
  }
  return out;
}

inline KernelBasis kernel(const Matrix<CNum>& a) {
  KernelBasis out{Kind::complex, {}};
  for (auto& v : kernel_rref(a)) {
    normalize_primitive(v);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

struct NullMeasures {
  KernelBasis basis;
  std::vector<PolygonalMeasure> measures;
  /// S has three collinear points; dimensions are then not guaranteed.
  bool degenerate = false;
  /// Some kernel vector put mass on a zero-area basis triangle.
  bool dropped_mass = false;
};

/// Measures with all harmonic moments zero, one per kernel vector of the
/// moment matrix (densities d_0ij = m_ij / Area(Delta_0ij)).
inline NullMeasures null_measures(const PointSet& s, Kind kind) {
  NullMeasures out;
  out.degenerate = !s.nondegenerate();
  out.basis = kind == Kind::real ? kernel(build_matrix_real(s)) : kernel(build_matrix_complex(s));
  for (const auto& v : out.basis.vectors) {
    bool dropped = false;
    out.measures.push_back(PolygonalMeasure::from_masses_checked(s, v, dropped));
    out.dropped_mass = out.dropped_mass || dropped;
  }
  return out;
}

namespace detail {

// Unsigned cofactor magnitudes |z_i - z_j|^2 [..][..] of the 5x6 real moment
// matrix, paired with the explicit sign of each printed closed-form term.
inline PolygonalMeasure five_point_terms(const PointSet& s, bool cofactor_signs) {
  if (s.size() != 5) throw GeometryError("five_point_density needs exactly 5 points");
  if (!s.nondegenerate()) throw GeometryError("five_point_density needs a non-degenerate set");
  auto br = [&](int i, int j, int k) { return bracket(s, i, j, k); };
  auto dist2 = [&](int i, int j) { return (s[i] - s[j]).norm2(); };
  const Scalar b123 = br(1, 2, 3), b124 = br(1, 2, 4), b134 = br(1, 3, 4), b234 = br(2, 3, 4);
  PolygonalMeasure mu(s);
  int column = 0;
  auto put = [&](int i, int j, Scalar numerator) {
    // Cramer: the kernel entry of column c is (-1)^c times the minor without c
    if (cofactor_signs && column % 2 == 1) numerator = -numerator;
    ++column;
    mu.set_density(i, j, CNum(numerator / br(0, i, j).abs()));
  };
  put(1, 2, dist2(1, 2) * b134 * b234);
  put(1, 3, dist2(1, 3) * b124 * b234);
  put(1, 4, dist2(1, 4) * b123 * b234);
  put(2, 3, -(dist2(2, 3) * b124 * b134));
  put(2, 4, -(dist2(2, 4) * b134 * b123));
  put(3, 4, -(dist2(3, 4) * b123 * b124));
  return mu;
}

}  // namespace detail

/// Closed-form spanning measure of the real null space of a non-degenerate
/// 5-point configuration:
///   d_012 =  |z1-z2|^2 [134][234] / |[012]|    d_023 =  |z2-z3|^2 [124][134] / |[023]|
///   d_013 = -|z1-z3|^2 [124][234] / |[013]|    d_024 = -|z2-z4|^2 [134][123] / |[024]|
///   d_014 =  |z1-z4|^2 [123][234] / |[014]|    d_034 =  |z3-z4|^2 [123][124] / |[034]|
inline PolygonalMeasure five_point_density(const PointSet& s) { return detail::five_point_terms(s, true); }

/// The same terms with signs (+,+,+,-,-,-) and no cofactor alternation. Kept
/// for comparison; it is generally not in the kernel.
inline PolygonalMeasure five_point_density_uncorrected(const PointSet& s) {
  return detail::five_point_terms(s, false);
}

/// Determinant of the leading n-1 columns (m_12..m_1n) of the complex matrix.
inline CNum minor_det_complex(const PointSet& s) {
  if (s.last() < 3) throw GeometryError("minor_det_complex needs n >= 3");
  auto m = build_matrix_complex(s);
  return determinant(m.first_columns(m.rows()));
}

/// Determinant of the leading 2n-3 columns (m_12..m_1n, m_23..m_2n) of the real matrix.
inline Scalar minor_det_real(const std::vector<CNum>& s) {
  if (s.size() < 5) throw GeometryError("minor_det_real needs n >= 4");
  auto m = build_matrix_real(s);
  return determinant(m.first_columns(m.rows()));
}

inline Scalar minor_det_real(const PointSet& s) { return minor_det_real(s.points()); }

/// prod_{2 <= i < j <= n} (z_i - z_j).
inline CNum vandermonde_tail(const PointSet& s) {
  CNum p{1};
  for (int i = 2; i <= s.last(); ++i)
    for (int j = i + 1; j <= s.last(); ++j) p *= s[i] - s[j];
  return p;
}

/// [123][124]...[12n] * prod_{3 <= i < j <= n} |z_i - z_j|^2.
inline Scalar specminor_product(const std::vector<CNum>& s) {
  const int n = static_cast<int>(s.size()) - 1;
  Scalar p{1};
  for (int k = 3; k <= n; ++k) p *= orient(s[1], s[2], s[k]);
  for (int i = 3; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) p *= (s[i] - s[j]).norm2();
  return p;
}

inline Scalar specminor_product(const PointSet& s) { return specminor_product(s.points()); }

/// mu scaled so its basis densities are coprime integers with the first
/// nonzero one positive (for rational S and real mu).
inline PolygonalMeasure primitive_densities(const PolygonalMeasure& mu) {
  std::vector<CNum> d;
  auto keys = mu.basis();
  for (auto [i, j] : keys) d.push_back(mu.density(i, j));
  normalize_primitive(d);
  PolygonalMeasure out(mu.base());
  for (std::size_t c = 0; c < keys.size(); ++c) out.set_density(keys[c].first, keys[c].second, d[c]);
  return out;
}

/// True when two vectors are proportional (all 2x2 minors vanish).
template <typename T>
bool parallel(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (!is_zero(x[a] * y[b] - x[b] * y[a])) return false;
  return true;
}

}  // namespace polymeas
