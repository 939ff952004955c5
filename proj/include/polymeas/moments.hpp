#pragma once

#include <map>
#include <utility>
#include <vector>

#include "polymeas/exactgeom.hpp"

namespace polymeas {

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Complete homogeneous symmetric polynomials h_0..h_J of the given variables,
/// built by multiplying power series 1/(1 - v u) one variable at a time.
inline std::vector<CNum> complete_homogeneous(const std::vector<CNum>& vars, unsigned J) {
  std::vector<CNum> h(J + 1, CNum{});
  h[0] = CNum{1};
  for (const auto& v : vars)
    for (unsigned j = 1; j <= J; ++j) h[j] += v * h[j - 1];
  return h;
}

/// m_0..m_J of the standard measure of triangle t, from
/// Psi(u) = Area / ((1 - a u)(1 - b u)(1 - c u)).
inline std::vector<CNum> triangle_moments(const PointSet& s, const TriangleRef& t, unsigned J) {
  Scalar ar = area(s, t);
  std::vector<CNum> m(J + 1, CNum{});
  if (ar.is_zero()) return m;
  auto h = complete_homogeneous({s[t.i], s[t.j], s[t.k]}, J);
  for (unsigned j = 0; j <= J; ++j) m[j] = h[j] * CNum(ar / Scalar(Rational(binomial(j + 2, 2))));
  return m;
}

inline CNum triangle_moment(const PointSet& s, const TriangleRef& t, unsigned j) {
  return triangle_moments(s, t, j)[j];
}

/// Direct integration of z^j over the triangle: z = a + s(b-a) + t(c-a),
/// multinomial expansion, and the simplex integral of s^p t^q.
inline CNum triangle_moment_oracle(const PointSet& s, const TriangleRef& t, unsigned j) {
  const CNum& a = s[t.i];
  CNum u = s[t.j] - a, v = s[t.k] - a;
  Scalar jac = bracket(s, t.i, t.j, t.k).abs();
  if (jac.is_zero()) return {};
  Integer jf = factorial(j);
  CNum total;
  for (unsigned p = 0; p <= j; ++p)
    for (unsigned q = 0; p + q <= j; ++q) {
      unsigned r = j - p - q;
      // j!/(p! q! r!) * p! q!/(p+q+2)!
      Rational w(jf, factorial(r) * factorial(p + q + 2));
      w.canonicalize();
      total += CNum(Scalar(w)) * pow(a, r) * pow(u, p) * pow(v, q);
    }
  return total * CNum(jac);
}

/// Signed/complex combination of basis triangles Delta_{0ij}, 1 <= i < j <= n.
class PolygonalMeasure {
 public:
  using Key = std::pair<int, int>;

  explicit PolygonalMeasure(PointSet base) : base_(std::move(base)) {}

  const PointSet& base() const { return base_; }

  /// Basis triangles (i, j) in lexicographic order.
  static std::vector<Key> basis(int n) {
    std::vector<Key> keys;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) keys.emplace_back(i, j);
    return keys;
  }
  std::vector<Key> basis() const { return basis(base_.last()); }

  CNum density(int i, int j) const {
    check_key(i, j);
    auto it = densities_.find({i, j});
    return it == densities_.end() ? CNum{} : it->second;
  }

  void set_density(int i, int j, CNum d) {
    check_key(i, j);
    if (d.is_zero())
      densities_.erase({i, j});
    else
      densities_[{i, j}] = std::move(d);
  }

  void add_density(int i, int j, const CNum& d) { set_density(i, j, density(i, j) + d); }

  const std::map<Key, CNum>& densities() const { return densities_; }

  CNum mass(int i, int j) const { return density(i, j) * CNum(area(base_, {0, i, j})); }

  std::vector<CNum> mass_vector() const {
    std::vector<CNum> m;
    for (auto [i, j] : basis()) m.push_back(mass(i, j));
    return m;
  }

  /// Densities m_ij / Area(Delta_0ij). Mass on a zero-area triangle is dropped
  /// (and reported through the return flag of from_masses_checked).
  static PolygonalMeasure from_masses(const PointSet& base, const std::vector<CNum>& masses) {
    bool dropped = false;
    return from_masses_checked(base, masses, dropped);
  }

  static PolygonalMeasure from_masses_checked(const PointSet& base, const std::vector<CNum>& masses,
                                              bool& dropped) {
    PolygonalMeasure mu(base);
    auto keys = mu.basis();
    if (masses.size() != keys.size()) throw GeometryError("mass vector has wrong length");
    dropped = false;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      if (masses[c].is_zero()) continue;
      Scalar ar = area(base, {0, keys[c].first, keys[c].second});
      if (ar.is_zero()) {
        dropped = true;
        continue;
      }
      mu.set_density(keys[c].first, keys[c].second, masses[c] / CNum(ar));
    }
    return mu;
  }

  bool is_zero() const { return densities_.empty(); }
  bool is_real() const {
    return std::all_of(densities_.begin(), densities_.end(),
                       [](const auto& kv) { return kv.second.is_real(); });
  }

  PolygonalMeasure& operator+=(const PolygonalMeasure& o) {
    check_base(o);
    for (const auto& [k, d] : o.densities_) add_density(k.first, k.second, d);
    return *this;
  }
  PolygonalMeasure& operator-=(const PolygonalMeasure& o) {
    check_base(o);
    for (const auto& [k, d] : o.densities_) add_density(k.first, k.second, -d);
    return *this;
  }
  PolygonalMeasure& operator*=(const CNum& c) {
    if (c.is_zero()) {
      densities_.clear();
      return *this;
    }
    for (auto& kv : densities_) kv.second *= c;
    return *this;
  }
  friend PolygonalMeasure operator+(PolygonalMeasure x, const PolygonalMeasure& y) { return x += y; }
  friend PolygonalMeasure operator-(PolygonalMeasure x, const PolygonalMeasure& y) { return x -= y; }
  friend PolygonalMeasure operator*(const CNum& c, PolygonalMeasure x) { return x *= c; }
  friend bool operator==(const PolygonalMeasure& x, const PolygonalMeasure& y) {
    return x.base_ == y.base_ && x.densities_ == y.densities_;
  }

 private:
  void check_key(int i, int j) const {
    if (!(1 <= i && i < j && j <= base_.last()))
      throw GeometryError("not a basis triangle: (0," + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  }
  void check_base(const PolygonalMeasure& o) const {
    if (!(base_ == o.base_)) throw GeometryError("measures live on different point sets");
  }

  PointSet base_;
  std::map<Key, CNum> densities_;
};

/// Adds weight * (standard measure of the polygon with vertices `ring`,
/// in either orientation) to mu, expressed in the z_0 basis. Uses the
/// fan identity chi_P = sum over directed edges (p, q) of
/// sign[0 p q] * chi_{Delta_0pq}, valid almost everywhere.
inline void add_polygon(PolygonalMeasure& mu, const std::vector<int>& ring, const CNum& weight) {
  const PointSet& s = mu.base();
  if (ring.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  Scalar twice;
  for (std::size_t a = 0; a < ring.size(); ++a)
    twice += orient(s[0], s[ring[a]], s[ring[(a + 1) % ring.size()]]);
  int orientation = twice.sign();
  if (orientation == 0) return;
  for (std::size_t a = 0; a < ring.size(); ++a) {
    int p = ring[a], q = ring[(a + 1) % ring.size()];
    if (p == 0 || q == 0) continue;
    int sg = bracket(s, 0, p, q).sign() * orientation;
    if (sg == 0) continue;
    mu.add_density(std::min(p, q), std::max(p, q), sg > 0 ? weight : -weight);
  }
}

/// The standard measure of an arbitrary triangle of S in the z_0 basis.
inline PolygonalMeasure triangle_measure(const PointSet& s, const TriangleRef& t) {
  PolygonalMeasure mu(s);
  if (area(s, t).is_zero()) return mu;
  add_polygon(mu, {t.i, t.j, t.k}, CNum{1});
  return mu;
}

using MomentSequence = std::vector<CNum>;

inline MomentSequence measure_moments(const PolygonalMeasure& mu, unsigned J) {
  MomentSequence out(J + 1, CNum{});
  for (const auto& [key, d] : mu.densities()) {
    auto m = triangle_moments(mu.base(), {0, key.first, key.second}, J);
    for (unsigned j = 0; j <= J; ++j) out[j] += d * m[j];
  }
  return out;
}

/// Coefficients of Psi_mu(u) = sum binom(j+2,2) m_j u^j.
inline std::vector<CNum> psi_coefficients(const PolygonalMeasure& mu, unsigned J) {
  auto m = measure_moments(mu, J);
  for (unsigned j = 0; j <= J; ++j) m[j] *= CNum(Scalar(Rational(binomial(j + 2, 2))));
  return m;
}

inline bool all_zero(const std::vector<CNum>& v) {
  return std::all_of(v.begin(), v.end(), [](const CNum& z) { return z.is_zero(); });
}

}  // namespace polymeas
