#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "polymeas/exactgeom.hpp"

namespace polymeas {

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const CNum& x) { return x.is_zero(); }

/// Dense row-major matrix over an exact field (Scalar or CNum).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<T> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!is_zero(x[c])) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  /// Leading columns [0, k).
  Matrix first_columns(std::size_t k) const {
    Matrix out(rows_, k);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < k; ++c) out(r, c) = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// In-place reduced row echelon form; pivots are the first nonzero entry of
/// each column scanned left to right. Returns pivot columns.
template <typename T>
std::vector<std::size_t> rref(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    T inv = T{1} / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (!is_zero(a(row, c))) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename T>
std::size_t rank(Matrix<T> a) {
  return rref(a).size();
}

/// Right kernel basis: one vector per free column, with 1 in that column.
template <typename T>
std::vector<std::vector<T>> kernel_rref(Matrix<T> a) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(a.cols());
    v[f] = T{1};
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  T det{1};
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && is_zero(a(p, col))) ++p;
    if (p == n) return T{};
    if (p != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    T inv = T{1} / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      T f = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

namespace detail {

inline void components(const Scalar& x, std::vector<Rational>& out) {
  out.push_back(x.rational_part());
  out.push_back(x.root_part());
}
inline void components(const CNum& x, std::vector<Rational>& out) {
  components(x.re, out);
  components(x.im, out);
}

}  // namespace detail

/// Rescales v by a positive or negative rational so that every rational
/// component is an integer, their gcd is 1, and the first nonzero component
/// (in the order re.a, re.b, im.a, im.b of the first nonzero entry) is
/// positive. For rational real vectors this is the primitive integer vector.
template <typename T>
void normalize_primitive(std::vector<T>& v) {
  std::vector<Rational> comps;
  for (const auto& x : v) detail::components(x, comps);
  Integer lcm_den{1}, gcd_num{0};
  int first_sign = 0;
  for (const auto& q : comps) {
    if (q == 0) continue;
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    if (first_sign == 0) first_sign = q > 0 ? 1 : -1;
  }
  if (first_sign == 0) return;
  for (const auto& q : comps) {
    if (q == 0) continue;
    Rational scaled = q * Rational(lcm_den);
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_num_mpz_t());
  }
  Rational f(lcm_den, gcd_num);
  f.canonicalize();
  if (first_sign < 0) f = -f;
  T factor{Scalar(f)};
  for (auto& x : v) x *= factor;
}

}  // namespace polymeas
