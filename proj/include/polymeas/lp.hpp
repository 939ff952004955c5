#pragma once

#include <optional>
#include <vector>

#include "polymeas/linalg.hpp"

namespace polymeas {

/// Finds x >= 0 with A x = b by phase-one simplex over an exact field
/// (Bland's rule, so it terminates). Returns nullopt when infeasible.
inline std::optional<std::vector<Scalar>> feasible_nonnegative(const Matrix<Scalar>& a,
                                                                const std::vector<Scalar>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("right-hand side has wrong length");
  // tableau columns: n structural, m artificial, rhs
  const std::size_t width = n + m + 1;
  Matrix<Scalar> t(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r].sign() < 0;
    for (std::size_t c = 0; c < n; ++c) t(r, c) = flip ? -a(r, c) : a(r, c);
    t(r, n + r) = Scalar(1);
    t(r, n + m) = flip ? -b[r] : b[r];
    basis[r] = n + r;
  }
  // objective row: minimize the sum of artificials, expressed in nonbasic terms
  for (std::size_t c = 0; c < width; ++c) {
    if (c >= n && c < n + m) continue;
    Scalar sum;
    for (std::size_t r = 0; r < m; ++r) sum -= t(r, c);
    t(m, c) = sum;
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c)
      if (t(m, c).sign() < 0) {
        enter = c;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Scalar best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, enter).sign() <= 0) continue;
      Scalar ratio = t(r, n + m) / t(r, enter);
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    Scalar inv = t(leave, enter).inverse();
    for (std::size_t c = 0; c < width; ++c) t(leave, c) *= inv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || t(r, enter).is_zero()) continue;
      Scalar f = t(r, enter);
      for (std::size_t c = 0; c < width; ++c)
        if (!t(leave, c).is_zero()) t(r, c) -= f * t(leave, c);
    }
    basis[leave] = enter;
  }

  if (!t(m, n + m).is_zero()) return std::nullopt;
  std::vector<Scalar> x(n);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) x[basis[r]] = t(r, n + m);
  return x;
}

}  // namespace polymeas
