#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "polymeas/moments.hpp"

namespace polymeas {

/// Line a x + b y + c = 0 through at least two points of S, scaled so the
/// first nonzero coefficient is 1.
struct ArrLine {
  Scalar a, b, c;
  std::vector<std::pair<int, int>> generators;
  std::vector<int> points;  // indices of S on the line, ascending

  Scalar eval(const CNum& p) const { return a * p.re + b * p.im + c; }
};

inline std::vector<ArrLine> arrangement_lines(const PointSet& s) {
  std::vector<ArrLine> lines;
  for (int i = 0; i < s.size(); ++i)
    for (int j = i + 1; j < s.size(); ++j) {
      const CNum &p = s[i], &q = s[j];
      Scalar a = p.im - q.im, b = q.re - p.re, c = p.re * q.im - q.re * p.im;
      const Scalar lead = !a.is_zero() ? a : b;
      a /= lead;
      b /= lead;
      c /= lead;
      auto it = std::find_if(lines.begin(), lines.end(), [&](const ArrLine& l) {
        return l.a == a && l.b == b && l.c == c;
      });
      if (it != lines.end()) {
        it->generators.emplace_back(i, j);
        continue;
      }
      ArrLine line{a, b, c, {{i, j}}, {}};
      for (int k = 0; k < s.size(); ++k)
        if (line.eval(s[k]).is_zero()) line.points.push_back(k);
      lines.push_back(std::move(line));
    }
  return lines;
}

using SignVector = std::vector<std::int8_t>;

/// One trapezoid of the sweep decomposition (possibly a triangle).
struct Trapezoid {
  std::vector<CNum> polygon;  // counterclockwise, original coordinates
  Scalar area;
  CNum centroid;
  CNum alternate;  // a second strictly interior point
  std::size_t cell = 0;
};

/// A region of conv(S) with constant density for every polygonal measure on S.
/// Line cells are convex and carry one sign vector; chambers are unions of
/// line cells not separated by a segment between two points of S.
struct Chamber {
  SignVector sign_vector;                 // lexicographically least of its line cells
  std::vector<SignVector> cell_sign_vectors;
  std::vector<std::size_t> cells;         // indices into Arrangement::cells
  CNum representative;
  CNum alternate;
  Scalar area;
  std::vector<Trapezoid> pieces;
};

struct Arrangement {
  PointSet points;
  std::vector<ArrLine> lines;
  Scalar shear;
  std::vector<int> hull;
  std::vector<Chamber> cells;     // cells of conv(S) minus all lines
  std::vector<Chamber> chambers;  // cells of conv(S) minus all segments
};

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

inline Chamber assemble(std::vector<Trapezoid> pieces, std::vector<std::size_t> cells,
                        std::vector<SignVector> signs) {
  Chamber ch;
  ch.cells = std::move(cells);
  ch.cell_sign_vectors = std::move(signs);
  ch.sign_vector = *std::min_element(ch.cell_sign_vectors.begin(), ch.cell_sign_vectors.end());
  ch.representative = pieces.front().centroid;
  ch.alternate = pieces.back().alternate;
  for (const auto& p : pieces) ch.area += p.area;
  ch.pieces = std::move(pieces);
  return ch;
}

}  // namespace detail

/// Sweep over vertical strips after a shear x' = x + eps y (eps the first of
/// 0, 1, 1/2, 1/3, ... making no line vertical). Inside a strip the lines are
/// totally ordered and the cells are trapezoids; trapezoids are merged into
/// line cells by sign vector and into chambers across non-segment boundaries.
inline Arrangement build_arrangement(const PointSet& s) {
  Arrangement arr{s, arrangement_lines(s), Scalar{}, convex_hull(s), {}, {}};
  const auto& lines = arr.lines;
  const std::size_t L = lines.size();

  for (long q = 0;; ++q) {
    Scalar eps = q == 0 ? Scalar(0) : Scalar(Rational(1, q));
    bool ok = std::all_of(lines.begin(), lines.end(),
                          [&](const ArrLine& l) { return !(l.b - l.a * eps).is_zero(); });
    if (ok) {
      arr.shear = eps;
      break;
    }
  }
  const Scalar& eps = arr.shear;
  auto shear_x = [&](const CNum& p) { return p.re + eps * p.im; };
  auto unshear = [&](const Scalar& x, const Scalar& y) { return CNum(x - eps * y, y); };

  // y = slope * X + icpt in sheared coordinates
  std::vector<Scalar> slope(L), icpt(L), span_lo(L), span_hi(L);
  for (std::size_t l = 0; l < L; ++l) {
    Scalar den = lines[l].b - lines[l].a * eps;
    slope[l] = -lines[l].a / den;
    icpt[l] = -lines[l].c / den;
    span_lo[l] = span_hi[l] = shear_x(s[lines[l].points.front()]);
    for (int k : lines[l].points) {
      Scalar x = shear_x(s[k]);
      if (x < span_lo[l]) span_lo[l] = x;
      if (x > span_hi[l]) span_hi[l] = x;
    }
  }
  auto y_at = [&](std::size_t l, const Scalar& x) { return slope[l] * x + icpt[l]; };

  Scalar xmin = shear_x(s[0]), xmax = xmin;
  for (const auto& p : s.points()) {
    Scalar x = shear_x(p);
    if (x < xmin) xmin = x;
    if (x > xmax) xmax = x;
  }
  std::vector<Scalar> events{xmin, xmax};
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a + 1; b < L; ++b) {
      if (slope[a] == slope[b]) continue;
      Scalar x = (icpt[b] - icpt[a]) / (slope[a] - slope[b]);
      if (x > xmin && x < xmax) events.push_back(std::move(x));
    }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  std::vector<CNum> hull_pts;
  for (int h : arr.hull) hull_pts.push_back(s[h]);

  std::vector<Trapezoid> pieces;
  std::vector<SignVector> piece_signs;
  std::vector<std::pair<std::size_t, std::size_t>> open_walls;  // piece pairs across non-segments
  const Scalar half{Rational(1, 2)}, third{Rational(1, 3)};

  std::vector<std::size_t> order(L);
  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    const Scalar &xa = events[e], &xb = events[e + 1];
    Scalar xm = (xa + xb) * half;
    std::vector<Scalar> ym(L);
    for (std::size_t l = 0; l < L; ++l) ym[l] = y_at(l, xm);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return ym[u] < ym[v]; });

    std::size_t prev_piece = SIZE_MAX;
    for (std::size_t r = 0; r + 1 < L; ++r) {
      std::size_t lo = order[r], hi = order[r + 1];
      CNum mid = unshear(xm, (ym[lo] + ym[hi]) * half);
      if (!strictly_inside_convex(mid, hull_pts)) {
        prev_piece = SIZE_MAX;
        continue;
      }
      Trapezoid t;
      t.area = (xb - xa) * (ym[hi] - ym[lo]);
      t.centroid = mid;
      Scalar x3 = xa + (xb - xa) * third;
      Scalar ylo3 = y_at(lo, x3), yhi3 = y_at(hi, x3);
      t.alternate = unshear(x3, ylo3 + (yhi3 - ylo3) * third);
      for (const auto& [x, l] : {std::pair{xa, lo}, {xb, lo}, {xb, hi}, {xa, hi}}) {
        CNum v = unshear(x, y_at(l, x));
        if (t.polygon.empty() || !(t.polygon.back() == v)) t.polygon.push_back(v);
      }
      if (t.polygon.size() > 1 && t.polygon.front() == t.polygon.back()) t.polygon.pop_back();

      SignVector sv(L);
      for (std::size_t l = 0; l < L; ++l) {
        int sg = lines[l].eval(mid).sign();
        if (sg == 0) throw GeometryError("internal: sample point on an arrangement line");
        sv[l] = static_cast<std::int8_t>(sg);
      }
      std::size_t idx = pieces.size();
      if (prev_piece != SIZE_MAX && !(xm > span_lo[lo] && xm < span_hi[lo]))
        open_walls.emplace_back(prev_piece, idx);
      pieces.push_back(std::move(t));
      piece_signs.push_back(std::move(sv));
      prev_piece = idx;
    }
  }

  // line cells: pieces grouped by sign vector
  std::map<SignVector, std::size_t> cell_of;
  std::vector<SignVector> cell_signs;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    auto [it, fresh] = cell_of.try_emplace(piece_signs[p], cell_signs.size());
    if (fresh) cell_signs.push_back(piece_signs[p]);
    pieces[p].cell = it->second;
  }
  const std::size_t ncells = cell_signs.size();

  detail::DisjointSets dsu(ncells);
  for (auto [p, q] : open_walls) dsu.unite(pieces[p].cell, pieces[q].cell);

  // line cells, in sign-vector order
  std::vector<std::size_t> cell_rank(ncells);
  {
    std::vector<std::size_t> by_sign(ncells);
    std::iota(by_sign.begin(), by_sign.end(), 0);
    std::sort(by_sign.begin(), by_sign.end(),
              [&](std::size_t u, std::size_t v) { return cell_signs[u] < cell_signs[v]; });
    for (std::size_t r = 0; r < ncells; ++r) cell_rank[by_sign[r]] = r;
    std::vector<std::vector<Trapezoid>> grouped(ncells);
    for (const auto& p : pieces) grouped[cell_rank[p.cell]].push_back(p);
    for (std::size_t r = 0; r < ncells; ++r) {
      for (auto& p : grouped[r]) p.cell = r;
      arr.cells.push_back(detail::assemble(std::move(grouped[r]), {r}, {cell_signs[by_sign[r]]}));
    }
  }

  // chambers: unions of line cells
  std::map<std::size_t, std::vector<std::size_t>> members;  // root -> original cell ids
  for (std::size_t c = 0; c < ncells; ++c) members[dsu.find(c)].push_back(c);
  for (auto& [root, cs] : members) {
    std::vector<Trapezoid> ps;
    for (const auto& p : pieces)
      if (dsu.find(p.cell) == root) {
        Trapezoid t = p;
        t.cell = cell_rank[p.cell];
        ps.push_back(std::move(t));
      }
    std::vector<std::size_t> ranks;
    std::vector<SignVector> signs;
    for (auto c : cs) ranks.push_back(cell_rank[c]);
    std::sort(ranks.begin(), ranks.end());
    for (auto r : ranks) signs.push_back(arr.cells[r].sign_vector);
    arr.chambers.push_back(detail::assemble(std::move(ps), std::move(ranks), std::move(signs)));
  }
  std::sort(arr.chambers.begin(), arr.chambers.end(),
            [](const Chamber& u, const Chamber& v) { return u.sign_vector < v.sign_vector; });
  return arr;
}

inline std::vector<Chamber> chambers(const PointSet& s) { return build_arrangement(s).chambers; }

/// 1 where the chamber lies in triangle t (tested at one interior point).
inline std::vector<int> containment_row(const Arrangement& arr, const TriangleRef& t,
                                        bool use_alternate = false) {
  std::vector<int> row(arr.chambers.size(), 0);
  if (area(arr.points, t).is_zero()) return row;
  for (std::size_t c = 0; c < arr.chambers.size(); ++c) {
    const CNum& p = use_alternate ? arr.chambers[c].alternate : arr.chambers[c].representative;
    auto loc = point_in_triangle(p, arr.points, t);
    if (loc == Location::boundary) throw GeometryError("internal: chamber sample on a triangle edge");
    row[c] = loc == Location::inside ? 1 : 0;
  }
  return row;
}

/// Rows: basis triangles (0, i, j) in lexicographic order; columns: chambers.
struct Incidence {
  std::vector<TriangleRef> rows;
  std::vector<std::vector<int>> entries;

  std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }
};

inline Incidence incidence(const Arrangement& arr, bool use_alternate = false) {
  Incidence inc;
  for (auto [i, j] : PolygonalMeasure::basis(arr.points.last())) {
    inc.rows.emplace_back(0, i, j);
    inc.entries.push_back(containment_row(arr, inc.rows.back(), use_alternate));
  }
  return inc;
}

/// Density of each chamber: the sum of densities of basis triangles containing it.
inline std::vector<Scalar> chamber_densities(const Arrangement& arr, const PolygonalMeasure& mu) {
  if (!(mu.base() == arr.points)) throw GeometryError("measure and arrangement use different point sets");
  if (!mu.is_real()) throw GeometryError("chamber densities need a real measure");
  std::vector<Scalar> out(arr.chambers.size());
  for (const auto& [key, d] : mu.densities()) {
    auto row = containment_row(arr, {0, key.first, key.second});
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c]) out[c] += d.re;
  }
  return out;
}

inline std::vector<Scalar> chamber_densities(const PolygonalMeasure& mu) {
  return chamber_densities(build_arrangement(mu.base()), mu);
}

/// Whether two 0/1 matrices agree after permuting rows and columns.
inline bool equal_up_to_relabeling(const std::vector<std::vector<int>>& x,
                                   const std::vector<std::vector<int>>& y) {
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  const std::size_t cols = x.front().size();
  if (y.front().size() != cols) return false;
  auto columns = [&](const std::vector<std::vector<int>>& m, const std::vector<std::size_t>& perm) {
    std::vector<std::vector<int>> cs(cols, std::vector<int>(m.size()));
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < m.size(); ++r) cs[c][r] = m[perm[r]][c];
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  std::vector<std::size_t> ident(y.size()), perm(x.size());
  std::iota(ident.begin(), ident.end(), 0);
  std::iota(perm.begin(), perm.end(), 0);
  const auto target = columns(y, ident);
  do {
    if (columns(x, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace polymeas
