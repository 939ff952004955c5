#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polymeas {

using Integer = mpz_class;
using Rational = mpq_class;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground field of a computation: Q (root 1) or Q(sqrt 3) (root 3).
enum class Field : int { rational = 1, sqrt3 = 3 };

inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern{R"(^[+-]?[0-9]+(/[0-9]+)?$)"};
  std::string s{text};
  if (!std::regex_match(s, pattern)) throw ParseError("malformed rational: '" + s + "'");
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos && Integer{s.substr(slash + 1)} == 0)
    throw ParseError("zero denominator: '" + std::string{text} + "'");
  Rational q{s};
  q.canonicalize();
  return q;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

/// Element a + b*sqrt(d) of Q or Q(sqrt 3). Values from Q embed into Q(sqrt 3);
/// the field tag only records where a value came from.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Scalar(Rational a, Rational b, Field f = Field::sqrt3)
      : a_(std::move(a)), b_(std::move(b)), root_(f) {
    a_.canonicalize();
    b_.canonicalize();
    if (root_ == Field::rational && b_ != 0)
      throw GeometryError("irrational part on a rational scalar");
  }

  static Scalar sqrt3() { return Scalar(Rational(0), Rational(1), Field::sqrt3); }

  const Rational& rational_part() const { return a_; }
  const Rational& root_part() const { return b_; }
  Field field() const { return root_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 3 b^2; never equal for nonzero b
    Rational lhs = a_ * a_, rhs = 3 * b_ * b_;
    return lhs > rhs ? sa : sb;
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar conjugate_root() const { return Scalar(a_, -b_, root_); }

  /// a^2 - 3 b^2, the field norm down to Q.
  Rational norm() const { return a_ * a_ - 3 * b_ * b_; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Rational n = norm();
    return Scalar(a_ / n, -b_ / n, root_);
  }

  Scalar operator-() const { return Scalar(-a_, -b_, root_); }

  Scalar& operator+=(const Scalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    root_ = join(root_, o.root_);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    root_ = join(root_, o.root_);
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (b_ == 0 && o.b_ == 0) {
      a_ *= o.a_;
    } else {
      Rational a = a_ * o.a_ + 3 * b_ * o.b_;
      Rational b = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(a);
      b_ = std::move(b);
    }
    root_ = join(root_, o.root_);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.b_ == 0) {
      if (o.a_ == 0) throw std::domain_error("division by zero scalar");
      a_ /= o.a_;
      b_ /= o.a_;
      root_ = join(root_, o.root_);
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double to_double() const;

  /// "p/q", "p", "a+b*r3", "a-b*r3", "b*r3", "r3", "-r3".
  std::string to_string() const {
    if (b_ == 0) return format_rational(a_);
    std::string irr;
    Rational mag = abs_q(b_);
    irr = mag == 1 ? "r3" : format_rational(mag) + "*r3";
    if (a_ == 0) return (b_ < 0 ? "-" : "") + irr;
    return format_rational(a_) + (b_ < 0 ? "-" : "+") + irr;
  }

  static Scalar parse(std::string_view text);

 private:
  static int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
  static Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }
  static Field join(Field x, Field y) {
    return (x == Field::sqrt3 || y == Field::sqrt3) ? Field::sqrt3 : Field::rational;
  }

  Rational a_{0};
  Rational b_{0};
  Field root_{Field::rational};
};

inline double Scalar::to_double() const {
  static const double root3 = 1.7320508075688772;
  return a_.get_d() + b_.get_d() * root3;
}

inline Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar");
  auto r3 = s.find("r3");
  if (r3 == std::string::npos) return Scalar(parse_rational(s));
  if (r3 + 2 != s.size()) throw ParseError("malformed scalar: '" + s + "'");
  // split "a" and "+-b*r3" at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < r3; ++i)
    if (s[i] == '+' || s[i] == '-') split = i;
  std::string head = split == std::string::npos ? "" : s.substr(0, split);
  std::string term = split == std::string::npos ? s.substr(0, r3) : s.substr(split, r3 - split);
  // term is now "[sign][rat*]"
  Rational coef{1};
  bool negative = false;
  if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
    negative = term.front() == '-';
    term.erase(0, 1);
  }
  if (!term.empty()) {
    if (term.back() != '*') throw ParseError("malformed scalar: '" + s + "'");
    term.pop_back();
    if (term.empty() || term.front() == '+' || term.front() == '-')
      throw ParseError("malformed scalar: '" + s + "'");
    coef = parse_rational(term);
  }
  if (negative) coef = -coef;
  Rational a = head.empty() ? Rational(0) : parse_rational(head);
  return Scalar(a, coef, Field::sqrt3);
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

/// Complex number with Scalar parts; doubles as a plane point (x, y) = (re, im).
struct CNum {
  Scalar re;
  Scalar im;

  CNum() = default;
  CNum(Scalar r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  CNum(long r) : re(r) {}               // NOLINT(google-explicit-constructor)
  CNum(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

  static CNum i() { return CNum(Scalar(0), Scalar(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  CNum conj() const { return CNum(re, -im); }
  Scalar norm2() const { return re * re + im * im; }

  CNum inverse() const {
    Scalar n = norm2();
    if (n.is_zero()) throw std::domain_error("division by zero complex");
    return CNum(re / n, -im / n);
  }

  CNum operator-() const { return CNum(-re, -im); }
  CNum& operator+=(const CNum& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CNum& operator-=(const CNum& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CNum& operator*=(const CNum& o) {
    if (o.im.is_zero() && im.is_zero()) {
      re *= o.re;
      return *this;
    }
    Scalar r = re * o.re - im * o.im;
    Scalar i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  CNum& operator/=(const CNum& o) {
    if (o.im.is_zero()) {
      re /= o.re;
      im /= o.re;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend CNum operator+(CNum x, const CNum& y) { return x += y; }
  friend CNum operator-(CNum x, const CNum& y) { return x -= y; }
  friend CNum operator*(CNum x, const CNum& y) { return x *= y; }
  friend CNum operator/(CNum x, const CNum& y) { return x /= y; }
  friend bool operator==(const CNum& x, const CNum& y) = default;

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    return "(" + re.to_string() + ")+(" + im.to_string() + ")*I";
  }
};

inline std::ostream& operator<<(std::ostream& os, const CNum& z) { return os << z.to_string(); }

inline CNum pow(const CNum& z, unsigned k) {
  CNum r{1}, base = z;
  while (k) {
    if (k & 1U) r *= base;
    base *= base;
    k >>= 1U;
  }
  return r;
}

/// Twice the signed area of (p, q, r): positive when counterclockwise.
inline Scalar orient(const CNum& p, const CNum& q, const CNum& r) {
  return (q.re - p.re) * (r.im - p.im) - (r.re - p.re) * (q.im - p.im);
}

struct TriangleRef {
  int i = 0, j = 0, k = 0;

  TriangleRef() = default;
  TriangleRef(int a, int b, int c) : i(a), j(b), k(c) {
    if (!(a < b && b < c)) throw GeometryError("triangle indices must satisfy i < j < k");
  }

  /// Sorts three distinct indices into a reference.
  static TriangleRef sorted(int a, int b, int c) {
    std::array<int, 3> v{a, b, c};
    std::sort(v.begin(), v.end());
    return {v[0], v[1], v[2]};
  }

  bool has_vertex(int v) const { return v == i || v == j || v == k; }
  friend auto operator<=>(const TriangleRef&, const TriangleRef&) = default;
  std::string to_string() const {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
  }
};

/// Ordered configuration z_0, ..., z_n of pairwise distinct points, n >= 2.
class PointSet {
 public:
  PointSet(std::vector<CNum> points, Field field = Field::rational)
      : points_(std::move(points)), field_(field) {
    if (points_.size() < 3) throw GeometryError("a point set needs at least 3 points");
    for (const auto& z : points_)
      if (field_ == Field::rational && !(z.re.is_rational() && z.im.is_rational()))
        throw GeometryError("irrational coordinate in a rational point set");
    for (std::size_t a = 0; a < points_.size(); ++a)
      for (std::size_t b = a + 1; b < points_.size(); ++b)
        if (points_[a] == points_[b])
          throw GeometryError("points " + std::to_string(a) + " and " + std::to_string(b) +
                              " coincide");
    nondegenerate_ = true;
    for (int a = 0; a < size() && nondegenerate_; ++a)
      for (int b = a + 1; b < size() && nondegenerate_; ++b)
        for (int c = b + 1; c < size(); ++c)
          if (orient(points_[a], points_[b], points_[c]).is_zero()) {
            nondegenerate_ = false;
            break;
          }
  }

  int size() const { return static_cast<int>(points_.size()); }
  /// Largest index n (the configuration is z_0..z_n).
  int last() const { return size() - 1; }
  const CNum& operator[](int idx) const { return points_.at(static_cast<std::size_t>(idx)); }
  const std::vector<CNum>& points() const { return points_; }
  Field field() const { return field_; }
  bool nondegenerate() const { return nondegenerate_; }

  friend bool operator==(const PointSet& x, const PointSet& y) {
    return x.field_ == y.field_ && x.points_ == y.points_;
  }

 private:
  std::vector<CNum> points_;
  Field field_;
  bool nondegenerate_ = false;
};

inline void check_index(const PointSet& s, int idx) {
  if (idx < 0 || idx >= s.size())
    throw GeometryError("point index " + std::to_string(idx) + " out of range");
}

/// det [[1,1,1],[x_i,x_j,x_k],[y_i,y_j,y_k]].
inline Scalar bracket(const PointSet& s, int i, int j, int k) {
  check_index(s, i);
  check_index(s, j);
  check_index(s, k);
  return orient(s[i], s[j], s[k]);
}

inline Scalar area(const PointSet& s, const TriangleRef& t) {
  return bracket(s, t.i, t.j, t.k).abs() / Scalar(2);
}

enum class Location { inside, boundary, outside };

inline Location point_in_triangle(const CNum& p, const CNum& a, const CNum& b, const CNum& c) {
  int o = orient(a, b, c).sign();
  if (o == 0) throw GeometryError("degenerate triangle");
  int s0 = orient(a, b, p).sign() * o;
  int s1 = orient(b, c, p).sign() * o;
  int s2 = orient(c, a, p).sign() * o;
  if (s0 < 0 || s1 < 0 || s2 < 0) return Location::outside;
  if (s0 == 0 || s1 == 0 || s2 == 0) return Location::boundary;
  return Location::inside;
}

inline Location point_in_triangle(const CNum& p, const PointSet& s, const TriangleRef& t) {
  return point_in_triangle(p, s[t.i], s[t.j], s[t.k]);
}

inline bool lex_less(const CNum& p, const CNum& q) {
  auto c = p.re <=> q.re;
  if (c != 0) return c < 0;
  return p.im < q.im;
}

/// Counterclockwise hull vertices, starting at the lexicographically smallest
/// point; points on hull edges are not vertices.
inline std::vector<int> convex_hull(const PointSet& s) {
  std::vector<int> idx(static_cast<std::size_t>(s.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(s[a], s[b]); });
  std::vector<int> hull(2 * idx.size());
  std::size_t k = 0;
  for (int p : idx) {
    while (k >= 2 && orient(s[hull[k - 2]], s[hull[k - 1]], s[p]).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = idx.size() - 1, lower = k + 1; i-- > 0;) {
    int p = idx[i];
    while (k >= lower && orient(s[hull[k - 2]], s[hull[k - 1]], s[p]).sign() <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw GeometryError("all points are collinear");
  return hull;
}

/// Exact area of the polygon with the given counterclockwise vertex indices.
inline Scalar polygon_area(const PointSet& s, const std::vector<int>& ccw) {
  Scalar twice;
  for (std::size_t a = 1; a + 1 < ccw.size(); ++a) twice += bracket(s, ccw[0], ccw[a], ccw[a + 1]);
  return twice / Scalar(2);
}

inline bool strictly_inside_convex(const CNum& p, const std::vector<CNum>& ccw) {
  for (std::size_t a = 0; a < ccw.size(); ++a)
    if (orient(ccw[a], ccw[(a + 1) % ccw.size()], p).sign() <= 0) return false;
  return true;
}

}  // namespace polymeas
