#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polymeas/exactgeom.hpp"

namespace polymeas {

/// Reproducible generator of rational configurations. Uses raw mt19937_64
/// output (fully specified by the standard) rather than distributions, whose
/// results differ between standard libraries.
class ConfigSampler {
 public:
  explicit ConfigSampler(std::uint64_t seed, long max_num = 20, long max_den = 20)
      : rng_(seed), max_num_(max_num), max_den_(max_den) {}

  Rational rational() {
    long num = static_cast<long>(rng_() % static_cast<std::uint64_t>(2 * max_num_ + 1)) - max_num_;
    long den = static_cast<long>(rng_() % static_cast<std::uint64_t>(max_den_)) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  CNum point() { return {Scalar(rational()), Scalar(rational())}; }

  /// Points z_0..z_{count-1} with no three collinear (rejection sampling).
  PointSet nondegenerate(int count) {
    for (;;) {
      std::vector<CNum> pts;
      while (static_cast<int>(pts.size()) < count) {
        CNum z = point();
        bool ok = true;
        for (std::size_t a = 0; a < pts.size() && ok; ++a) {
          if (pts[a] == z) ok = false;
          for (std::size_t b = a + 1; b < pts.size() && ok; ++b)
            if (orient(pts[a], pts[b], z).is_zero()) ok = false;
        }
        if (ok) pts.push_back(z);
      }
      PointSet s(pts);
      if (s.nondegenerate()) return s;
    }
  }

  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  long max_num_, max_den_;
};

}  // namespace polymeas
