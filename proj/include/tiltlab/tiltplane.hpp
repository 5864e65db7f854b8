#pragma once

#include <utility>

#include "charclass.hpp"
#include "interval.hpp"

namespace tiltlab {

struct TiltPoint {
  QQ b, w;
  TiltPoint() : b(0), w(0) {}
  TiltPoint(QQ b_, QQ w_) : b(std::move(b_)), w(std::move(w_)) {}
};

// The region boundary is the parabola w = b^2/2 + defect.
struct LePotierBound {
  QQ defect;
  explicit LePotierBound(QQ d = QQ(0)) : defect(std::move(d)) {
    require(defect >= 0, "defect must be nonnegative");
  }
};

// Z^{b,w}(v) = −v2 + w·v0 + i(v1 − b·v0)
inline std::pair<QQ, QQ> central_charge(const CharVector& v,
                                        const TiltPoint& p) {
  return {-v.v2 + p.w * v.v0, v.v1 - p.b * v.v0};
}

inline Slope nu_slope(const CharVector& v, const TiltPoint& p) {
  QQ den = v.v1 - p.b * v.v0;
  if (den == 0) return std::nullopt;
  return QQ((v.v2 - p.w * v.v0) / den);
}

// Z_{a,b}(v) = −v2^b + (a^2/2)v0 + i·v1^b; with w = (a^2+b^2)/2 the slope
// satisfies ν_{b,w} = b + μ_{a,b}.
inline std::pair<QQ, QQ> z_ab(const CharVector& v, const QQ& a, const QQ& b) {
  require(a > 0, "a must be positive");
  Twisted<QQ> t = twisted(v, b);
  return {-t.t2 + a * a / 2 * v.v0, t.t1};
}

inline bool region_contains(const TiltPoint& p, const LePotierBound& lp) {
  return p.w > p.b * p.b / 2 + lp.defect;
}

// Infimum of the admissible w over b: b^2/2 plus the periodic fractional
// correction (b − ⌊b⌋)(⌊b⌋ + 1 − b)/2.
inline QQ restricted_range_min_w(const QQ& b) {
  QQ fb = b - QQ(floor_q(b));
  return b * b / 2 + fb * (1 - fb) / 2;
}

inline std::pair<QQ, QQ> pi_projection(const CharVector& v) {
  require(v.v0 != 0, "pi projection needs v0 != 0");
  return {v.v1 / v.v0, v.v2 / v.v0};
}

namespace detail {

// Squared distance from (b,w) to the subgraph {y <= x^2/2 + D} as a
// polynomial in the abscissa x of the boundary point.
inline QPoly parabola_dist_sq(const QQ& b, const QQ& w, const QQ& defect) {
  QQ c = w - defect;
  return QPoly({b * b + c * c, -2 * b, 1 - c, QQ(0), QQ(1, 4)});
}

}  // namespace detail

// Certified interval of width <= precision around
// (1 + |b| + |w|) / min{1, dist}, dist the distance from the upward vertical
// ray at p to the complement of the region.  The minimum of the quartic
// squared-distance is certified through Sturm isolation of its derivative's
// roots plus interval evaluation; the sqrt and the final quotient are
// outward-rounded.
inline QInterval support_constant(const TiltPoint& p, const LePotierBound& lp,
                                  const QQ& precision) {
  require(precision > 0, "precision must be positive");
  require(region_contains(p, lp), "point outside the region");
  QQ numerator = 1 + QQ(abs(p.b)) + QQ(abs(p.w));
  QPoly f = detail::parabola_dist_sq(p.b, p.w, lp.defect);
  QPoly df = f.derivative();
  QQ tol(1, 16);
  for (;;) {
    QInterval d2(QQ(0), QQ(0));
    bool first = true;
    for (const QInterval& root : isolate_real_roots(df, tol)) {
      QInterval val = f.eval(root);
      if (first) {
        d2 = val;
        first = false;
      } else {
        d2 = QInterval(std::min(d2.lo, val.lo), std::min(d2.hi, val.hi));
      }
    }
    invariant(!first, "squared-distance derivative lost all roots");
    if (d2.lo < 0) d2.lo = 0;  // distance is a priori nonnegative
    QInterval dist = sqrt_interval(d2, tol);
    if (dist.lo >= 1) return {numerator, numerator};  // min clamps to 1
    if (dist.lo > 0) {
      QInterval m(std::min(QQ(1), dist.lo), std::min(QQ(1), dist.hi));
      QInterval c(numerator / m.hi, numerator / m.lo);
      if (c.width() <= precision) return c;
    }
    tol /= 16;
  }
}

}  // namespace tiltlab
