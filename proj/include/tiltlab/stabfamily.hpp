#pragma once

#include <array>
#include <utility>

#include "interval.hpp"
#include "tiltplane.hpp"

namespace tiltlab {

// Central charge of the three-dimensional family at (a,b,α,β):
//   re = −(v₃ᵇ − g₁) − b·ξ·v₀ + β·v₂ᵇ + α·v₁ᵇ,  im = v₂ᵇ − a²/2·v₀.
inline std::pair<QQ, QQ> z_full(const CharVector& v, const QQ& a, const QQ& b,
                                const QQ& alpha, const QQ& beta,
                                const Geometry& geom) {
  require(v.v3.has_value(), "missing third component");
  auto t = twisted(v, b);
  QQ xi = geom.gamma_ratio();
  QQ g1 = v.g1_or_default(geom);
  QQ re = -(t.t3.value() - g1) - b * xi * v.v0 + beta * t.t2 + alpha * t.t1;
  QQ im = t.t2 - a * a / 2 * v.v0;
  return {re, im};
}

// Membership of (a,b,α,β) in the slice cut out by α > a²/6 + |β|a/2 together
// with a generic-flatness check at (b, (a²+b²)/2) supplied by the caller.
template <typename RegionCheck>
inline bool vr_contains(const QQ& a, const QQ& b, const QQ& alpha,
                        const QQ& beta, RegionCheck&& region_check) {
  if (!(a > 0)) return false;
  if (!(alpha > a * a / 6 + QQ(abs(beta)) * a / 2)) return false;
  return region_check(b, (a * a + b * b) / 2);
}

struct SupportInterval {
  bool is_empty;
  // Enclosures of the endpoints; exact (zero-width) when the discriminant is
  // a rational square.
  QInterval k_lo, k_hi;
};

// The K for which the restricted form is negative definite form the interval
// between the roots of K² − (a²+6α)K + 6αa² + (9/4)β²a²; empty exactly when
// α ≤ a²/6 + |β|a/2.
inline SupportInterval support_interval(const QQ& a, const QQ& alpha,
                                        const QQ& beta,
                                        const QQ& precision = QQ(1) /
                                                              (1 << 20)) {
  require(a > 0, "a must be positive");
  require(precision > 0, "precision must be positive");
  if (alpha <= a * a / 6 + QQ(abs(beta)) * a / 2)
    return {true, QInterval{}, QInterval{}};
  QQ mid = a * a + 6 * alpha;
  QQ disc = (6 * alpha - a * a) * (6 * alpha - a * a) - 9 * beta * beta * a * a;
  invariant(disc > 0, "interval criterion out of sync with the discriminant");
  if (auto root = rational_sqrt(disc)) {
    QQ lo = (mid - *root) / 2;
    QQ hi = (mid + *root) / 2;
    return {false, QInterval{lo, lo}, QInterval{hi, hi}};
  }
  auto enc = sqrt_enclosure(disc, precision);
  return {false, QInterval{(mid - enc.second) / 2, (mid - enc.first) / 2},
          QInterval{(mid + enc.first) / 2, (mid + enc.second) / 2}};
}

// Negative definiteness of Q(x) = K·(x₁²−2x₀x₂) + ∇(x) restricted to the
// plane spanned by (0,1,0,α) and (1,0,a²/2,βa²/2−bξ), decided through the
// polarized Gram matrix.  The Gram entries are re-derived from the quadric at
// runtime and checked against their closed forms; `sample` is probed for
// consistency whenever it happens to lie in the plane.
inline bool negdef_check(const QQ& a, const QQ& b, const QQ& alpha,
                         const QQ& beta, const QQ& xi, const QQ& big_k,
                         const CharVector& sample) {
  require(a > 0, "a must be positive");
  auto quad = [&](const std::array<QQ, 4>& x) -> QQ {
    QQ delta = x[1] * x[1] - 2 * x[0] * x[2];
    QQ grad = 3 * xi * a * a * x[0] * x[0] +
              2 * x[2] * (2 * x[2] - 3 * xi * x[0]) -
              6 * x[1] * (x[3] + b * xi * x[0]);
    return big_k * delta + grad;
  };
  std::array<QQ, 4> k1{QQ(0), QQ(1), QQ(0), alpha};
  std::array<QQ, 4> k2{QQ(1), QQ(0), a * a / 2, beta * a * a / 2 - b * xi};
  std::array<QQ, 4> k12;
  for (int i = 0; i < 4; ++i) k12[i] = k1[i] + k2[i];
  QQ g11 = quad(k1);
  QQ g22 = quad(k2);
  QQ g12 = (quad(k12) - g11 - g22) / 2;
  invariant(g11 == big_k - 6 * alpha, "Gram entry (1,1) mismatch");
  invariant(g22 == a * a * a * a - big_k * a * a, "Gram entry (2,2) mismatch");
  invariant(g12 == -3 * beta * a * a / 2, "Gram entry (1,2) mismatch");
  bool negdef = g11 < 0 && g11 * g22 - g12 * g12 > 0;
  if (negdef && sample.v3) {
    std::array<QQ, 4> s{sample.v0, sample.v1, sample.v2, *sample.v3};
    QQ c2 = s[0];
    QQ c1 = s[1];
    bool in_plane = c2 * (a * a / 2) == s[2] &&
                    c1 * alpha + c2 * (beta * a * a / 2 - b * xi) == s[3];
    if (in_plane)
      invariant(quad(s) <= 0, "definite form positive on a plane sample");
  }
  return negdef;
}

}  // namespace tiltlab
