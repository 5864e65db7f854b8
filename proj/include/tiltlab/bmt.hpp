#pragma once

#include <vector>

#include "walls.hpp"

namespace tiltlab {

// Expanded quadratic form Q at (b,w): twice the half-form
//   ½Q = w(v₁² − 2v₀v₂ + 3ξv₀²) + b(3v₀v₃ − v₁v₂ − 3v₀g₁)
//        + 2v₂² − 3v₁v₃ − 3ξv₀v₂ + 3v₁g₁
// with ξ the gamma ratio and g₁ the class's gamma pairing.
inline QQ q_form(const CharVector& v, const TiltPoint& p,
                 const Geometry& geom) {
  require(v.v3.has_value(), "missing third component");
  QQ xi = geom.gamma_ratio();
  QQ g1 = v.g1_or_default(geom);
  const QQ& b = p.b;
  const QQ& w = p.w;
  QQ half = w * (v.v1 * v.v1 - 2 * v.v0 * v.v2 + 3 * xi * v.v0 * v.v0) +
            b * (3 * v.v0 * *v.v3 - v.v1 * v.v2 - 3 * v.v0 * g1) +
            2 * v.v2 * v.v2 - 3 * v.v1 * *v.v3 - 3 * xi * v.v0 * v.v2 +
            3 * v.v1 * g1;
  return 2 * half;
}

// Signed slack in v₃ᵇ ≤ (2w−b²)/6·v₁ᵇ + g₁ − b·ξ·v₀; nonnegative means the
// inequality holds at (b,w).
inline QQ conj1_check(const CharVector& v, const TiltPoint& p,
                      const Geometry& geom) {
  require(v.v3.has_value(), "missing third component");
  auto t = twisted(v, p.b);
  QQ xi = geom.gamma_ratio();
  QQ g1 = v.g1_or_default(geom);
  QQ rhs = (2 * p.w - p.b * p.b) / 6 * t.t1 + g1 - p.b * xi * v.v0;
  return rhs - t.t3.value();
}

// Sign of g₁ − b̄·ξ·v₀ − v₃^b̄ computed exactly in Q(√Δ).
inline int conj3_check(const CharVector& v, const Geometry& geom) {
  require(v.v3.has_value(), "missing third component");
  require(discriminant(v) >= 0, "negative discriminant");
  QuadraticNumber bb = bbar(v);
  auto t = twisted<QuadraticNumber>(v, bb);
  QQ xi = geom.gamma_ratio();
  QQ g1 = v.g1_or_default(geom);
  QuadraticNumber margin = QuadraticNumber(g1) -
                           bb * QuadraticNumber(xi * v.v0) - t.t3.value();
  return margin.sign();
}

struct QGridRow {
  QQ b, w;
  int sign;
  QQ q;
};

// Exact sign of Q over a rational grid, row-major in (b, w).
inline std::vector<QGridRow> q_region_sample(const CharVector& v,
                                             const Geometry& geom,
                                             const QQ& b_lo, const QQ& b_hi,
                                             const QQ& w_lo, const QQ& w_hi,
                                             const QQ& step_b,
                                             const QQ& step_w) {
  require(step_b > 0 && step_w > 0, "grid steps must be positive");
  require(b_lo <= b_hi && w_lo <= w_hi, "inverted grid rectangle");
  std::vector<QQ> bs, ws;
  for (QQ b = b_lo; b <= b_hi; b += step_b) bs.push_back(b);
  for (QQ w = w_lo; w <= w_hi; w += step_w) ws.push_back(w);
  LePotierBound lp;
  for (const QQ& b : bs)
    require(region_contains(TiltPoint{b, w_lo}, lp), "grid outside region");
  std::vector<QGridRow> out(bs.size() * ws.size());
  std::size_t nw = std::min(detail::worker_count(),
                            std::max<std::size_t>(bs.size(), 1));
  auto rows = [&](std::size_t wk) {
    for (std::size_t i = wk; i < bs.size(); i += nw)
      for (std::size_t j = 0; j < ws.size(); ++j) {
        QQ q = q_form(v, TiltPoint{bs[i], ws[j]}, geom);
        out[i * ws.size() + j] = {bs[i], ws[j], sgn(q), q};
      }
  };
  if (nw == 1) {
    rows(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t wk = 0; wk < nw; ++wk) pool.emplace_back(rows, wk);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace tiltlab
