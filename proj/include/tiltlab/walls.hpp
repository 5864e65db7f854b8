#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "tiltplane.hpp"

namespace tiltlab {

// Numerical wall: the line a + b_coef·b + c_coef·w = 0 with integer-cleared
// coefficients (gcd 1, last nonzero coefficient positive), plus the
// destabilizer classes that produced it.
struct Wall {
  ZZ a_coef, b_coef, c_coef;
  std::vector<CharVector> witnesses;
  bool witness_overflow = false;
  bool relaxed = false;

  Slope slope() const {
    if (c_coef == 0) return std::nullopt;
    QQ s(-b_coef, c_coef);
    s.canonicalize();
    return s;
  }
};

// Integer index ranges k_i for lattice points u_i = k_i·δ_i.
struct BoxSpec {
  ZZ k0_lo, k0_hi, k1_lo, k1_hi, k2_lo, k2_hi;

  bool empty() const {
    return k0_lo > k0_hi || k1_lo > k1_hi || k2_lo > k2_hi;
  }
  ZZ points() const {
    if (empty()) return ZZ(0);
    return (k0_hi - k0_lo + 1) * (k1_hi - k1_lo + 1) * (k2_hi - k2_lo + 1);
  }
  bool covers(const BoxSpec& inner) const {
    if (inner.empty()) return true;
    return k0_lo <= inner.k0_lo && inner.k0_hi <= k0_hi &&
           k1_lo <= inner.k1_lo && inner.k1_hi <= k1_hi &&
           k2_lo <= inner.k2_lo && inner.k2_hi <= k2_hi;
  }
};

namespace detail {

inline std::tuple<QQ, QQ, QQ> line_coeffs(const CharVector& v,
                                          const CharVector& u) {
  return {v.v2 * u.v1 - v.v1 * u.v2, v.v0 * u.v2 - v.v2 * u.v0,
          u.v0 * v.v1 - v.v0 * u.v1};
}

inline bool witness_less(const CharVector& a, const CharVector& b) {
  if (a.v0 != b.v0) return a.v0 < b.v0;
  if (a.v1 != b.v1) return a.v1 < b.v1;
  return a.v2 < b.v2;
}

inline ZZ floor_div(const QuadraticNumber& x, const QQ& step) {
  return (x / QuadraticNumber(step)).floor();
}

inline ZZ ceil_div(const QuadraticNumber& x, const QQ& step) {
  return -((-(x / QuadraticNumber(step))).floor());
}

}  // namespace detail

inline Wall wall_line(const CharVector& v, const CharVector& u) {
  auto [qa, qb, qc] = detail::line_coeffs(v, u);
  require(!(qa == 0 && qb == 0 && qc == 0),
          "proportional classes give no wall line");
  ZZ l;
  mpz_lcm(l.get_mpz_t(), qa.get_den_mpz_t(), qb.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), qc.get_den_mpz_t());
  ZZ a = qa.get_num() * (l / qa.get_den());
  ZZ b = qb.get_num() * (l / qb.get_den());
  ZZ c = qc.get_num() * (l / qc.get_den());
  ZZ g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  a /= g;
  b /= g;
  c /= g;
  ZZ last = c != 0 ? c : (b != 0 ? b : a);
  if (last < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  Wall w;
  w.a_coef = a;
  w.b_coef = b;
  w.c_coef = c;
  w.witnesses.push_back(u);
  return w;
}

namespace detail {

// The candidate conditions at a fixed point, transcribed one-for-one.  The
// brute-force oracle applies exactly these to every lattice point in its
// box; the analytic enumerator only generates candidates and then re-screens
// them through the same set.
struct PointPredicates {
  const CharVector& v;
  TiltPoint p;
  const Geometry& geom;
  QQ defect;

  bool on_lattice(const CharVector& u) const {
    return is_int_multiple(u.v0, geom.lattice[0]) &&
           is_int_multiple(u.v1, geom.lattice[1]) &&
           is_int_multiple(u.v2, geom.lattice[2]);
  }

  bool bg_ok(const CharVector& u) const {
    if (defect == 0) return discriminant(u) >= 0;
    return discriminant(u) + 2 * defect * u.v0 * u.v0 >= 0;
  }

  bool accepts(const CharVector& u) const {
    if (proportional_upto2(u, v)) return false;
    if (!on_lattice(u)) return false;
    CharVector q = CharVector::raw(v.v0 - u.v0, v.v1 - u.v1, v.v2 - u.v2);
    QQ X = v.v1 - p.b * v.v0;
    QQ x = u.v1 - p.b * u.v0;
    if (X != 0) {
      if (!(0 < x && x < X)) return false;
      // slope equality at p, cross-multiplied
      if ((u.v2 - p.w * u.v0) * X != (v.v2 - p.w * v.v0) * x) return false;
    } else {
      // vertical family: both slopes are +inf; the imaginary parts vanish
      // and heart positivity moves to the real parts
      if (x != 0) return false;
      if (!(p.w * u.v0 - u.v2 <= 0)) return false;
      if (!(p.w * q.v0 - q.v2 <= 0)) return false;
    }
    if (!bg_ok(u) || !bg_ok(q)) return false;
    if (defect == 0 && !(discriminant(u) + discriminant(q) <= discriminant(v)))
      return false;
    return true;
  }
};

inline std::size_t worker_count() {
  if (const char* env = std::getenv("TILTLAB_THREADS")) {
    long n = std::atol(env);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// Group witnesses by normalized line, sort witnesses and walls, apply the
// cap.  Shared by the enumerator and the oracle so both report identically.
inline std::vector<Wall> assemble_walls(const CharVector& v,
                                        std::vector<CharVector> wits,
                                        std::size_t witness_cap,
                                        bool relaxed) {
  std::map<std::tuple<ZZ, ZZ, ZZ>, std::vector<CharVector>> groups;
  for (auto& u : wits) {
    Wall line = wall_line(v, u);
    groups[{line.a_coef, line.b_coef, line.c_coef}].push_back(std::move(u));
  }
  std::vector<Wall> out;
  for (auto& [key, group] : groups) {
    Wall w;
    w.a_coef = std::get<0>(key);
    w.b_coef = std::get<1>(key);
    w.c_coef = std::get<2>(key);
    w.relaxed = relaxed;
    std::sort(group.begin(), group.end(), witness_less);
    group.erase(std::unique(group.begin(), group.end()), group.end());
    if (group.size() > witness_cap) {
      w.witness_overflow = true;
      group.resize(witness_cap);
    }
    w.witnesses = std::move(group);
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
    Slope sa = a.slope(), sb = b.slope();
    if (sa.has_value() != sb.has_value()) return sa.has_value();  // inf last
    if (sa && sb && *sa != *sb) return *sa < *sb;
    return witness_less(a.witnesses.front(), b.witnesses.front());
  });
  return out;
}

// u0-window at fixed x = u1 − b·u0 from the discriminant constraint
// Δ(u) + 2D·u0² >= 0, i.e. (2w − b² − 2D)·u0² − 2x·s·u0 − x² <= 0 with
// s = b − ν0.
struct U0Window {
  QuadraticNumber lo, hi;
};

inline U0Window u0_window(const QQ& x, const QQ& s, const QQ& a2_eff) {
  invariant(a2_eff > 0, "degenerate discriminant window");
  QQ rad = s * s + a2_eff;
  QuadraticNumber spread = QuadraticNumber(x / a2_eff) *
                           QuadraticNumber(QQ(0), QQ(1), rad);
  QuadraticNumber base(x * s / a2_eff);
  return {base - spread, base + spread};
}

inline std::vector<CharVector> scan_box(const BoxSpec& box,
                                        const Geometry& geom,
                                        const PointPredicates& pred) {
  std::vector<CharVector> wits;
  if (box.empty()) return wits;
  for (ZZ k0 = box.k0_lo; k0 <= box.k0_hi; ++k0)
    for (ZZ k1 = box.k1_lo; k1 <= box.k1_hi; ++k1)
      for (ZZ k2 = box.k2_lo; k2 <= box.k2_hi; ++k2) {
        CharVector u = CharVector::raw(QQ(k0) * geom.lattice[0],
                                       QQ(k1) * geom.lattice[1],
                                       QQ(k2) * geom.lattice[2]);
        if (pred.accepts(u)) wits.push_back(std::move(u));
      }
  return wits;
}

}  // namespace detail

// Certified candidate box for walls through p: every class passing the
// candidate conditions lies inside.  The brute-force oracle must be handed a
// box covering this one.
inline BoxSpec certified_box(const CharVector& v, const TiltPoint& p,
                             const Geometry& geom, const LePotierBound& lp) {
  require(region_contains(p, lp), "point outside the region");
  require(discriminant(v) >= 0, "wall search needs nonnegative discriminant");
  const QQ& d0 = geom.lattice[0];
  const QQ& d1 = geom.lattice[1];
  const QQ& d2 = geom.lattice[2];
  BoxSpec box{ZZ(1), ZZ(0), ZZ(1), ZZ(0), ZZ(1), ZZ(0)};  // empty
  QQ X = v.v1 - p.b * v.v0;
  if (X < 0) return box;
  if (X == 0) {
    // vertical family: v0 <= u0 <= 0, u1 = b·u0, w·u0 <= u2 <= v2 − w·(v0−u0)
    if (v.v0 >= 0) return box;
    box.k0_lo = ceil_q(v.v0 / d0);
    box.k0_hi = ZZ(0);
    QQ u1_edge = p.b * v.v0;
    box.k1_lo = ceil_q(std::min(u1_edge, QQ(0)) / d1);
    box.k1_hi = floor_q(std::max(u1_edge, QQ(0)) / d1);
    box.k2_lo = ceil_q(p.w * v.v0 / d2);
    box.k2_hi = floor_q((v.v2 - p.w * v.v0) / d2);
    return box;
  }

  QQ a2_eff = 2 * p.w - p.b * p.b - 2 * lp.defect;
  QQ nu0 = (v.v2 - p.w * v.v0) / X;
  QQ s = p.b - nu0;
  QQ g = rat_gcd(d1, p.b * d0);
  bool any = false;
  auto widen = [&any](ZZ& lo, ZZ& hi, const ZZ& a, const ZZ& b) {
    if (!any) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  };
  for (ZZ j = 1; QQ(j) * g < X; ++j) {
    QQ x = QQ(j) * g;
    auto win = detail::u0_window(x, s, a2_eff);
    ZZ k_lo = detail::ceil_div(win.lo, d0);
    ZZ k_hi = detail::floor_div(win.hi, d0);
    if (k_lo > k_hi) continue;
    QQ u1_a = x + p.b * QQ(k_lo) * d0;
    QQ u1_b = x + p.b * QQ(k_hi) * d0;
    QQ u2_a = p.w * QQ(k_lo) * d0 + nu0 * x;
    QQ u2_b = p.w * QQ(k_hi) * d0 + nu0 * x;
    widen(box.k1_lo, box.k1_hi, floor_q(std::min(u1_a, u1_b) / d1),
          ceil_q(std::max(u1_a, u1_b) / d1));
    widen(box.k2_lo, box.k2_hi, floor_q(std::min(u2_a, u2_b) / d2),
          ceil_q(std::max(u2_a, u2_b) / d2));
    box.k0_lo = any ? std::min(box.k0_lo, k_lo) : k_lo;
    box.k0_hi = any ? std::max(box.k0_hi, k_hi) : k_hi;
    any = true;
  }
  if (!any) return BoxSpec{ZZ(1), ZZ(0), ZZ(1), ZZ(0), ZZ(1), ZZ(0)};
  return box;
}

// All numerical walls for v through p.  Complete for defect 0; for a
// positive defect the caller must supply the search box and results carry
// the relaxed label.
inline std::vector<Wall> walls_through_point(
    const CharVector& v, const TiltPoint& p, const Geometry& geom,
    const LePotierBound& lp,
    const std::optional<BoxSpec>& relaxed_box = std::nullopt,
    std::size_t witness_cap = 64) {
  require(region_contains(p, lp), "point outside the region");
  require(discriminant(v) >= 0, "wall search needs nonnegative discriminant");
  detail::PointPredicates pred{v, p, geom, lp.defect};
  const QQ& d0 = geom.lattice[0];
  const QQ& d1 = geom.lattice[1];
  const QQ& d2 = geom.lattice[2];

  if (lp.defect > 0) {
    require(relaxed_box.has_value(),
            "positive defect needs an explicit search box");
    return detail::assemble_walls(
        v, detail::scan_box(*relaxed_box, geom, pred), witness_cap, true);
  }

  QQ X = v.v1 - p.b * v.v0;
  if (X < 0) return {};
  std::vector<CharVector> wits;
  if (X == 0) {
    // vertical family at b = v1/v0; candidates need v0 <= u0 <= 0
    if (v.v0 < 0) {
      for (ZZ k0 = ceil_q(v.v0 / d0); k0 <= 0; ++k0) {
        QQ u0 = QQ(k0) * d0;
        QQ u1 = p.b * u0;
        if (!is_int_multiple(u1, d1)) continue;
        QQ u2_max = v.v2 - p.w * (v.v0 - u0);
        for (ZZ k2 = ceil_q(p.w * u0 / d2); QQ(k2) * d2 <= u2_max; ++k2) {
          CharVector u = CharVector::raw(u0, u1, QQ(k2) * d2);
          if (pred.accepts(u)) wits.push_back(std::move(u));
        }
      }
    }
    return detail::assemble_walls(v, std::move(wits), witness_cap, false);
  }

  QQ a2 = 2 * p.w - p.b * p.b;
  QQ nu0 = (v.v2 - p.w * v.v0) / X;
  QQ s = p.b - nu0;
  QQ g = rat_gcd(d1, p.b * d0);
  std::vector<QQ> xs;
  for (ZZ j = 1; QQ(j) * g < X; ++j) xs.push_back(QQ(j) * g);

  std::size_t nw =
      std::min(detail::worker_count(), std::max<std::size_t>(xs.size(), 1));
  std::vector<std::vector<CharVector>> found(nw);
  auto scan = [&](std::size_t wk) {
    for (std::size_t i = wk; i < xs.size(); i += nw) {
      const QQ& x = xs[i];
      auto win = detail::u0_window(x, s, a2);
      ZZ k_hi = detail::floor_div(win.hi, d0);
      for (ZZ k = detail::ceil_div(win.lo, d0); k <= k_hi; ++k) {
        QQ u0 = QQ(k) * d0;
        QQ u1 = x + p.b * u0;
        if (!is_int_multiple(u1, d1)) continue;
        QQ u2 = p.w * u0 + nu0 * x;
        if (!is_int_multiple(u2, d2)) continue;
        CharVector u = CharVector::raw(u0, u1, u2);
        if (pred.accepts(u)) found[wk].push_back(std::move(u));
      }
    }
  };
  if (nw == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t wk = 0; wk < nw; ++wk) pool.emplace_back(scan, wk);
    for (auto& t : pool) t.join();
  }
  for (auto& part : found)
    for (auto& u : part) wits.push_back(std::move(u));
  return detail::assemble_walls(v, std::move(wits), witness_cap, false);
}

// Exhaustive lattice scan applying the candidate conditions literally; the
// independent oracle for walls_through_point.
inline std::vector<Wall> bruteforce_walls(const CharVector& v,
                                          const TiltPoint& p,
                                          const Geometry& geom,
                                          const LePotierBound& lp,
                                          const BoxSpec& box,
                                          std::size_t witness_cap = 64) {
  require(region_contains(p, lp), "point outside the region");
  require(discriminant(v) >= 0, "wall search needs nonnegative discriminant");
  if (lp.defect == 0)
    require(box.covers(certified_box(v, p, geom, lp)),
            "box smaller than the certified bound");
  detail::PointPredicates pred{v, p, geom, lp.defect};
  return detail::assemble_walls(v, detail::scan_box(box, geom, pred),
                                witness_cap, lp.defect > 0);
}

// Walls crossing the vertical segment {b0} × (w_lo, w_hi].
inline std::vector<Wall> walls_in_band(
    const CharVector& v, const QQ& b0, const QQ& w_lo, const QQ& w_hi,
    const Geometry& geom, const LePotierBound& lp,
    const std::optional<BoxSpec>& relaxed_box = std::nullopt,
    std::size_t witness_cap = 64) {
  require(w_lo < w_hi, "empty or inverted band interval");
  require(w_lo >= b0 * b0 / 2 + lp.defect, "segment exits the region");
  require(discriminant(v) >= 0, "wall search needs nonnegative discriminant");
  const QQ& d0 = geom.lattice[0];
  const QQ& d1 = geom.lattice[1];
  const QQ& d2 = geom.lattice[2];
  QQ X = v.v1 - b0 * v.v0;

  // wall of (v,u) crossing the segment: f(b0, ·) = 0 is linear in w
  auto crossing_w = [&](const CharVector& u) -> std::optional<QQ> {
    auto [A, B, C] = detail::line_coeffs(v, u);
    if (C == 0) {
      if (A + B * b0 == 0) return w_hi;  // wall contains the segment
      return std::nullopt;
    }
    QQ w = -(A + B * b0) / C;
    if (w_lo < w && w <= w_hi) return w;
    return std::nullopt;
  };
  auto acceptable = [&](const CharVector& u) -> bool {
    if (proportional_upto2(u, v)) return false;
    auto w = crossing_w(u);
    if (!w) return false;
    detail::PointPredicates pred{v, TiltPoint{b0, *w}, geom, lp.defect};
    return pred.accepts(u);
  };

  if (lp.defect > 0) {
    require(relaxed_box.has_value(),
            "positive defect needs an explicit search box");
    std::vector<CharVector> wits;
    const BoxSpec& box = *relaxed_box;
    for (ZZ k0 = box.k0_lo; k0 <= box.k0_hi; ++k0)
      for (ZZ k1 = box.k1_lo; k1 <= box.k1_hi; ++k1)
        for (ZZ k2 = box.k2_lo; k2 <= box.k2_hi; ++k2) {
          CharVector u =
              CharVector::raw(QQ(k0) * d0, QQ(k1) * d1, QQ(k2) * d2);
          if (acceptable(u)) wits.push_back(std::move(u));
        }
    return detail::assemble_walls(v, std::move(wits), witness_cap, true);
  }

  std::vector<CharVector> wits;
  if (X == 0) {
    // vertical family: the wall b = b0 itself.  The per-candidate
    // constraints only relax as w grows, so feasibility somewhere on the
    // segment reduces to feasibility at w_hi.
    if (v.v0 < 0) {
      detail::PointPredicates pred{v, TiltPoint{b0, w_hi}, geom, lp.defect};
      for (ZZ k0 = ceil_q(v.v0 / d0); k0 <= 0; ++k0) {
        QQ u0 = QQ(k0) * d0;
        QQ u1 = b0 * u0;
        if (!is_int_multiple(u1, d1)) continue;
        QQ u2_max = v.v2 - w_hi * (v.v0 - u0);
        for (ZZ k2 = ceil_q(w_hi * u0 / d2); QQ(k2) * d2 <= u2_max; ++k2) {
          CharVector u = CharVector::raw(u0, u1, QQ(k2) * d2);
          if (pred.accepts(u)) wits.push_back(std::move(u));
        }
      }
    }
    return detail::assemble_walls(v, std::move(wits), witness_cap, false);
  }
  if (X < 0) return {};

  QQ a2_min = 2 * w_lo - b0 * b0;
  require(a2_min > 0, "band reaches the region boundary");
  QQ a2_max = 2 * w_hi - b0 * b0;
  QQ nu_at_lo = (v.v2 - w_lo * v.v0) / X;
  QQ nu_at_hi = (v.v2 - w_hi * v.v0) / X;
  QQ s_min = b0 - std::max(nu_at_lo, nu_at_hi);
  QQ s_max = b0 - std::min(nu_at_lo, nu_at_hi);
  QQ g = rat_gcd(d1, b0 * d0);

  std::vector<QQ> xs;
  for (ZZ j = 1; QQ(j) * g < X; ++j) xs.push_back(QQ(j) * g);
  std::size_t nw =
      std::min(detail::worker_count(), std::max<std::size_t>(xs.size(), 1));
  std::vector<std::vector<CharVector>> found(nw);
  auto scan = [&](std::size_t wk) {
    for (std::size_t i = wk; i < xs.size(); i += nw) {
      const QQ& x = xs[i];
      // conservative window: numerator extremes over [s_min, s_max] with
      // the radicand at a2_max, denominator at a2_min
      QuadraticNumber hi =
          (QuadraticNumber(x * s_max) +
           QuadraticNumber(x) *
               QuadraticNumber(QQ(0), QQ(1), s_max * s_max + a2_max)) /
          QuadraticNumber(a2_min);
      QuadraticNumber lo =
          (QuadraticNumber(x * s_min) -
           QuadraticNumber(x) *
               QuadraticNumber(QQ(0), QQ(1), s_min * s_min + a2_max)) /
          QuadraticNumber(a2_min);
      ZZ k_hi = detail::floor_div(hi, d0);
      for (ZZ k = detail::ceil_div(lo, d0); k <= k_hi; ++k) {
        QQ u0 = QQ(k) * d0;
        QQ u1 = x + b0 * u0;
        if (!is_int_multiple(u1, d1)) continue;
        // u2 along the crossing equation, over w in the segment
        QQ t_lo = (w_lo * (u0 * X - v.v0 * x) + v.v2 * x) / X;
        QQ t_hi = (w_hi * (u0 * X - v.v0 * x) + v.v2 * x) / X;
        if (t_lo > t_hi) std::swap(t_lo, t_hi);
        for (ZZ k2 = ceil_q(t_lo / d2); QQ(k2) * d2 <= t_hi; ++k2) {
          CharVector u = CharVector::raw(u0, u1, QQ(k2) * d2);
          if (acceptable(u)) found[wk].push_back(std::move(u));
        }
      }
    }
  };
  if (nw == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t wk = 0; wk < nw; ++wk) pool.emplace_back(scan, wk);
    for (auto& t : pool) t.join();
  }
  for (auto& part : found)
    for (auto& u : part) wits.push_back(std::move(u));
  return detail::assemble_walls(v, std::move(wits), witness_cap, false);
}

struct PseudoWallReport {
  bool is_wall;
  std::string diagnostic;  // empty when is_wall, else the first failure
};

// Necessary-condition screen for a single candidate destabilizer: does the
// line of (v,u) meet the region with an admissible point on it?
inline PseudoWallReport is_pseudo_wall(const CharVector& v,
                                       const CharVector& u,
                                       const Geometry& geom,
                                       const LePotierBound& lp) {
  if (proportional_upto2(u, v)) return {false, "proportional"};
  detail::PointPredicates pred{v, TiltPoint{}, geom, lp.defect};
  CharVector q = CharVector::raw(v.v0 - u.v0, v.v1 - u.v1, v.v2 - u.v2);
  if (!pred.bg_ok(u)) return {false, "BG violated (candidate)"};
  if (!pred.bg_ok(q)) return {false, "BG violated (complement)"};
  if (lp.defect == 0 &&
      !(discriminant(u) + discriminant(q) <= discriminant(v)))
    return {false, "discriminant cap exceeded"};

  auto [A, B, C] = detail::line_coeffs(v, u);
  if (C == 0 && B == 0) return {false, "degenerate line"};

  if (C == 0) {
    // vertical line b = −A/B; need w > b²/2 + D with both real parts
    // nonpositive, each constraint a half-line in w
    QQ b_line = -A / B;
    QQ w_floor = b_line * b_line / 2 + lp.defect;  // exclusive
    std::optional<QQ> w_cap, w_need;
    const CharVector* parts[] = {&u, &q};
    for (const CharVector* c : parts) {
      if (c->v0 == 0) {
        if (!(c->v2 >= 0)) return {false, "no admissible point on the wall"};
      } else if (c->v0 > 0) {
        QQ cap = c->v2 / c->v0;  // w <= cap
        if (!w_cap || cap < *w_cap) w_cap = cap;
      } else {
        QQ need = c->v2 / c->v0;  // w >= need
        if (!w_need || need > *w_need) w_need = need;
      }
    }
    if (w_cap && !(*w_cap > w_floor))
      return {false, "no admissible point on the wall"};
    if (w_cap && w_need && !(*w_need <= *w_cap))
      return {false, "no admissible point on the wall"};
    return {true, ""};
  }

  // w(b) = −(A + B·b)/C exceeds b²/2 + D strictly between the roots
  QQ bc = B / C, ac = A / C;
  QQ disc = bc * bc - 2 * (ac + lp.defect);
  if (disc <= 0) return {false, "line misses the region"};
  QuadraticNumber lo(-bc, QQ(-1), disc);
  QuadraticNumber hi(-bc, QQ(1), disc);

  // shrink by the b-intervals where sub and quotient keep positive
  // imaginary part
  const CharVector* parts[] = {&u, &q};
  for (const CharVector* c : parts) {
    if (c->v0 == 0) {
      if (!(c->v1 > 0)) return {false, "no admissible point on the wall"};
      continue;
    }
    QuadraticNumber edge(c->v1 / c->v0);
    if (c->v0 > 0) {
      if (edge < hi) hi = edge;
    } else {
      if (edge > lo) lo = edge;
    }
  }
  if (!(lo < hi)) return {false, "no admissible point on the wall"};
  return {true, ""};
}

}  // namespace tiltlab
