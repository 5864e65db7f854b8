#pragma once

#include <optional>

#include "geometry.hpp"
#include "quadratic.hpp"

namespace tiltlab {

// A class in the H-graded Chern lattice: (v0, v1, v2) = H-degrees of
// ch0..ch2, v3 = ch3 (threefolds only), g1 = Γ·ch1 when it differs from the
// rank-one default (Γ·H/H³)·v1.
struct CharVector {
  QQ v0, v1, v2;
  std::optional<QQ> v3;
  std::optional<QQ> g1;

  CharVector() : v0(0), v1(0), v2(0) {}

  // Validating constructor: components must sit on the geometry lattice
  // unless relaxed.
  CharVector(const Geometry& geom, QQ c0, QQ c1, QQ c2,
             std::optional<QQ> c3 = std::nullopt,
             std::optional<QQ> gamma1 = std::nullopt, bool relaxed = false)
      : v0(std::move(c0)), v1(std::move(c1)), v2(std::move(c2)),
        v3(std::move(c3)), g1(std::move(gamma1)) {
    if (v3) require(geom.dim == 3, "v3 requires a threefold geometry");
    if (!relaxed) {
      require(is_int_multiple(v0, geom.lattice[0]), "v0 off lattice");
      require(is_int_multiple(v1, geom.lattice[1]), "v1 off lattice");
      require(is_int_multiple(v2, geom.lattice[2]), "v2 off lattice");
      if (v3) require(is_int_multiple(*v3, geom.lattice[3]), "v3 off lattice");
    }
  }

  static CharVector raw(QQ c0, QQ c1, QQ c2,
                        std::optional<QQ> c3 = std::nullopt,
                        std::optional<QQ> gamma1 = std::nullopt) {
    CharVector v;
    v.v0 = std::move(c0);
    v.v1 = std::move(c1);
    v.v2 = std::move(c2);
    v.v3 = std::move(c3);
    v.g1 = std::move(gamma1);
    return v;
  }

  QQ g1_or_default(const Geometry& geom) const {
    return g1 ? *g1 : geom.gamma_ratio() * v1;
  }

  friend CharVector operator+(const CharVector& a, const CharVector& b) {
    CharVector r;
    r.v0 = a.v0 + b.v0;
    r.v1 = a.v1 + b.v1;
    r.v2 = a.v2 + b.v2;
    if (a.v3 && b.v3) r.v3 = *a.v3 + *b.v3;
    if (a.g1 && b.g1) r.g1 = *a.g1 + *b.g1;
    return r;
  }
  friend CharVector operator-(const CharVector& a, const CharVector& b) {
    CharVector r;
    r.v0 = a.v0 - b.v0;
    r.v1 = a.v1 - b.v1;
    r.v2 = a.v2 - b.v2;
    if (a.v3 && b.v3) r.v3 = *a.v3 - *b.v3;
    if (a.g1 && b.g1) r.g1 = *a.g1 - *b.g1;
    return r;
  }
  friend bool operator==(const CharVector& a, const CharVector& b) {
    return a.v0 == b.v0 && a.v1 == b.v1 && a.v2 == b.v2 && a.v3 == b.v3 &&
           a.g1 == b.g1;
  }
};

inline bool proportional_upto2(const CharVector& a, const CharVector& b) {
  return a.v0 * b.v1 == a.v1 * b.v0 && a.v0 * b.v2 == a.v2 * b.v0 &&
         a.v1 * b.v2 == a.v2 * b.v1;
}

// E ⊗ O(mH).  An explicit g1 picks up m·(Γ·H)·ch0; the defaulted g1 stays
// consistent automatically.
inline CharVector twist(const CharVector& v, const QQ& m, const Geometry& geom,
                        bool strict = false) {
  CharVector r;
  r.v0 = v.v0;
  r.v1 = v.v1 + m * v.v0;
  r.v2 = v.v2 + m * v.v1 + m * m / 2 * v.v0;
  if (v.v3) r.v3 = *v.v3 + m * v.v2 + m * m / 2 * v.v1 + m * m * m / 6 * v.v0;
  if (v.g1) r.g1 = *v.g1 + m * geom.gamma_dot_h * v.v0 / geom.h_top;
  if (strict) {
    require(is_int_multiple(r.v0, geom.lattice[0]) &&
                is_int_multiple(r.v1, geom.lattice[1]) &&
                is_int_multiple(r.v2, geom.lattice[2]) &&
                (!r.v3 || is_int_multiple(*r.v3, geom.lattice[3])),
            "twist left the lattice");
  }
  return r;
}

inline CharVector dual(const CharVector& v) {
  CharVector r;
  r.v0 = v.v0;
  r.v1 = -v.v1;
  r.v2 = v.v2;
  if (v.v3) r.v3 = -*v.v3;
  if (v.g1) r.g1 = -*v.g1;
  return r;
}

inline QQ discriminant(const CharVector& v) {
  return v.v1 * v.v1 - 2 * v.v0 * v.v2;
}

// χ(E) from the ch3 definition inverted: under K ≡ k·H and the rank-one
// shadow, K·ch2 = k·v2 and td2·ch1 = (td2·H/H^n)·v1.
inline QQ euler_char(const CharVector& v, const Geometry& geom) {
  require(v.v3.has_value(), "euler_char needs v3");
  require(geom.dim == 3, "euler_char is the threefold formula");
  return *v.v3 - geom.k_coeff / 2 * v.v2 +
         geom.td2_dot_h / geom.h_top * v.v1 + geom.chi_o / geom.h_top * v.v0;
}

inline Slope slope_mu(const CharVector& v) {
  if (v.v0 == 0) return std::nullopt;
  return QQ(v.v1 / v.v0);
}

// Parameter where the twisted v2 vanishes: v2/v1 for rank zero, otherwise
// (v1 − sqrt(Δ))/v0, generically a quadratic irrational.
inline QuadraticNumber bbar(const CharVector& v) {
  QQ disc = discriminant(v);
  require(disc >= 0, "bbar needs nonnegative discriminant");
  if (v.v0 == 0) {
    require(v.v1 != 0, "bbar undefined for v0 = v1 = 0");
    return QuadraticNumber(v.v2 / v.v1);
  }
  return QuadraticNumber(v.v1 / v.v0, QQ(-1) / v.v0, disc);
}

template <class Num>
struct Twisted {
  Num t0, t1, t2;
  std::optional<Num> t3;
};

// v^b_i = Σ_{j<=i} (−b)^j/j! · v_{i−j}
template <class Num>
inline Twisted<Num> twisted(const CharVector& v, const Num& b) {
  Twisted<Num> r;
  Num b2 = b * b, b3 = b2 * b;
  r.t0 = Num(v.v0);
  r.t1 = Num(v.v1) - b * Num(v.v0);
  r.t2 = Num(v.v2) - b * Num(v.v1) + b2 * Num(QQ(v.v0 / 2));
  if (v.v3)
    r.t3 = Num(*v.v3) - b * Num(v.v2) + b2 * Num(QQ(v.v1 / 2)) -
           b3 * Num(QQ(v.v0 / 6));
  return r;
}

inline Twisted<QQ> twisted(const CharVector& v, const QQ& b) {
  return twisted<QQ>(v, b);
}

}  // namespace tiltlab
