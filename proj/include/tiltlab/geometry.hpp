#pragma once

#include <array>
#include <string>

#include "rational.hpp"

namespace tiltlab {

// Numerical model of a polarized projective scheme (X, H), reduced to the
// scalars every computation here consumes.  k_coeff is the proportionality
// factor K_X ≡ k·H; lattice holds the component step sizes of the class
// lattice.  Immutable after construction.
struct Geometry {
  std::string name;
  int dim;             // 2 or 3
  QQ h_top;            // H^dim > 0
  QQ td2_dot_h;        // td2(X)·H
  QQ chi_o;            // χ(O_X)
  QQ k_coeff;          // K_X ≡ k_coeff·H
  QQ bg_defect;        // D in the bound x^2/2 + D, >= 0
  QQ gamma_dot_h;      // Γ·H >= 0
  std::array<QQ, 4> lattice;  // δ0..δ3, all > 0

  void validate() const {
    require(dim == 2 || dim == 3, "dim must be 2 or 3");
    require(h_top > 0, "h_top must be positive");
    require(bg_defect >= 0, "bg_defect must be nonnegative");
    require(gamma_dot_h >= 0, "gamma_dot_h must be nonnegative");
    for (const QQ& d : lattice) require(d > 0, "lattice steps must be positive");
  }

  QQ gamma_ratio() const { return gamma_dot_h / h_top; }
};

struct FanoPreset {
  int index;   // ι in 1..4
  QQ degree;   // d = (-K)^3 / ι^3
  QQ genus;    // g = (-K)^3/2 + 1 = d·ι^3/2 + 1
};

// Coefficient a(ι) in χ(E) = v3 + (ι/2)v2 + a(ι)v1 + (1/d)v0.
inline QQ fano_a_coeff(int index, const QQ& degree) {
  switch (index) {
    case 1: return QQ(1, 12) + QQ(2) / degree;
    case 2: return QQ(1, 3) + QQ(1) / degree;
    case 3: return QQ(13, 12);
    case 4: return QQ(11, 6);
  }
  throw domain_error("Fano index must be in 1..4");
}

inline FanoPreset make_fano_preset(int index, const QQ& degree) {
  require(index >= 1 && index <= 4, "Fano index must be in 1..4");
  require(degree > 0, "Fano degree must be positive");
  FanoPreset p;
  p.index = index;
  p.degree = degree;
  p.genus = degree * index * index * index / 2 + 1;
  return p;
}

// Polarization by the ample generator: H^3 = d, K = -ι·H; td2·H is
// back-solved from the χ expansion so Riemann-Roch is consistent by
// construction.  Class lattice matches v(O(mH)) = (d, md, m²d/2, m³d/6).
inline Geometry fano_preset(int index, const QQ& degree) {
  FanoPreset p = make_fano_preset(index, degree);
  Geometry g;
  g.name = "fano-i" + std::to_string(index) + "-d" + rat_str(degree);
  g.dim = 3;
  g.h_top = p.degree;
  g.td2_dot_h = fano_a_coeff(index, degree) * p.degree;
  g.chi_o = 1;
  g.k_coeff = -index;
  g.bg_defect = 0;
  g.gamma_dot_h = 0;
  g.lattice = {p.degree, p.degree, QQ(1, 2), QQ(1, 6)};
  g.validate();
  return g;
}

// D_{X,H,γ} assembled from the surjection data: twists t1±, t2± of the two
// comparison sheaves, the ample shift N, the slope defect s, the correction q
// and the t3/ℓ pair of the γ-term.
inline QQ bg_defect_constant(const QQ& t1_plus, const QQ& t1_minus,
                             const QQ& t2_plus, const QQ& t2_minus,
                             const QQ& big_n, const QQ& s_val, const QQ& q_val,
                             const QQ& t3, long ell) {
  require(ell >= 2, "ell must be an integer >= 2");
  require(t1_plus >= t1_minus, "t1_plus must dominate t1_minus");
  require(t2_plus >= t2_minus, "t2_plus must dominate t2_minus");
  QQ t1 = std::max(QQ(abs(t1_plus)), QQ(abs(t1_minus)));
  QQ t2 = std::max(QQ(abs(t2_plus)), QQ(abs(t2_minus)));
  QQ half_sq = (t1_plus - t1_minus + big_n) * (t1_plus - t1_minus + big_n) / 2;
  QQ base = t1 * (t1 + 1) + t2 + half_sq;
  QQ gamma_part = QQ(ell + 1) * t3 * t3 - QQ(ell - 1) / 2 * q_val;
  return base + std::max(QQ(0), s_val) + gamma_part;
}

struct GammaEpsilon {
  QQ theta_min;
  QQ gamma_eps_dot_h;  // Γ(ε)·H = θ·H^3 − td2·H, always >= 0
};

inline GammaEpsilon gamma_epsilon_theta(const Geometry& geom, const QQ& eps) {
  require(eps > 0, "epsilon must be positive");
  require(geom.h_top > 0, "h_top must be positive");
  QQ he = geom.h_top * eps;
  QQ b1 = (2 + QQ(abs(geom.chi_o))) / he;
  QQ b2 = geom.td2_dot_h / geom.h_top;
  QQ b3 = (2 + 2 * QQ(abs(1 - geom.chi_o))) / he - b2;
  QQ theta = std::max(std::max(b1, b2), b3);
  GammaEpsilon out;
  out.theta_min = theta;
  out.gamma_eps_dot_h = theta * geom.h_top - geom.td2_dot_h;
  invariant(out.gamma_eps_dot_h >= 0, "gamma(eps)·H fell below zero");
  return out;
}

// Brill-Noether bound max{s, 1 + H²(s²-1)/8 + (H²-8)/(s(s+2)H²+8)} on a
// polarized surface of degree h2, for even s > 0.
inline QQ bn_bound(const QQ& h2, long s) {
  require(s > 0 && s % 2 == 0, "s must be a positive even integer");
  require(h2 > 0, "h2 must be positive");
  QQ ss(s);
  QQ val = 1 + h2 * (ss * ss - 1) / 8 + (h2 - 8) / (ss * (ss + 2) * h2 + 8);
  return std::max(ss, val);
}

enum class BgnCase { smooth_sc, very_ample_2h, rational_s };

// td2·H > H³/3 + c, the threshold under which the criterion fires.
inline bool bgn_criterion(const Geometry& geom, BgnCase c) {
  require(geom.dim == 3, "criterion applies to threefolds only");
  QQ offset;
  switch (c) {
    case BgnCase::smooth_sc: offset = 1; break;
    case BgnCase::very_ample_2h: offset = QQ(1, 2); break;
    case BgnCase::rational_s: offset = 2; break;
  }
  return geom.td2_dot_h > geom.h_top / 3 + offset;
}

}  // namespace tiltlab
