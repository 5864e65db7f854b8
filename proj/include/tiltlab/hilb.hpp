#pragma once

#include <utility>
#include <vector>

#include "rational.hpp"

namespace tiltlab {

// Factorial-rescaled coefficients αᵢ = i!·cᵢ of a polynomial given in
// ascending order.  Trailing zeros are dropped first.
inline std::vector<QQ> alpha_from_poly(std::vector<QQ> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  require(!coeffs.empty(), "zero polynomial");
  std::vector<QQ> alpha;
  alpha.reserve(coeffs.size());
  ZZ fact = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) fact *= ZZ(i);
    alpha.push_back(QQ(fact) * coeffs[i]);
  }
  return alpha;
}

// Hilbert polynomial of the structure sheaf, stored both raw and rescaled.
struct HilbertData {
  long n = 0;
  std::vector<QQ> coeffs_o;
  std::vector<QQ> alpha_o;

  explicit HilbertData(std::vector<QQ> coeffs) {
    alpha_o = alpha_from_poly(std::move(coeffs));
    n = static_cast<long>(alpha_o.size()) - 1;
    require(n >= 2, "dimension must be at least 2");
    require(alpha_o.back() > 0, "leading coefficient must be positive");
    coeffs_o = alpha_o;
    ZZ fact = 1;
    for (long i = 0; i <= n; ++i) {
      if (i > 0) fact *= ZZ(i);
      coeffs_o[i] /= QQ(fact);
    }
  }
};

struct SheafInvariants {
  QQ rk, deg, c2;
};

// Rank, degree, and second Chern number of a class from its Hilbert
// polynomial against the base.
inline SheafInvariants rk_deg_c2(const std::vector<QQ>& e_coeffs,
                                 const HilbertData& base) {
  auto ae = alpha_from_poly(e_coeffs);
  require(static_cast<long>(ae.size()) - 1 <= base.n,
          "polynomial degree exceeds the base dimension");
  ae.resize(base.n + 1, QQ(0));
  const auto& ao = base.alpha_o;
  QQ rk = ae[base.n] / ao[base.n];
  QQ deg = ae[base.n - 1] - rk * ao[base.n - 1];
  QQ c2 = ae[base.n - 2] - rk * ao[base.n - 2] - ao[base.n - 1] / ao[base.n] * deg;
  return {rk, deg, c2};
}

// Constant N²+(α_{n−1}/α_n)²−2α_{n−2}/α_n−(n+1)/12 attached to base data and
// a twist level N.
inline QQ n_constant(const std::vector<QQ>& alpha_o, const QQ& big_n) {
  long n = static_cast<long>(alpha_o.size()) - 1;
  require(n >= 2, "bad dimensions");
  require(alpha_o[n] != 0, "degenerate leading coefficient");
  QQ ratio = alpha_o[n - 1] / alpha_o[n];
  return big_n * big_n + ratio * ratio - 2 * alpha_o[n - 2] / alpha_o[n] -
         QQ(n + 1) / 12;
}

// Two-component charge τ(E) = (−c₂ + t·rk, deg − s·rk).
inline std::pair<QQ, QQ> tau_charge(const SheafInvariants& inv, const QQ& s,
                                    const QQ& t) {
  return {-inv.c2 + t * inv.rk, inv.deg - s * inv.rk};
}

// Degree shift under twisting: deg(E(mH)) − deg(E) = m·rk(E)·α_n(O).
inline QQ twist_shift(const QQ& rk, const HilbertData& base, const QQ& m) {
  return m * rk * base.alpha_o[base.n];
}

}  // namespace tiltlab
