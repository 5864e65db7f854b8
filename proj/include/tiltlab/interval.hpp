#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace tiltlab {

struct QInterval {
  QQ lo, hi;
  QInterval() : lo(0), hi(0) {}
  QInterval(QQ l, QQ h) : lo(std::move(l)), hi(std::move(h)) {
    require(lo <= hi, "inverted interval");
  }
  QQ width() const { return hi - lo; }
  bool contains(const QQ& x) const { return lo <= x && x <= hi; }
  QQ mid() const { return (lo + hi) / 2; }
};

inline QInterval operator+(const QInterval& a, const QInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline QInterval operator*(const QInterval& a, const QInterval& b) {
  QQ c0 = a.lo * b.lo, c1 = a.lo * b.hi, c2 = a.hi * b.lo, c3 = a.hi * b.hi;
  return {std::min(std::min(c0, c1), std::min(c2, c3)),
          std::max(std::max(c0, c1), std::max(c2, c3))};
}

// sqrt enclosure of a nonnegative interval, outward-rounded.
inline QInterval sqrt_interval(const QInterval& x, const QQ& tol) {
  require(x.lo >= 0, "sqrt of interval below zero");
  auto lo = sqrt_enclosure(x.lo, tol);
  auto hi = sqrt_enclosure(x.hi, tol);
  return {lo.first, hi.second};
}

// Dense univariate polynomial over Q, coefficients in ascending degree.
class QPoly {
 public:
  QPoly() {}
  QPoly(std::vector<QQ> c) : c_(std::move(c)) { trim(); }

  static QPoly constant(QQ v) { return QPoly({std::move(v)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<QQ>& coeffs() const { return c_; }
  const QQ& operator[](int i) const { return c_[i]; }

  QQ eval(const QQ& x) const {
    QQ r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  // Horner in interval arithmetic: encloses {eval(x) : x in box}.
  QInterval eval(const QInterval& box) const {
    QInterval r(QQ(0), QQ(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      r = r * box + QInterval(*it, *it);
    return r;
  }

  QPoly derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<QQ> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * QQ(i);
    return QPoly(std::move(d));
  }

  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<QQ> c(std::max(a.c_.size(), b.c_.size()), QQ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return QPoly(std::move(c));
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<QQ> c(a.c_.size() + b.c_.size() - 1, QQ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }

  // Euclidean remainder.
  QPoly rem(const QPoly& d) const {
    require(!d.is_zero(), "polynomial division by zero");
    QPoly r = *this;
    while (!r.is_zero() && r.degree() >= d.degree()) {
      QQ f = r.c_.back() / d.c_.back();
      int shift = r.degree() - d.degree();
      std::vector<QQ> sub(r.c_.size(), QQ(0));
      for (std::size_t i = 0; i < d.c_.size(); ++i)
        sub[i + shift] = d.c_[i] * f;
      r = r - QPoly(std::move(sub));
    }
    return r;
  }

  QPoly monic() const {
    if (is_zero()) return *this;
    std::vector<QQ> c = c_;
    QQ lead = c.back();
    for (auto& x : c) x /= lead;
    return QPoly(std::move(c));
  }

  // All real roots lie in [-bound, bound].
  QQ cauchy_bound() const {
    require(!is_zero(), "root bound of zero polynomial");
    QQ m(0);
    for (std::size_t i = 0; i + 1 < c_.size(); ++i)
      m = std::max(m, QQ(abs(c_[i] / c_.back())));
    return m + 1;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<QQ> c_;
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.rem(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 1) return p;
  QPoly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  // exact division p / g via repeated remainder-free Euclid steps
  QPoly q;
  {
    QPoly r = p;
    std::vector<QQ> qc(p.degree() - g.degree() + 1, QQ(0));
    while (!r.is_zero() && r.degree() >= g.degree()) {
      int shift = r.degree() - g.degree();
      QQ f = r.coeffs().back() / g.coeffs().back();
      qc[shift] = f;
      std::vector<QQ> sub(r.degree() + 1, QQ(0));
      for (int i = 0; i <= g.degree(); ++i) sub[i + shift] = g[i] * f;
      r = r - QPoly(std::move(sub));
    }
    invariant(r.is_zero(), "squarefree division left a remainder");
    q = QPoly(std::move(qc));
  }
  return q;
}

// Sturm chain of a squarefree polynomial.
class Sturm {
 public:
  explicit Sturm(const QPoly& p) : chain_{squarefree_part(p)} {
    if (chain_[0].degree() >= 1) {
      chain_.push_back(chain_[0].derivative());
      while (chain_.back().degree() >= 1) {
        QPoly r = chain_[chain_.size() - 2].rem(chain_.back());
        if (r.is_zero()) break;
        std::vector<QQ> neg;
        for (const QQ& c : r.coeffs()) neg.push_back(-c);
        chain_.push_back(QPoly(std::move(neg)));
      }
    }
  }

  // number of distinct real roots in (a, b], for a < b non-roots of p
  int count_roots(const QQ& a, const QQ& b) const {
    return variations(a) - variations(b);
  }

  const QPoly& poly() const { return chain_[0]; }

 private:
  int variations(const QQ& x) const {
    int v = 0, last = 0;
    for (const QPoly& p : chain_) {
      int s = sgn(p.eval(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  std::vector<QPoly> chain_;
};

// Isolating intervals (lo, hi] for every distinct real root, each of width
// <= tol, endpoints chosen off the root set.
inline std::vector<QInterval> isolate_real_roots(const QPoly& p,
                                                 const QQ& tol) {
  require(!p.is_zero(), "root isolation of zero polynomial");
  QPoly sf = squarefree_part(p);
  if (sf.degree() == 0) return {};
  Sturm st(sf);
  QQ bound = sf.cauchy_bound();
  // endpoints of the initial bracket must not be roots; the Cauchy bound
  // already guarantees that
  std::vector<QInterval> out;
  struct Seg {
    QQ a, b;
    int n;
  };
  std::vector<Seg> work{{-bound, bound, st.count_roots(-bound, bound)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.n == 0) continue;
    if (s.n == 1 && s.b - s.a <= tol) {
      out.push_back(QInterval(s.a, s.b));
      continue;
    }
    QQ m = (s.a + s.b) / 2;
    // keep every cut point off the (finite) root set
    QQ nudge = std::min(QQ((s.b - s.a) / 4), QQ(tol / 2));
    while (sf.eval(m) == 0) {
      nudge /= 2;
      m += nudge;
    }
    int left = st.count_roots(s.a, m);
    work.push_back({s.a, m, left});
    work.push_back({m, s.b, s.n - left});
  }
  std::sort(out.begin(), out.end(),
            [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
  return out;
}

}  // namespace tiltlab
