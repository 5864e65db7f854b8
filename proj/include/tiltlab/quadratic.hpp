#pragma once

#include <string>
#include <utility>

#include "rational.hpp"

namespace tiltlab {

// Exact element p + q·sqrt(rad) of a real quadratic extension of Q.
// Canonical form: rad >= 0; q == 0 forces rad == 0; a perfect-square rad is
// folded into p.  All arithmetic stays inside one Q(sqrt(rad)); mixing two
// distinct irrational radicands is rejected.
class QuadraticNumber {
 public:
  QuadraticNumber() : p_(0), q_(0), rad_(0) {}
  QuadraticNumber(QQ p) : p_(std::move(p)), q_(0), rad_(0) {}
  QuadraticNumber(QQ p, QQ q, QQ rad)
      : p_(std::move(p)), q_(std::move(q)), rad_(std::move(rad)) {
    require(rad_ >= 0, "negative radicand");
    normalize();
  }

  const QQ& p() const { return p_; }
  const QQ& q() const { return q_; }
  const QQ& rad() const { return rad_; }
  bool is_rational() const { return q_ == 0; }

  // Exact sign by case analysis on the signs of p, q and p^2 vs q^2·rad.
  int sign() const {
    if (q_ == 0) return sgn(p_);
    if (p_ == 0) return sgn(q_);
    int sp = sgn(p_), sq = sgn(q_);
    if (sp == sq) return sp;
    // opposite signs: compare |p| with |q|sqrt(rad); equality would force
    // rad to be a perfect square, excluded by canonical form
    int c = cmp(p_ * p_, q_ * q_ * rad_);
    invariant(c != 0, "non-canonical quadratic number");
    return c > 0 ? sp : sq;
  }

  QuadraticNumber operator-() const { return raw(-p_, -q_, rad_); }
  QuadraticNumber conj() const { return raw(p_, -q_, rad_); }

  friend QuadraticNumber operator+(const QuadraticNumber& a,
                                   const QuadraticNumber& b) {
    QQ rad = joint_rad(a, b);
    return QuadraticNumber(a.p_ + b.p_, a.q_ + b.q_, rad);
  }
  friend QuadraticNumber operator-(const QuadraticNumber& a,
                                   const QuadraticNumber& b) {
    QQ rad = joint_rad(a, b);
    return QuadraticNumber(a.p_ - b.p_, a.q_ - b.q_, rad);
  }
  friend QuadraticNumber operator*(const QuadraticNumber& a,
                                   const QuadraticNumber& b) {
    QQ rad = joint_rad(a, b);
    return QuadraticNumber(a.p_ * b.p_ + a.q_ * b.q_ * rad,
                           a.p_ * b.q_ + a.q_ * b.p_, rad);
  }
  friend QuadraticNumber operator/(const QuadraticNumber& a,
                                   const QuadraticNumber& b) {
    QQ rad = joint_rad(a, b);
    require(b.p_ != 0 || b.q_ != 0, "division by zero");
    QQ n = b.p_ * b.p_ - b.q_ * b.q_ * rad;  // field norm of b
    invariant(n != 0, "zero norm for nonzero canonical quadratic number");
    return a * QuadraticNumber(b.p_ / n, -b.q_ / n, rad);
  }

  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
    return (a - b).sign() == 0;
  }
  friend bool operator<(const QuadraticNumber& a, const QuadraticNumber& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator<=(const QuadraticNumber& a, const QuadraticNumber& b) {
    return (a - b).sign() <= 0;
  }
  friend bool operator>(const QuadraticNumber& a, const QuadraticNumber& b) {
    return b < a;
  }
  friend bool operator>=(const QuadraticNumber& a, const QuadraticNumber& b) {
    return b <= a;
  }

  // [lo, hi] rational enclosure of width <= tol.
  std::pair<QQ, QQ> enclosure(const QQ& tol) const {
    if (q_ == 0) return {p_, p_};
    auto [slo, shi] = sqrt_enclosure(rad_, tol / (QQ(2) * abs(q_)));
    QQ a = p_ + q_ * slo, b = p_ + q_ * shi;
    return q_ > 0 ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  ZZ floor() const {
    if (q_ == 0) return floor_q(p_);
    auto [lo, hi] = enclosure(QQ(1, 16));
    ZZ k = floor_q(lo);
    // the enclosure may straddle an integer; settle exactly
    while (!(*this >= QuadraticNumber(QQ(k)))) k -= 1;
    while (*this >= QuadraticNumber(QQ(k + 1))) k += 1;
    return k;
  }

  std::string str() const {
    if (q_ == 0) return rat_str(p_);
    return rat_str(p_) + (q_ > 0 ? "+" : "") + rat_str(q_) + "*sqrt(" +
           rat_str(rad_) + ")";
  }

 private:
  static QuadraticNumber raw(QQ p, QQ q, QQ rad) {
    QuadraticNumber r;
    r.p_ = std::move(p);
    r.q_ = std::move(q);
    r.rad_ = std::move(rad);
    return r;
  }

  static QQ joint_rad(const QuadraticNumber& a, const QuadraticNumber& b) {
    if (a.q_ == 0) return b.rad_;
    if (b.q_ == 0) return a.rad_;
    require(a.rad_ == b.rad_, "mixed radicands " + rat_str(a.rad_) + " and " +
                                  rat_str(b.rad_));
    return a.rad_;
  }

  void normalize() {
    if (q_ == 0 || rad_ == 0) {
      q_ = 0;
      rad_ = 0;
      return;
    }
    if (auto s = rational_sqrt(rad_)) {
      p_ += q_ * *s;
      q_ = 0;
      rad_ = 0;
    }
  }

  QQ p_, q_, rad_;
};

}  // namespace tiltlab
