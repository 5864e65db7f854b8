#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"

namespace tiltlab {

typedef mpz_class ZZ;
typedef mpq_class QQ;

// Slope values live in Q ∪ {+inf}; empty optional is the +inf sentinel.
typedef std::optional<QQ> Slope;

// gmpxx already provides sgn() and abs() for both ZZ and QQ.

// Canonical "p/q" form: lowest terms, positive denominator, "/1" elided.
inline std::string rat_str(const QQ& x) { return x.get_str(); }

inline QQ parse_rat(const std::string& s, const std::string& field = "") {
  auto fail = [&]() -> QQ {
    throw usage_error("malformed rational \"" + s + "\"" +
                      (field.empty() ? "" : " in field '" + field + "'"));
  };
  if (s.empty()) return fail();
  std::size_t slash = s.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '+' || t[0] == '-')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  // mpz_set_str rejects a leading '+', so shed it after validation
  if (slash == std::string::npos) {
    if (!digits_ok(s, true)) return fail();
    return QQ(ZZ(s[0] == '+' ? s.substr(1) : s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) return fail();
  if (num[0] == '+') num = num.substr(1);
  ZZ d(den);
  if (d == 0) return fail();
  QQ r(ZZ(num), d);
  r.canonicalize();
  return r;
}

inline ZZ floor_q(const QQ& x) {
  ZZ q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline ZZ ceil_q(const QQ& x) {
  ZZ q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Generator of the group aZ + bZ inside Q: gcd over a common denominator.
inline QQ rat_gcd(const QQ& a, const QQ& b) {
  ZZ l;
  mpz_lcm(l.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  ZZ an = a.get_num() * (l / a.get_den());
  ZZ bn = b.get_num() * (l / b.get_den());
  ZZ g;
  mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
  QQ r(g, l);
  r.canonicalize();
  return r;
}

inline bool is_int_multiple(const QQ& x, const QQ& step) {
  if (step == 0) return x == 0;
  QQ q = x / step;
  return q.get_den() == 1;
}

inline ZZ isqrt(const ZZ& n) {
  ZZ r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// sqrt(x) if x is a square in Q.
inline std::optional<QQ> rational_sqrt(const QQ& x) {
  if (x < 0) return std::nullopt;
  if (mpz_perfect_square_p(x.get_num_mpz_t()) &&
      mpz_perfect_square_p(x.get_den_mpz_t()))
    return QQ(isqrt(x.get_num()), isqrt(x.get_den()));
  return std::nullopt;
}

// [lo, hi] with lo <= sqrt(x) <= hi and hi - lo <= tol.  Exact endpoints:
// sqrt(n/d) = sqrt(n*d)/d, bracketed by the integer sqrt at scale 2^k.
inline std::pair<QQ, QQ> sqrt_enclosure(const QQ& x, const QQ& tol) {
  require(x >= 0, "sqrt of negative value");
  require(tol > 0, "sqrt tolerance must be positive");
  if (auto r = rational_sqrt(x)) return {*r, *r};
  ZZ t = x.get_num() * x.get_den();
  const ZZ& d = x.get_den();
  // need 1/(S*d) <= tol, S a power of two
  ZZ need = ceil_q(QQ(1) / (tol * d));
  ZZ S = 1;
  while (S < need) S <<= 1;
  ZZ r = isqrt(t * S * S);
  QQ lo(r, S * d), hi(r + 1, S * d);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

// Fixed-point decimal rendering (round toward zero), for convenience columns
// next to the exact record; never used in computations.
inline std::string rat_decimal(const QQ& x, int digits = 6) {
  ZZ num = x.get_num(), den = x.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  ZZ ip = num / den, rem = num % den;
  std::string out = (neg && (ip != 0 || rem != 0) ? "-" : "") + ip.get_str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      out += static_cast<char>('0' + ZZ(rem / den).get_si());
      rem %= den;
    }
  }
  return out;
}

}  // namespace tiltlab
