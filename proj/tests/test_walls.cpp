#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <map>
#include <tuple>

#include "testutil.hpp"
#include <tiltlab/tiltlab.hpp>

using namespace tiltlab;
using Catch::Matchers::ContainsSubstring;

namespace {

Geometry coarse() {
  Geometry g;
  g.name = "coarse";
  g.dim = 3;
  g.h_top = 1;
  g.td2_dot_h = 0;
  g.chi_o = 1;
  g.k_coeff = 0;
  g.bg_defect = 0;
  g.gamma_dot_h = 0;
  g.lattice = {QQ(1), QQ(1), QQ(1, 2), QQ(1, 6)};
  return g;
}

bool same_walls(const std::vector<Wall>& a, const std::vector<Wall>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].a_coef != b[i].a_coef || a[i].b_coef != b[i].b_coef ||
        a[i].c_coef != b[i].c_coef)
      return false;
    if (a[i].witness_overflow != b[i].witness_overflow ||
        a[i].relaxed != b[i].relaxed)
      return false;
    if (a[i].witnesses.size() != b[i].witnesses.size()) return false;
    for (std::size_t j = 0; j < a[i].witnesses.size(); ++j)
      if (!(a[i].witnesses[j] == b[i].witnesses[j])) return false;
  }
  return true;
}

// Candidate conditions transcribed once more, straight from their statement,
// so the band test has a screen that shares nothing with the library path.
bool accepts_at(const CharVector& v, const CharVector& u, const QQ& b,
                const QQ& w, const Geometry& geom, const QQ& defect) {
  if (u.v0 * v.v1 == u.v1 * v.v0 && u.v0 * v.v2 == u.v2 * v.v0 &&
      u.v1 * v.v2 == u.v2 * v.v1)
    return false;
  if (!is_int_multiple(u.v0, geom.lattice[0]) ||
      !is_int_multiple(u.v1, geom.lattice[1]) ||
      !is_int_multiple(u.v2, geom.lattice[2]))
    return false;
  QQ X = v.v1 - b * v.v0;
  QQ x = u.v1 - b * u.v0;
  QQ q0 = v.v0 - u.v0, q1 = v.v1 - u.v1, q2 = v.v2 - u.v2;
  if (X != 0) {
    if (!(0 < x && x < X)) return false;
    if ((u.v2 - w * u.v0) * X != (v.v2 - w * v.v0) * x) return false;
  } else {
    if (x != 0) return false;
    if (w * u.v0 - u.v2 > 0) return false;
    if (w * q0 - q2 > 0) return false;
  }
  QQ du = u.v1 * u.v1 - 2 * u.v0 * u.v2;
  QQ dq = q1 * q1 - 2 * q0 * q2;
  QQ dv = v.v1 * v.v1 - 2 * v.v0 * v.v2;
  auto bg = [&](const QQ& d, const QQ& r) {
    return defect == 0 ? d >= 0 : d + 2 * defect * r * r >= 0;
  };
  if (!bg(du, u.v0) || !bg(dq, q0)) return false;
  if (defect == 0 && !(du + dq <= dv)) return false;
  return true;
}

using LineKey = std::tuple<ZZ, ZZ, ZZ>;

// Exhaustive band reference: every lattice point of the box whose wall line
// crosses the segment and passes the conditions at its crossing point.
std::map<LineKey, std::vector<CharVector>> band_reference(
    const CharVector& v, const QQ& b0, const QQ& w_lo, const QQ& w_hi,
    const Geometry& geom, const LePotierBound& lp, const BoxSpec& box) {
  std::map<LineKey, std::vector<CharVector>> out;
  for (ZZ k0 = box.k0_lo; k0 <= box.k0_hi; ++k0)
    for (ZZ k1 = box.k1_lo; k1 <= box.k1_hi; ++k1)
      for (ZZ k2 = box.k2_lo; k2 <= box.k2_hi; ++k2) {
        CharVector u = CharVector::raw(QQ(k0) * geom.lattice[0],
                                       QQ(k1) * geom.lattice[1],
                                       QQ(k2) * geom.lattice[2]);
        QQ A = v.v2 * u.v1 - v.v1 * u.v2;
        QQ B = v.v0 * u.v2 - v.v2 * u.v0;
        QQ C = u.v0 * v.v1 - v.v0 * u.v1;
        if (A == 0 && B == 0 && C == 0) continue;
        QQ w;
        if (C == 0) {
          if (A + B * b0 != 0) continue;
          w = w_hi;
        } else {
          w = -(A + B * b0) / C;
          if (!(w_lo < w && w <= w_hi)) continue;
        }
        if (!accepts_at(v, u, b0, w, geom, lp.defect)) continue;
        Wall line = wall_line(v, u);
        out[{line.a_coef, line.b_coef, line.c_coef}].push_back(u);
      }
  for (auto& [key, wits] : out)
    std::sort(wits.begin(), wits.end(), [](const CharVector& a,
                                           const CharVector& b) {
      if (a.v0 != b.v0) return a.v0 < b.v0;
      if (a.v1 != b.v1) return a.v1 < b.v1;
      return a.v2 < b.v2;
    });
  return out;
}

CharVector rand_wall_class(long span) {
  for (;;) {
    CharVector v =
        CharVector::raw(testutil::rand_int(-span, span),
                        testutil::rand_int(-span, span),
                        QQ(testutil::rand_int(-2 * span, 2 * span)) / 2);
    if (v.v0 == 0 && v.v1 == 0 && v.v2 == 0) continue;
    if (discriminant(v) < 0) continue;
    return v;
  }
}

}  // namespace

TEST_CASE("wall_line normalizes the pencil through the projection point") {
  Wall w = wall_line(CharVector::raw(2, 2, 1), CharVector::raw(1, 0, 0));
  CHECK(w.a_coef == 0);
  CHECK(w.b_coef == -1);
  CHECK(w.c_coef == 2);
  CHECK(*w.slope() == QQ(1, 2));
  REQUIRE(w.witnesses.size() == 1);
  CHECK(w.witnesses[0] == CharVector::raw(1, 0, 0));

  Wall flat = wall_line(CharVector::raw(0, 1, 0), CharVector::raw(1, 0, 0));
  CHECK(flat.a_coef == 0);
  CHECK(flat.b_coef == 0);
  CHECK(flat.c_coef == 1);
  CHECK(*flat.slope() == 0);

  CharVector v = CharVector::raw(3, -2, QQ(1, 2));
  CHECK_THROWS_WITH(wall_line(v, CharVector::raw(6, -4, 1)),
                    ContainsSubstring("proportional"));

  Geometry g = coarse();
  for (int i = 0; i < 40; ++i) {
    CharVector a = rand_wall_class(5);
    CharVector u = rand_wall_class(5);
    if (proportional_upto2(a, u)) continue;
    Wall line = wall_line(a, u);
    ZZ g3;
    mpz_gcd(g3.get_mpz_t(), line.a_coef.get_mpz_t(),
            line.b_coef.get_mpz_t());
    mpz_gcd(g3.get_mpz_t(), g3.get_mpz_t(), line.c_coef.get_mpz_t());
    CHECK(g3 == 1);
    CHECK(QQ(line.a_coef) * a.v0 + QQ(line.b_coef) * a.v1 +
              QQ(line.c_coef) * a.v2 ==
          0);
    CHECK(QQ(line.a_coef) * u.v0 + QQ(line.b_coef) * u.v1 +
              QQ(line.c_coef) * u.v2 ==
          0);
    if (a.v0 == 0 && a.v1 != 0 && u.v0 != 0) {
      REQUIRE(line.slope().has_value());
      CHECK(*line.slope() == a.v2 / a.v1);
    }
    if (line.c_coef != 0) {
      for (QQ b : {QQ(-2), QQ(3, 2)}) {
        QQ w_on = -(QQ(line.a_coef) + QQ(line.b_coef) * b) / QQ(line.c_coef);
        TiltPoint p(b, w_on);
        Slope su = nu_slope(u, p);
        Slope sv = nu_slope(a, p);
        if (su && sv) CHECK(*su == *sv);
      }
    }
  }
}

TEST_CASE("no wall survives for the rank-two bundle class on the coarse lattice") {
  Geometry g = fano_preset(1, 14);
  CharVector v(g, 28, 14, 2);
  for (QQ w : {QQ(1, 2), QQ(1), QQ(5)}) {
    CHECK(walls_through_point(v, TiltPoint(0, w), g, LePotierBound{}).empty());
  }
}

TEST_CASE("discriminant-zero classes admit no walls at defect zero") {
  Geometry g = coarse();
  for (int m = -2; m <= 2; ++m) {
    CharVector v = CharVector::raw(1, m, QQ(m) * m / 2);
    CHECK(walls_through_point(v, TiltPoint(0, 2), g, LePotierBound{}).empty());
  }
  CHECK(walls_through_point(CharVector::raw(2, 2, 1), TiltPoint(0, 1), g,
                            LePotierBound{})
            .empty());
}

TEST_CASE("a small class yields its unique wall with the witness pair") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 2, 0);
  auto walls = walls_through_point(v, TiltPoint(0, 1), g, LePotierBound{});
  REQUIRE(walls.size() == 1);
  CHECK(walls[0].a_coef == -2);
  CHECK(walls[0].b_coef == 1);
  CHECK(walls[0].c_coef == 2);
  CHECK(*walls[0].slope() == QQ(-1, 2));
  REQUIRE(walls[0].witnesses.size() == 2);
  CHECK(walls[0].witnesses[0] == CharVector::raw(0, 1, QQ(-1, 2)));
  CHECK(walls[0].witnesses[1] == CharVector::raw(1, 1, QQ(1, 2)));
  CHECK_FALSE(walls[0].witness_overflow);
  CHECK_FALSE(walls[0].relaxed);

  BoxSpec cert = certified_box(v, TiltPoint(0, 1), g, LePotierBound{});
  auto brute = bruteforce_walls(v, TiltPoint(0, 1), g, LePotierBound{}, cert);
  CHECK(same_walls(walls, brute));

  BoxSpec small = cert;
  small.k2_hi = cert.k2_hi - 1;
  CHECK_THROWS_WITH(
      bruteforce_walls(v, TiltPoint(0, 1), g, LePotierBound{}, small),
      ContainsSubstring("certified"));
}

TEST_CASE("vertical families group onto the b = v1/v0 line") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(-2, -1, 1);
  TiltPoint p(QQ(1, 2), 1);
  auto walls = walls_through_point(v, p, g, LePotierBound{});
  REQUIRE(walls.size() == 1);
  CHECK(walls[0].a_coef == -1);
  CHECK(walls[0].b_coef == 2);
  CHECK(walls[0].c_coef == 0);
  CHECK_FALSE(walls[0].slope().has_value());
  REQUIRE(walls[0].witnesses.size() == 4);
  CHECK(walls[0].witnesses[0] == CharVector::raw(-2, -1, 0));
  CHECK(walls[0].witnesses[1] == CharVector::raw(-2, -1, QQ(1, 2)));
  CHECK(walls[0].witnesses[2] == CharVector::raw(0, 0, QQ(1, 2)));
  CHECK(walls[0].witnesses[3] == CharVector::raw(0, 0, 1));

  auto capped =
      walls_through_point(v, p, g, LePotierBound{}, std::nullopt, 1);
  REQUIRE(capped.size() == 1);
  CHECK(capped[0].witness_overflow);
  REQUIRE(capped[0].witnesses.size() == 1);
  CHECK(capped[0].witnesses[0] == CharVector::raw(-2, -1, 0));

  // nonnegative-rank vertical families carry no candidates
  CHECK(walls_through_point(CharVector::raw(2, 2, 1), TiltPoint(1, 1), g,
                            LePotierBound{})
            .empty());
}

TEST_CASE("enumerator and brute force agree on random instances") {
  Geometry g = coarse();
  const QQ bs[] = {QQ(0), QQ(1, 2), QQ(-1, 2), QQ(1), QQ(-1), QQ(3, 2)};
  int done = 0;
  for (int i = 0; done < 60 && i < 400; ++i) {
    CharVector v = rand_wall_class(4);
    TiltPoint p(bs[testutil::rand_int(0, 5)],
                QQ(0));
    p.w = p.b * p.b / 2 + QQ(testutil::rand_int(1, 8)) / 4;
    BoxSpec cert = certified_box(v, p, g, LePotierBound{});
    if (cert.points() > 20000) continue;
    BoxSpec outer = cert;
    if (!outer.empty()) {
      outer.k0_lo -= 1;
      outer.k0_hi += 1;
      outer.k1_lo -= 1;
      outer.k1_hi += 1;
      outer.k2_lo -= 1;
      outer.k2_hi += 1;
    } else {
      outer = BoxSpec{ZZ(-3), ZZ(3), ZZ(-3), ZZ(3), ZZ(-3), ZZ(3)};
    }
    auto fast = walls_through_point(v, p, g, LePotierBound{});
    auto slow = bruteforce_walls(v, p, g, LePotierBound{}, outer);
    CAPTURE(rat_str(v.v0), rat_str(v.v1), rat_str(v.v2), rat_str(p.b),
            rat_str(p.w));
    CHECK(same_walls(fast, slow));
    for (const Wall& wall : fast) {
      if (v.v0 != 0) {
        CHECK(QQ(wall.a_coef) + QQ(wall.b_coef) * (v.v1 / v.v0) +
                  QQ(wall.c_coef) * (v.v2 / v.v0) ==
              0);
      }
      for (const CharVector& u : wall.witnesses) {
        CHECK(is_pseudo_wall(v, u, g, LePotierBound{}).is_wall);
        if (!wall.witness_overflow) {
          CharVector comp =
              CharVector::raw(v.v0 - u.v0, v.v1 - u.v1, v.v2 - u.v2);
          bool found = false;
          for (const CharVector& other : wall.witnesses)
            if (other == comp) found = true;
          CHECK(found);
        }
      }
    }
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("output is independent of the worker partition") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 4, 0);
  TiltPoint p(0, 1);
  setenv("TILTLAB_THREADS", "1", 1);
  auto serial = walls_through_point(v, p, g, LePotierBound{});
  setenv("TILTLAB_THREADS", "3", 1);
  auto parallel = walls_through_point(v, p, g, LePotierBound{});
  auto band_par =
      walls_in_band(v, 0, QQ(1, 2), QQ(2), g, LePotierBound{});
  setenv("TILTLAB_THREADS", "1", 1);
  auto band_ser =
      walls_in_band(v, 0, QQ(1, 2), QQ(2), g, LePotierBound{});
  unsetenv("TILTLAB_THREADS");
  CHECK(same_walls(serial, parallel));
  CHECK(same_walls(band_ser, band_par));
  CHECK(!serial.empty());
  CHECK(!band_ser.empty());
}

TEST_CASE("band enumeration matches the segment reference scan") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 2, 0);
  auto band =
      walls_in_band(v, 0, QQ(1, 2), QQ(3, 2), g, LePotierBound{});
  REQUIRE(band.size() == 1);
  CHECK(band[0].a_coef == -2);
  CHECK(band[0].b_coef == 1);
  CHECK(band[0].c_coef == 2);
  REQUIRE(band[0].witnesses.size() == 2);

  // crossing point of the returned wall reproduces the point query
  auto at_crossing =
      walls_through_point(v, TiltPoint(0, 1), g, LePotierBound{});
  CHECK(same_walls(band, at_crossing));

  int done = 0;
  for (int i = 0; done < 25 && i < 300; ++i) {
    CharVector rv = rand_wall_class(3);
    QQ b0 = QQ(testutil::rand_int(-2, 2)) / 2;
    if (rv.v1 - b0 * rv.v0 == 0) continue;
    QQ w_lo = b0 * b0 / 2 + QQ(testutil::rand_int(1, 4)) / 4;
    QQ w_hi = w_lo + QQ(testutil::rand_int(1, 6)) / 2;
    std::vector<Wall> got;
    try {
      got = walls_in_band(rv, b0, w_lo, w_hi, g, LePotierBound{});
    } catch (const domain_error&) {
      continue;
    }
    BoxSpec box{ZZ(-10), ZZ(10), ZZ(-10), ZZ(10), ZZ(-14), ZZ(14)};
    auto want = band_reference(rv, b0, w_lo, w_hi, g, LePotierBound{}, box);
    CAPTURE(rat_str(rv.v0), rat_str(rv.v1), rat_str(rv.v2), rat_str(b0),
            rat_str(w_lo), rat_str(w_hi));
    // completeness relative to the scanned box: everything the reference
    // accepts must be reported, on the right line
    for (const auto& [key, wits] : want) {
      const Wall* match = nullptr;
      for (const Wall& wall : got)
        if (wall.a_coef == std::get<0>(key) &&
            wall.b_coef == std::get<1>(key) && wall.c_coef == std::get<2>(key))
          match = &wall;
      REQUIRE(match != nullptr);
      for (const CharVector& u : wits) {
        bool found = false;
        for (const CharVector& w : match->witnesses)
          if (w == u) found = true;
        CHECK(found);
      }
    }
    // soundness: every reported witness passes the transcribed conditions at
    // its crossing point
    for (const Wall& wall : got) {
      for (const CharVector& u : wall.witnesses) {
        QQ A = rv.v2 * u.v1 - rv.v1 * u.v2;
        QQ B = rv.v0 * u.v2 - rv.v2 * u.v0;
        QQ C = u.v0 * rv.v1 - rv.v0 * u.v1;
        QQ w_star;
        if (C == 0) {
          CHECK(A + B * b0 == 0);
          w_star = w_hi;
        } else {
          w_star = -(A + B * b0) / C;
          CHECK(w_lo < w_star);
          CHECK(w_star <= w_hi);
        }
        CHECK(accepts_at(rv, u, b0, w_star, g, LePotierBound{}.defect));
      }
    }
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("bands above every wall come back empty") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 2, 0);
  CHECK(walls_in_band(v, 0, QQ(50), QQ(60), g, LePotierBound{}).empty());
  CHECK_THROWS_WITH(walls_in_band(v, 0, QQ(3, 2), QQ(1, 2), g,
                                  LePotierBound{}),
                    ContainsSubstring("inverted"));
  CHECK_THROWS_WITH(walls_in_band(v, 2, QQ(1), QQ(3), g, LePotierBound{}),
                    ContainsSubstring("exits the region"));
}

TEST_CASE("vertical band walls coincide with the top-of-segment query") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(-2, -1, 1);
  auto band = walls_in_band(v, QQ(1, 2), QQ(1, 4), QQ(1), g, LePotierBound{});
  auto top = walls_through_point(v, TiltPoint(QQ(1, 2), 1), g,
                                 LePotierBound{});
  CHECK(same_walls(band, top));
  CHECK(band.size() == 1);
}

TEST_CASE("relaxed mode requires a box and labels its output") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 2, 0);
  LePotierBound lp(QQ(1, 2));
  TiltPoint p(0, 2);
  CHECK_THROWS_WITH(walls_through_point(v, p, g, lp),
                    ContainsSubstring("explicit search box"));
  BoxSpec box{ZZ(-6), ZZ(6), ZZ(-6), ZZ(6), ZZ(-8), ZZ(8)};
  auto relaxed = walls_through_point(v, p, g, lp, box);
  for (const Wall& w : relaxed) CHECK(w.relaxed);
  auto brute = bruteforce_walls(v, p, g, lp, box);
  CHECK(same_walls(relaxed, brute));
}

TEST_CASE("pseudo-wall screening names the first failing condition") {
  Geometry g = coarse();
  CharVector v = CharVector::raw(1, 2, 0);

  auto walls = walls_through_point(v, TiltPoint(0, 1), g, LePotierBound{});
  REQUIRE(!walls.empty());
  for (const CharVector& u : walls[0].witnesses)
    CHECK(is_pseudo_wall(v, u, g, LePotierBound{}).is_wall);

  auto prop = is_pseudo_wall(v, CharVector::raw(2, 4, 0), g, LePotierBound{});
  CHECK_FALSE(prop.is_wall);
  CHECK(prop.diagnostic == "proportional");

  auto bg = is_pseudo_wall(v, CharVector::raw(1, 0, 1), g, LePotierBound{});
  CHECK_FALSE(bg.is_wall);
  CHECK(bg.diagnostic == "BG violated (candidate)");

  auto comp = is_pseudo_wall(v, CharVector::raw(0, 2, -1), g, LePotierBound{});
  CHECK_FALSE(comp.is_wall);
  CHECK(comp.diagnostic == "BG violated (complement)");

  auto cap = is_pseudo_wall(CharVector::raw(2, 0, -1),
                            CharVector::raw(1, 2, 0), g, LePotierBound{});
  CHECK_FALSE(cap.is_wall);
  CHECK(cap.diagnostic == "discriminant cap exceeded");

  auto miss = is_pseudo_wall(CharVector::raw(1, 1, 0),
                             CharVector::raw(0, 1, 0), g, LePotierBound{});
  CHECK_FALSE(miss.is_wall);
  CHECK(miss.diagnostic == "line misses the region");

  auto degen = is_pseudo_wall(CharVector::raw(0, 1, 0),
                              CharVector::raw(0, 0, 1), g, LePotierBound{});
  CHECK_FALSE(degen.is_wall);
  CHECK(degen.diagnostic == "degenerate line");

  auto dry = is_pseudo_wall(CharVector::raw(1, 0, -8),
                            CharVector::raw(1, 1, -3), g, LePotierBound{});
  CHECK_FALSE(dry.is_wall);
  CHECK(dry.diagnostic == "no admissible point on the wall");
}

TEST_CASE("band walls of one class only meet at the outside projection point") {
  Geometry g = coarse();
  long pairs = 0;
  for (int i = 0; i < 40; ++i) {
    CharVector v = rand_wall_class(4);
    if (v.v0 == 0) continue;
    QQ b0 = QQ(testutil::rand_int(-2, 2));
    QQ w_lo = b0 * b0 / 2 + QQ(1, 4);
    std::vector<Wall> walls;
    try {
      walls = walls_in_band(v, b0, w_lo, w_lo + 4, g, LePotierBound{});
    } catch (const domain_error&) {
      continue;
    }
    if (walls.empty()) continue;
    QQ pb = v.v1 / v.v0, pw = v.v2 / v.v0;
    CHECK_FALSE(region_contains(TiltPoint(pb, pw), LePotierBound{}));
    for (const Wall& wall : walls)
      CHECK(QQ(wall.a_coef) + QQ(wall.b_coef) * pb + QQ(wall.c_coef) * pw ==
            0);
    for (std::size_t a = 0; a < walls.size(); ++a)
      for (std::size_t b2 = a + 1; b2 < walls.size(); ++b2) {
        ZZ det = walls[a].b_coef * walls[b2].c_coef -
                 walls[b2].b_coef * walls[a].c_coef;
        CHECK(det != 0);
        ++pairs;
      }
  }
  CHECK(pairs > 0);
}
