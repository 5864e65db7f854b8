#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <tiltlab/tiltlab.hpp>

namespace {

using namespace tiltlab;

Geometry load_geometry(const std::string& path) {
  return geometry_from_json(parse_json(read_file(path)));
}

TiltPoint parse_point(const std::string& s, const std::string& field) {
  auto parts = split_commas(s);
  if (parts.size() != 2) throw usage_error(field + " needs \"b,w\"");
  return TiltPoint(parse_rat(parts[0], field + ".b"),
                   parse_rat(parts[1], field + ".w"));
}

ZZ parse_int(const std::string& s, const std::string& field) {
  QQ r = parse_rat(s, field);
  if (r.get_den() != 1) throw usage_error(field + " must be an integer");
  return r.get_num();
}

BoxSpec parse_box(const std::string& s) {
  auto parts = split_commas(s);
  if (parts.size() != 6)
    throw usage_error("box needs \"k0lo,k0hi,k1lo,k1hi,k2lo,k2hi\"");
  BoxSpec box;
  box.k0_lo = parse_int(parts[0], "box[0]");
  box.k0_hi = parse_int(parts[1], "box[1]");
  box.k1_lo = parse_int(parts[2], "box[2]");
  box.k1_hi = parse_int(parts[3], "box[3]");
  box.k2_lo = parse_int(parts[4], "box[4]");
  box.k2_hi = parse_int(parts[5], "box[5]");
  return box;
}

bool same_walls(const std::vector<Wall>& a, const std::vector<Wall>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].a_coef != b[i].a_coef || a[i].b_coef != b[i].b_coef ||
        a[i].c_coef != b[i].c_coef)
      return false;
    if (a[i].witnesses != b[i].witnesses) return false;
    if (a[i].witness_overflow != b[i].witness_overflow) return false;
    if (a[i].relaxed != b[i].relaxed) return false;
  }
  return true;
}

void emit(const json& j) { std::cout << canonical_dump(j); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tilt-stability computations on polarized varieties"};
  app.require_subcommand(1);

  // geometry validate
  auto* geometry = app.add_subcommand("geometry", "Geometry file operations");
  geometry->require_subcommand(1);
  auto* validate =
      geometry->add_subcommand("validate", "Validate and re-emit canonically");
  std::string validate_path;
  validate->add_option("file", validate_path, "Geometry JSON file")
      ->required();
  validate->callback([&]() {
    emit(geometry_to_json(load_geometry(validate_path)));
  });

  // fano
  auto* fano = app.add_subcommand("fano", "Emit a Fano threefold preset");
  int fano_index = 0;
  std::string fano_degree;
  fano->add_option("--index", fano_index, "Fano index 1..4")->required();
  fano->add_option("--degree", fano_degree, "degree d (rational)")->required();
  fano->callback([&]() {
    emit(geometry_to_json(
        fano_preset(fano_index, parse_rat(fano_degree, "degree"))));
  });

  // chi
  auto* chi = app.add_subcommand("chi", "Euler characteristic of a class");
  std::string chi_geom, chi_class;
  chi->add_option("--geom", chi_geom, "Geometry JSON file")->required();
  chi->add_option("--class", chi_class, "c0,c1,c2,c3[,g1]")->required();
  chi->callback([&]() {
    Geometry g = load_geometry(chi_geom);
    CharVector v = class_from_spec(chi_class, g);
    json out;
    out["chi"] = rat_str(euler_char(v, g));
    emit(out);
  });

  // walls
  auto* walls = app.add_subcommand("walls", "Numerical walls for a class");
  std::string walls_geom, walls_class, walls_at, walls_band, walls_box;
  bool walls_oracle = false, walls_csv = false;
  std::size_t walls_cap = 64;
  walls->add_option("--geom", walls_geom, "Geometry JSON file")->required();
  walls->add_option("--class", walls_class, "c0,c1,c2")->required();
  walls->add_option("--at", walls_at, "point b,w");
  walls->add_option("--band", walls_band, "segment b0,wlo,whi");
  walls->add_flag("--oracle", walls_oracle,
                  "cross-check against the brute-force scan");
  walls->add_option("--box", walls_box,
                    "lattice index box k0lo,k0hi,k1lo,k1hi,k2lo,k2hi");
  walls->add_option("--cap", walls_cap, "witness cap per wall");
  walls->add_flag("--csv", walls_csv, "emit CSV instead of JSON");
  walls->callback([&]() {
    if (walls_at.empty() == walls_band.empty())
      throw usage_error("exactly one of --at and --band is required");
    if (walls_oracle && walls_at.empty())
      throw usage_error("--oracle needs --at");
    Geometry g = load_geometry(walls_geom);
    CharVector v = class_from_spec(walls_class, g);
    LePotierBound lp(g.bg_defect);
    std::optional<BoxSpec> box;
    if (!walls_box.empty()) box = parse_box(walls_box);
    std::vector<Wall> found;
    json out;
    if (!walls_at.empty()) {
      TiltPoint p = parse_point(walls_at, "--at");
      found = walls_through_point(v, p, g, lp, box, walls_cap);
      out = walls_to_json(v, found);
      out["point"] = {{"b", rat_str(p.b)}, {"w", rat_str(p.w)}};
      if (walls_oracle) {
        BoxSpec obox = box ? *box : certified_box(v, p, g, lp);
        auto brute = bruteforce_walls(v, p, g, lp, obox, walls_cap);
        invariant(same_walls(found, brute), "wall oracle disagreed");
        out["oracle_agrees"] = true;
      }
    } else {
      auto parts = split_commas(walls_band);
      if (parts.size() != 3)
        throw usage_error("--band needs \"b0,wlo,whi\"");
      QQ b0 = parse_rat(parts[0], "--band.b");
      QQ wlo = parse_rat(parts[1], "--band.wlo");
      QQ whi = parse_rat(parts[2], "--band.whi");
      found = walls_in_band(v, b0, wlo, whi, g, lp, box, walls_cap);
      out = walls_to_json(v, found);
      out["band"] = {
          {"b", rat_str(b0)}, {"w_lo", rat_str(wlo)}, {"w_hi", rat_str(whi)}};
    }
    if (walls_csv)
      std::cout << walls_to_csv(found);
    else
      emit(out);
  });

  // bmt
  auto* bmt = app.add_subcommand("bmt", "Quadratic form at a point");
  std::string bmt_geom, bmt_class, bmt_point;
  bmt->add_option("--geom", bmt_geom, "Geometry JSON file")->required();
  bmt->add_option("--class", bmt_class, "c0,c1,c2,c3[,g1]")->required();
  bmt->add_option("--point", bmt_point, "point b,w")->required();
  bmt->callback([&]() {
    Geometry g = load_geometry(bmt_geom);
    CharVector v = class_from_spec(bmt_class, g);
    TiltPoint p = parse_point(bmt_point, "--point");
    QQ q = q_form(v, p, g);
    json out;
    out["point"] = {{"b", rat_str(p.b)}, {"w", rat_str(p.w)}};
    out["q"] = rat_str(q);
    out["sign"] = sgn(q);
    out["conj1_margin"] = rat_str(conj1_check(v, p, g));
    emit(out);
  });

  // bmt-grid
  auto* grid = app.add_subcommand("bmt-grid", "Sign of Q over a grid (CSV)");
  std::string grid_geom, grid_class, grid_rect, grid_step;
  grid->add_option("--geom", grid_geom, "Geometry JSON file")->required();
  grid->add_option("--class", grid_class, "c0,c1,c2,c3[,g1]")->required();
  grid->add_option("--rect", grid_rect, "blo,bhi,wlo,whi")->required();
  grid->add_option("--step", grid_step, "sb,sw")->required();
  grid->callback([&]() {
    Geometry g = load_geometry(grid_geom);
    CharVector v = class_from_spec(grid_class, g);
    auto rect = split_commas(grid_rect);
    if (rect.size() != 4) throw usage_error("--rect needs \"blo,bhi,wlo,whi\"");
    auto step = split_commas(grid_step);
    if (step.size() != 2) throw usage_error("--step needs \"sb,sw\"");
    auto rows = q_region_sample(v, g, parse_rat(rect[0], "--rect.blo"),
                                parse_rat(rect[1], "--rect.bhi"),
                                parse_rat(rect[2], "--rect.wlo"),
                                parse_rat(rect[3], "--rect.whi"),
                                parse_rat(step[0], "--step.sb"),
                                parse_rat(step[1], "--step.sw"));
    std::cout << grid_to_csv(rows);
  });

  // conj3
  auto* conj3 = app.add_subcommand("conj3", "Sharpness sign at b-bar");
  std::string conj3_geom, conj3_class;
  conj3->add_option("--geom", conj3_geom, "Geometry JSON file")->required();
  conj3->add_option("--class", conj3_class, "c0,c1,c2,c3[,g1]")->required();
  conj3->callback([&]() {
    Geometry g = load_geometry(conj3_geom);
    CharVector v = class_from_spec(conj3_class, g);
    require(v.v3.has_value(), "missing third component");
    QuadraticNumber bb = bbar(v);
    auto t = twisted<QuadraticNumber>(v, bb);
    QuadraticNumber margin = QuadraticNumber(v.g1_or_default(g)) -
                             bb * QuadraticNumber(g.gamma_ratio() * v.v0) -
                             t.t3.value();
    json out;
    out["sign"] = conj3_check(v, g);
    out["margin"] = {{"p", rat_str(margin.p())},
                     {"q", rat_str(margin.q())},
                     {"rad", rat_str(margin.rad())}};
    emit(out);
  });

  // stab-check
  auto* stab = app.add_subcommand("stab-check", "Support interval in K");
  std::string stab_a, stab_alpha, stab_beta;
  std::string stab_prec = "1/1048576";
  stab->add_option("--a", stab_a, "a > 0")->required();
  stab->add_option("--alpha", stab_alpha, "alpha")->required();
  stab->add_option("--beta", stab_beta, "beta")->required();
  stab->add_option("--precision", stab_prec, "endpoint enclosure width");
  stab->callback([&]() {
    QQ a = parse_rat(stab_a, "--a");
    QQ alpha = parse_rat(stab_alpha, "--alpha");
    QQ beta = parse_rat(stab_beta, "--beta");
    SupportInterval si =
        support_interval(a, alpha, beta, parse_rat(stab_prec, "--precision"));
    json out;
    if (si.is_empty)
      out["interval"] = "empty";
    else
      out["interval"] = {rat_str(si.k_lo.lo), rat_str(si.k_hi.hi)};
    out["nonempty_criterion"] = alpha > a * a / 6 + QQ(abs(beta)) * a / 2;
    emit(out);
  });

  // hilb
  auto* hilb = app.add_subcommand("hilb", "Hilbert-polynomial invariants");
  std::string hilb_base, hilb_class, hilb_s = "0", hilb_t = "0";
  hilb->add_option("--base", hilb_base, "structure-sheaf polynomial c0,c1,...")
      ->required();
  hilb->add_option("--class", hilb_class, "class polynomial c0,c1,...")
      ->required();
  hilb->add_option("--s", hilb_s, "slope parameter");
  hilb->add_option("--t", hilb_t, "charge parameter");
  hilb->callback([&]() {
    HilbertData base(poly_from_spec(hilb_base, "--base"));
    SheafInvariants inv = rk_deg_c2(poly_from_spec(hilb_class, "--class"), base);
    auto tau = tau_charge(inv, parse_rat(hilb_s, "--s"),
                          parse_rat(hilb_t, "--t"));
    json out;
    out["rk"] = rat_str(inv.rk);
    out["deg"] = rat_str(inv.deg);
    out["c2"] = rat_str(inv.c2);
    out["tau"] = {rat_str(tau.first), rat_str(tau.second)};
    emit(out);
  });

  // range
  auto* range = app.add_subcommand("range", "Restricted-range minimum w");
  std::string range_b;
  range->add_option("--b", range_b, "slope parameter b")->required();
  range->callback([&]() {
    QQ b = parse_rat(range_b, "--b");
    json out;
    out["b"] = rat_str(b);
    out["min_w"] = rat_str(restricted_range_min_w(b));
    emit(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
