#pragma once

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bmt.hpp"
#include "walls.hpp"

namespace tiltlab {

using json = nlohmann::json;

// Canonical emission: sorted keys (nlohmann objects are ordered maps),
// two-space indent, trailing newline.  All rationals are "p/q" strings.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw usage_error("malformed JSON");
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Geometry geometry_from_json(const json& j) {
  if (!j.is_object()) throw usage_error("geometry must be a JSON object");
  static const std::vector<std::string> known = {
      "bg_defect", "chi_o",   "dim",  "gamma_dot_h", "h_top",
      "k_coeff",   "lattice", "name", "td2_dot_h"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw usage_error("unknown field '" + it.key() + "'");
  auto field = [&](const std::string& key) -> const json& {
    if (!j.contains(key)) throw usage_error("missing field '" + key + "'");
    return j.at(key);
  };
  auto rat = [&](const std::string& key) {
    const json& f = field(key);
    if (!f.is_string())
      throw usage_error("field '" + key + "' must be a rational string");
    return parse_rat(f.get<std::string>(), key);
  };
  Geometry g;
  if (!field("name").is_string())
    throw usage_error("field 'name' must be a string");
  g.name = j.at("name").get<std::string>();
  if (!field("dim").is_number_integer())
    throw usage_error("field 'dim' must be an integer");
  g.dim = j.at("dim").get<int>();
  g.h_top = rat("h_top");
  g.td2_dot_h = rat("td2_dot_h");
  g.chi_o = rat("chi_o");
  g.k_coeff = rat("k_coeff");
  g.bg_defect = rat("bg_defect");
  g.gamma_dot_h = rat("gamma_dot_h");
  const json& lat = field("lattice");
  if (!lat.is_array() || lat.size() != 4)
    throw usage_error("field 'lattice' must be an array of 4 rational strings");
  for (int i = 0; i < 4; ++i) {
    if (!lat[i].is_string())
      throw usage_error("field 'lattice' must be an array of 4 rational strings");
    g.lattice[i] =
        parse_rat(lat[i].get<std::string>(), "lattice[" + std::to_string(i) + "]");
  }
  g.validate();
  return g;
}

inline json geometry_to_json(const Geometry& g) {
  json j;
  j["name"] = g.name;
  j["dim"] = g.dim;
  j["h_top"] = rat_str(g.h_top);
  j["td2_dot_h"] = rat_str(g.td2_dot_h);
  j["chi_o"] = rat_str(g.chi_o);
  j["k_coeff"] = rat_str(g.k_coeff);
  j["bg_defect"] = rat_str(g.bg_defect);
  j["gamma_dot_h"] = rat_str(g.gamma_dot_h);
  j["lattice"] = json::array({rat_str(g.lattice[0]), rat_str(g.lattice[1]),
                              rat_str(g.lattice[2]), rat_str(g.lattice[3])});
  return j;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// "c0,c1,c2[,c3[,g1]]" with each component a rational string.
inline CharVector class_from_spec(const std::string& s, const Geometry& geom,
                                  bool relaxed = false) {
  auto parts = split_commas(s);
  if (parts.size() < 3 || parts.size() > 5)
    throw usage_error("class needs 3 to 5 comma-separated components");
  std::vector<QQ> c;
  for (std::size_t i = 0; i < parts.size(); ++i)
    c.push_back(parse_rat(parts[i], "class[" + std::to_string(i) + "]"));
  std::optional<QQ> c3, gamma1;
  if (c.size() >= 4) c3 = c[3];
  if (c.size() == 5) gamma1 = c[4];
  return CharVector(geom, c[0], c[1], c[2], c3, gamma1, relaxed);
}

inline std::vector<QQ> poly_from_spec(const std::string& s,
                                      const std::string& field) {
  std::vector<QQ> c;
  auto parts = split_commas(s);
  for (std::size_t i = 0; i < parts.size(); ++i)
    c.push_back(parse_rat(parts[i], field + "[" + std::to_string(i) + "]"));
  return c;
}

inline json class_to_json(const CharVector& v) {
  json a = json::array({rat_str(v.v0), rat_str(v.v1), rat_str(v.v2)});
  if (v.v3) {
    a.push_back(rat_str(*v.v3));
    if (v.g1) a.push_back(rat_str(*v.g1));
  }
  return a;
}

inline json wall_to_json(const Wall& w) {
  json jw;
  jw["line"] = json::array(
      {w.a_coef.get_str(), w.b_coef.get_str(), w.c_coef.get_str()});
  Slope s = w.slope();
  jw["slope"] = s ? rat_str(*s) : "inf";
  json wits = json::array();
  for (const CharVector& u : w.witnesses) wits.push_back(class_to_json(u));
  jw["witnesses"] = wits;
  if (w.witness_overflow) jw["witness_overflow"] = true;
  if (w.relaxed) jw["relaxed"] = true;
  return jw;
}

inline json walls_to_json(const CharVector& v, const std::vector<Wall>& walls) {
  json j;
  j["class"] = class_to_json(v);
  json arr = json::array();
  for (const Wall& w : walls) arr.push_back(wall_to_json(w));
  j["walls"] = arr;
  return j;
}

inline std::string walls_to_csv(const std::vector<Wall>& walls) {
  std::string out = "a,b,c,slope,slope_decimal,witness_count\n";
  for (const Wall& w : walls) {
    Slope s = w.slope();
    out += w.a_coef.get_str() + "," + w.b_coef.get_str() + "," +
           w.c_coef.get_str() + "," + (s ? rat_str(*s) : "inf") + "," +
           (s ? rat_decimal(*s) : "inf") + "," +
           std::to_string(w.witnesses.size()) + "\n";
  }
  return out;
}

inline std::string grid_to_csv(const std::vector<QGridRow>& rows) {
  std::string out = "b,w,sign,q_num,q_den\n";
  for (const QGridRow& r : rows) {
    out += rat_str(r.b) + "," + rat_str(r.w) + "," + std::to_string(r.sign) +
           "," + r.q.get_num().get_str() + "," + r.q.get_den().get_str() +
           "\n";
  }
  return out;
}

}  // namespace tiltlab
