#pragma once

// JSON forms of strata, configurations and results.
//
// Configuration schema:
//   {"blocks": [{"kind": "I" | "II" | "III",
//                "figure_eights": [{"a": int, "genus": int, "interior": [int]}],
//                "pair_of_holes": [{"b": int, "genus": int, "interior": [int]}],
//                "orientation": "cylinder_first" | "cylinder_last"}]}
// "a", "b" default to 0, "genus" to 1, "interior" to []; "orientation" is
// optional and only allowed on type II blocks.

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "sv/configurations.hpp"
#include "sv/errors.hpp"
#include "sv/integral_oracles.hpp"
#include "sv/rational.hpp"
#include "sv/strata.hpp"

namespace sv {

using Json = nlohmann::ordered_json;

inline Json to_json(const Stratum& s) {
  return Json{{"orders", s.orders()}, {"genus", s.genus()}, {"dim", s.dim_complex()}};
}

inline Json to_json(const BoundaryStratum& b) {
  Json comps = Json::array();
  for (const auto& c : b.components())
    comps.push_back(Json{{"orders", c.orders}, {"genus", c.genus}, {"dim", c.dim_complex()}});
  return Json{{"components", comps}, {"n", b.n()}};
}

inline std::string_view to_string(Orientation o) {
  return o == Orientation::CylinderFirst ? "cylinder_first" : "cylinder_last";
}

inline Orientation parse_orientation(std::string_view s) {
  if (s == "cylinder_first") return Orientation::CylinderFirst;
  if (s == "cylinder_last") return Orientation::CylinderLast;
  throw ParseError("unknown orientation '" + std::string(s) + "'");
}

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.contains(it.key())) throw ParseError("unexpected key '" + it.key() + "' in " + where);
}

inline int get_int(const Json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer in " + where);
  return v.get<int>();
}

inline SurfacePiece piece_from_json(const Json& j, const char* order_key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  reject_unknown_keys(j, {order_key, "genus", "interior"}, where);
  SurfacePiece p;
  p.base_order = get_int(j, order_key, 0, where);
  p.genus = get_int(j, "genus", 1, where);
  if (j.contains("interior")) {
    const Json& in = j.at("interior");
    if (!in.is_array()) throw ParseError("'interior' must be an array in " + where);
    for (const auto& d : in) {
      if (!d.is_number_integer()) throw ParseError("interior orders must be integers in " + where);
      p.interior.push_back(d.get<int>());
    }
  }
  return p;
}

inline Json piece_to_json(const SurfacePiece& p, const char* order_key) {
  return Json{{order_key, p.base_order}, {"genus", p.genus}, {"interior", p.interior}};
}

}  // namespace detail

inline Configuration configuration_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.at("blocks").is_array())
    throw ParseError("configuration must be an object with a 'blocks' array");
  detail::reject_unknown_keys(j, {"blocks"}, "configuration");
  std::vector<Block> blocks;
  std::size_t i = 0;
  for (const auto& jb : j.at("blocks")) {
    const std::string where = "block " + std::to_string(i++);
    if (!jb.is_object()) throw ParseError(where + " must be an object");
    detail::reject_unknown_keys(jb, {"kind", "figure_eights", "pair_of_holes", "orientation"}, where);
    if (!jb.contains("kind") || !jb.at("kind").is_string()) throw ParseError(where + " needs a string 'kind'");
    Block b;
    b.kind = parse_block_kind(jb.at("kind").get<std::string>());
    for (const char* key : {"figure_eights", "pair_of_holes"}) {
      if (!jb.contains(key)) continue;
      if (!jb.at(key).is_array()) throw ParseError(std::string("'") + key + "' must be an array in " + where);
      const bool f8 = std::string_view(key) == "figure_eights";
      for (const auto& jp : jb.at(key)) {
        auto piece = detail::piece_from_json(jp, f8 ? "a" : "b", where + " " + key);
        (f8 ? b.figure_eights : b.pair_of_holes).push_back(std::move(piece));
      }
    }
    if (jb.contains("orientation")) {
      if (!jb.at("orientation").is_string()) throw ParseError("'orientation' must be a string in " + where);
      b.orientation = parse_orientation(jb.at("orientation").get<std::string>());
    }
    blocks.push_back(std::move(b));
  }
  return Configuration(std::move(blocks));
}

inline Configuration configuration_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return configuration_from_json(j);
}

inline Configuration configuration_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return configuration_from_string(ss.str());
}

inline Json to_json(const Configuration& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks()) {
    Json jb{{"kind", to_string(b.kind)}};
    Json f8 = Json::array(), poh = Json::array();
    for (const auto& p : b.figure_eights) f8.push_back(detail::piece_to_json(p, "a"));
    for (const auto& p : b.pair_of_holes) poh.push_back(detail::piece_to_json(p, "b"));
    jb["figure_eights"] = f8;
    jb["pair_of_holes"] = poh;
    if (b.orientation) jb["orientation"] = to_string(*b.orientation);
    blocks.push_back(jb);
  }
  return Json{{"blocks", blocks}};
}

inline Json to_json(const ConfigurationAnalysis& a) {
  return Json{{"alpha", to_json(a.alpha)},
              {"alpha_prime", to_json(a.alpha_prime)},
              {"q", a.q},
              {"n", a.n},
              {"newborn_orders", a.newborn_orders},
              {"mean_area_conf", to_string(a.mean_area_conf)},
              {"first_cylinder_block", a.first_cylinder_block}};
}

inline Json to_json(const McEstimate& m) {
  return Json{{"value", m.value}, {"std_error", m.std_error}, {"samples", m.samples}, {"seed", m.seed}};
}

inline Json to_json(const OracleComparison& c) {
  const auto& ip = c.params;
  Json params{{"family", to_string(ip.family)}};
  if (ip.family == IntegralFamily::Cusp) {
    params["q"] = ip.q;
    params["p"] = to_string(ip.p);
    params["eps"] = ip.eps;
  } else {
    params["n"] = ip.n;
    params["q"] = ip.q;
    if (ip.family == IntegralFamily::Jp) params["p"] = to_string(ip.p);
    if (ip.family != IntegralFamily::Jp) params["x"] = to_string(ip.x);
    if (ip.family == IntegralFamily::Corr) params["x1"] = to_string(ip.x1);
  }
  Json j{{"params", params}, {"method", to_string(c.method)}, {"numeric", c.numeric}};
  if (c.mc) j["mc"] = to_json(*c.mc);
  if (c.polar) j["numeric_polar"] = *c.polar;
  j["closed_form"] = c.closed_form;
  j["closed_form_exact"] = c.closed_form_exact;
  j["relative_error"] = c.relative_error;
  if (c.z_score) j["z_score"] = *c.z_score;
  j["rel_tol"] = c.rel_tol;
  j["passed"] = c.passed;
  return j;
}

}  // namespace sv
