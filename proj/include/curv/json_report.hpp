#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "curv/curvature.hpp"
#include "curv/graph.hpp"
#include "curv/rational.hpp"
#include "curv/sharpness.hpp"

namespace curv {

using json = nlohmann::ordered_json;

// Rationals serialize as exact numerator/denominator strings plus a decimal
// approximation that is for display only.
inline json rational_json(const Rational& r) {
  return json{{"num", rational_num(r).str()},
              {"den", rational_den(r).str()},
              {"approx", approx_string(r)}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  return parse_fraction(j.at("num").get<std::string>() + "/" +
                        j.at("den").get<std::string>());
}

inline json coupling_json(const Graph& g, const BlowupInstance& inst,
                          const IntegerCoupling& coupling) {
  json rows = json::array(), cols = json::array();
  for (int u : inst.left_sites) rows.push_back(g.label(u));
  for (int v : inst.right_sites) cols.push_back(g.label(v));
  return json{{"from", rows},
              {"to", cols},
              {"flow", coupling.flow},
              {"cost", coupling.cost}};
}

inline json curvature_report_json(const Graph& g, const CurvatureReport& rep) {
  json j;
  j["u"] = g.label(rep.inst.swapped ? rep.inst.y : rep.inst.x);
  j["v"] = g.label(rep.inst.swapped ? rep.inst.x : rep.inst.y);
  j["kappa"] = rational_json(rep.kappa);
  j["upper_bound"] = rational_json(rep.upper_bound);
  j["bound_attained"] = rep.bound_attained;
  j["lcm"] = rep.inst.lcm;
  j["cx"] = rep.inst.cx;
  j["cy"] = rep.inst.cy;
  j["coupling"] = coupling_json(g, rep.inst, rep.coupling);
  return j;
}

inline json all_curvatures_json(const Graph& g,
                                const std::map<Edge, Rational>& kappas) {
  json edges = json::array();
  for (const auto& [e, kappa] : kappas) {
    edges.push_back(json{{"u", g.label(e.first)},
                         {"v", g.label(e.second)},
                         {"kappa", rational_json(kappa)}});
  }
  return json{{"vertices", g.vertex_count()},
              {"edges", edges}};
}

inline json sharpness_json(const Graph& g, const SharpnessReport& rep) {
  json j;
  j["diameter"] = rep.diameter;
  json kmin = rational_json(rep.kappa_min);
  kmin["witness_edge"] = json::array(
      {g.label(rep.kappa_witness.first), g.label(rep.kappa_witness.second)});
  j["kappa_min"] = kmin;
  j["sharp"] = rep.sharp;
  json poles = json::array();
  for (auto [u, v] : rep.pole_pairs) {
    poles.push_back(json::array({g.label(u), g.label(v)}));
  }
  j["poles"] = poles;
  json checks = json::object();
  for (const auto& [name, result] : rep.checks) {
    checks[name] = json{{"pass", result.pass}, {"witnesses", result.witnesses}};
  }
  j["checks"] = checks;
  if (rep.structure) {
    j["structure"] =
        json{{"r", rep.structure->first}, {"t", rep.structure->second}};
  }
  return j;
}

}  // namespace curv
