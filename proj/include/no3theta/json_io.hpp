#pragma once

// JSON wire formats. The CLI and the HTTP service both go through these
// functions and dump(), so equal inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "no3theta/analysis.hpp"
#include "no3theta/angle.hpp"
#include "no3theta/constructions.hpp"
#include "no3theta/grid.hpp"
#include "no3theta/solver.hpp"

namespace no3theta::io {

using json = nlohmann::ordered_json;

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json to_json(const Point& p) { return json::array({p.x, p.y}); }

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ParseError("point must be a two-element integer array [x, y], got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

inline json to_json(const Construction& c) {
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back(to_json(p));
  return json{{"n", c.dim().n()}, {"points", std::move(pts)}};
}

/// {"n": int, "points": [[x, y], ...]}; points in any order, 1-based.
inline Construction construction_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("construction must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("construction needs an integer 'n'");
  if (!j.contains("points") || !j["points"].is_array()) throw ParseError("construction needs a 'points' array");
  const GridDim dim(j["n"].get<int>());
  std::vector<Point> pts;
  for (const auto& p : j["points"]) pts.push_back(point_from_json(p));
  return Construction(dim, std::move(pts));
}

inline Construction parse_construction(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return construction_from_json(j);
}

inline json to_json(const ForbiddenTriple& t) {
  return json{{"a", to_json(t.a)}, {"vertex", to_json(t.vertex)}, {"c", to_json(t.c)}};
}

inline json verify_json(const Construction& c, const AngleSpec& theta, const VerifyResult& r) {
  json violations = json::array();
  for (const auto& t : r.violations) violations.push_back(to_json(t));
  return json{{"n", c.dim().n()},           {"theta", theta.to_string()},
              {"size", c.size()},           {"peaceful", r.peaceful()},
              {"violations", violations},   {"truncated", r.truncated}};
}

inline json blocked_json(const Construction& c, const AngleSpec& theta, const std::vector<BlockedCell>& cells) {
  json out = json::array();
  for (const auto& b : cells) {
    out.push_back(json{{"cell", to_json(b.cell)},
                       {"witness", to_json(b.witness)},
                       {"class", to_string(classify_triple(b.witness))}});
  }
  return json{{"n", c.dim().n()}, {"theta", theta.to_string()}, {"blocked", std::move(out)}};
}

inline json bounds_json(const AngleSpec& theta, GridDim dim) {
  const auto lb = lower_bound(theta, dim);
  const auto ub = upper_bound(theta, dim);
  json terms = json::array();
  for (const auto& t : ub.terms) {
    json term{{"name", t.name}, {"value", nullptr}, {"external", t.external}, {"informational", t.informational}};
    if (t.value) term["value"] = *t.value;
    if (!t.reason.empty()) term["reason"] = t.reason;
    terms.push_back(std::move(term));
  }
  json j{{"n", dim.n()}, {"theta", theta.to_string()}, {"lower", nullptr}, {"upper", ub.value},
         {"formula", ub.formula}, {"external", ub.external}};
  if (lb.value) j["lower"] = *lb.value;
  j["lower_note"] = lb.note;
  j["terms"] = std::move(terms);
  return j;
}

inline json witness_json(const Witness& w) {
  json j = to_json(w.construction());
  j["vertex"] = to_json(w.points[0]);
  j["triple"] = to_json(w.triple);
  j["from_formula"] = w.from_formula;
  return j;
}

inline json buckets_json(const Slope& slope, GridDim dim) {
  const SlopeBucketIndex index(dim, slope);
  json buckets = json::array();
  for (const auto& b : index.buckets()) {
    json pts = json::array();
    for (const auto& p : b) pts.push_back(to_json(p));
    buckets.push_back(std::move(pts));
  }
  json j{{"n", dim.n()}, {"slope", slope.to_string()}, {"count", index.count()}, {"formula", nullptr},
         {"formula_match", nullptr}};
  try {
    const long long f = count_buckets(slope, dim);
    j["formula"] = f;
    j["formula_match"] = f == index.count();
  } catch (const UnsupportedParameter& e) {
    j["formula_note"] = e.what();
  }
  j["buckets"] = std::move(buckets);
  return j;
}

inline json solve_json(const AngleSpec& theta, const SolveReport& r) {
  json j{{"n", r.best.dim().n()},
         {"theta", theta.to_string()},
         {"mode", to_string(r.mode)},
         {"size", r.size},
         {"optimal", r.optimal},
         {"lex_least", r.lex_least},
         {"best", to_json(r.best)},
         {"nodes_explored", r.nodes_explored},
         {"elapsed_ms", r.elapsed.count()},
         {"seed", r.seed},
         {"bounds", json{{"lower", nullptr}, {"upper", r.upper}, {"formula", r.upper_formula}}},
         {"bound_exceeded", r.bound_exceeded}};
  if (r.lower) j["bounds"]["lower"] = *r.lower;
  if (!r.stop_reason.empty()) j["stop_reason"] = r.stop_reason;
  return j;
}

inline json error_json(const std::string& code, const std::string& message) {
  return json{{"error", code}, {"message", message}};
}

}  // namespace no3theta::io
