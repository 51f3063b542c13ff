#pragma once

#include <complex>
#include <string>

#include <json.hpp>
#include "resurgent/error.hpp"
#include "resurgent/numeric/cycle.hpp"
#include "resurgent/numeric/laplace.hpp"
#include "resurgent/numeric/pade.hpp"
#include "resurgent/numeric/value.hpp"

namespace resurgent::numeric {

using ordered_json = nlohmann::ordered_json;

inline ordered_json complex_json(std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::ParseError, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ordered_json to_json(const ContourPath& path) {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const auto& z : path.nodes) j["nodes"].push_back(complex_json(z));
  if (path.tail)
    j["tail"] = ordered_json{{"dir", complex_json(*path.tail)}};
  else
    j["tail"] = nullptr;
  return j;
}

inline ContourPath contour_from_json(const ordered_json& j) {
  try {
    ContourPath path;
    for (const auto& z : j.at("nodes")) path.nodes.push_back(complex_from_json(z));
    if (j.contains("tail") && !j["tail"].is_null()) path.tail = complex_from_json(j["tail"].at("dir"));
    path.validate();
    return path;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("contour JSON: ") + e.what());
  }
}

inline ContourPath parse_contour(const std::string& text) {
  try {
    return contour_from_json(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("contour JSON: ") + e.what());
  }
}

inline ordered_json to_json(const NumericValue& v) {
  return ordered_json{{"value", complex_json(v.value)}, {"err", v.err}};
}

inline ordered_json to_json(const CycleResult& r) {
  return ordered_json{{"value", complex_json(r.value.value)}, {"err", r.value.err}, {"radius_warning", r.radius_warning}};
}

inline ordered_json to_json(const StokesReport& r) {
  return ordered_json{{"value", complex_json(r.difference.value)},
                      {"err", r.difference.err},
                      {"closed_form", complex_json(r.closed_form)},
                      {"relative_deviation", r.relative_deviation}};
}

inline ordered_json to_json(const SingularityReport& r) {
  ordered_json j;
  j["q"] = ordered_json::array();
  for (const auto& z : r.q) j["q"].push_back(complex_json(z));
  j["p"] = ordered_json::array();
  for (const auto& z : r.p) j["p"].push_back(complex_json(z));
  j["poles"] = ordered_json::array();
  for (const auto& pl : r.poles)
    j["poles"].push_back(ordered_json{{"location", complex_json(pl.location)},
                                      {"residue", complex_json(pl.residue)},
                                      {"confidence", pl.confidence}});
  j["method"] = ordered_json{{"name", r.method},
                             {"L", r.L},
                             {"M", r.M},
                             {"requested_M", r.requested_M},
                             {"condition", r.condition},
                             {"scale", r.scale}};
  return j;
}

}  // namespace resurgent::numeric
