#pragma once

#include <json.hpp>

#include <string>

#include "resurgent/series.hpp"

namespace resurgent {

using ordered_json = nlohmann::ordered_json;

// Canonical form: keys in fixed order, terms in canonical index order,
// numerator/denominator as decimal strings.
inline ordered_json to_json(const TruncatedSeries& f) {
  ordered_json j;
  j["kind"] = std::string(to_string(f.kind()));
  j["ndof"] = f.ndof();
  j["t_cap"] = f.t_cap();
  j["qp_cap"] = f.qp_cap();
  ordered_json terms = ordered_json::array();
  for (const auto& [idx, c] : f.terms()) {
    ordered_json t;
    t["k"] = idx.k;
    t["alpha"] = idx.alpha;
    t["beta"] = idx.beta;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline std::string serialize(const TruncatedSeries& f) { return to_json(f).dump() + "\n"; }

inline TruncatedSeries series_from_json(const ordered_json& j) {
  try {
    const auto kind_str = j.at("kind").get<std::string>();
    SeriesKind kind;
    if (kind_str == "t")
      kind = SeriesKind::T;
    else if (kind_str == "xi")
      kind = SeriesKind::Xi;
    else
      fail(ErrorKind::ParseError, "kind must be \"t\" or \"xi\"");
    const auto ndof = j.at("ndof").get<std::size_t>();
    const Caps caps{j.at("t_cap").get<int>(), j.at("qp_cap").get<int>()};
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      MultiIndex idx{t.at("k").get<Exponent>(), t.at("alpha").get<ExponentVector>(),
                     t.at("beta").get<ExponentVector>()};
      terms.emplace_back(std::move(idx), make_rational(t.at("num").get<std::string>(), t.at("den").get<std::string>()));
    }
    return make_series(terms, kind, ndof, caps);
  } catch (const ordered_json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

inline TruncatedSeries parse_series(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  return series_from_json(j);
}

}  // namespace resurgent
