#pragma once

// Canonical JSON for terms and formal sums. Terms are emitted in canonical
// key order and coefficients as "num/den" strings, so dump() output is
// byte-stable across runs and platforms.

#include "bamboo/core.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace bamboo {

using Json = nlohmann::json;

inline const char* omega_kind_name(OmegaKind k) { return k == OmegaKind::Irr ? "irr" : "sep_off"; }

inline OmegaKind omega_kind_from_name(const std::string& s) {
  if (s == "irr") return OmegaKind::Irr;
  if (s == "sep_off") return OmegaKind::SepOff;
  throw std::invalid_argument("unknown omega kind: " + s);
}

inline Json to_json(const Term& t) {
  Json j;
  j["legs"] = {t.bamboo.left_leg, t.bamboo.right_leg, t.bamboo.extra_leg};
  Json vs = Json::array();
  for (const auto& v : t.bamboo.vertices) {
    Json x = {v.genus, v.left_psi, v.right_psi};
    x.push_back(v.extra_psi ? Json(*v.extra_psi) : Json(nullptr));
    vs.push_back(x);
  }
  j["vertices"] = vs;
  if (t.omega)
    j["omega"] = {{"kind", omega_kind_name(t.omega->kind)}, {"h", t.omega->h}, {"vertex", t.omega->vertex}};
  else
    j["omega"] = nullptr;
  return j;
}

inline Term term_from_json(const Json& j) {
  Bamboo b;
  const auto& legs = j.at("legs");
  if (!legs.is_array() || legs.size() != 3) throw std::invalid_argument("term json: legs must have three entries");
  b.left_leg = legs[0].get<int>();
  b.right_leg = legs[1].get<int>();
  b.extra_leg = legs[2].get<int>();
  for (const auto& x : j.at("vertices")) {
    if (!x.is_array() || x.size() != 4) throw std::invalid_argument("term json: vertex must have four entries");
    Vertex v{x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), std::nullopt};
    if (!x[3].is_null()) v.extra_psi = x[3].get<int>();
    b.vertices.push_back(v);
  }
  std::optional<OmegaMarker> w;
  if (j.contains("omega") && !j.at("omega").is_null()) {
    const auto& o = j.at("omega");
    w = OmegaMarker{omega_kind_from_name(o.at("kind").get<std::string>()), o.at("h").get<int>(),
                    o.at("vertex").get<std::size_t>()};
  }
  Term t{b, w};
  check_term(t);
  if (!(normalize(t) == t)) throw std::invalid_argument("term json: term is not in normal form");
  return t;
}

inline Json to_json(const FormalSum& s) {
  Json arr = Json::array();
  for (const auto& [t, c] : s) arr.push_back({{"term", to_json(t)}, {"coeff", to_fraction_string(c)}});
  return Json{{"terms", arr}};
}

inline FormalSum sum_from_json(const Json& j) {
  FormalSum s;
  for (const auto& e : j.at("terms")) {
    const Term t = term_from_json(e.at("term"));
    if (s.coefficient(t) != 0) throw std::invalid_argument("sum json: duplicate term");
    s.add(t, parse_fraction_string(e.at("coeff").get<std::string>()));
  }
  return s;
}

inline std::string canonical_json(const FormalSum& s) { return to_json(s).dump(); }

}  // namespace bamboo
