#include "ratmaps/polynomial_json.hpp"

namespace ratmaps {

using nlohmann::json;

json to_json(const GaussianRational& z) {
  return {{"re", rational_to_string(z.re())}, {"im", rational_to_string(z.im())}};
}

GaussianRational gaussian_from_json(const json& j) {
  auto part = [&](const char* key) -> mpq_class {
    if (!j.contains(key)) return 0;
    const auto& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    throw std::invalid_argument(std::string("field '") + key + "' must be a rational string");
  };
  return {part("re"), part("im")};
}

json to_json(const PQPolynomial& poly) {
  json terms = json::array();
  for (const auto& [mono, coeff] : poly.terms()) {
    json t = to_json(coeff);
    t["alpha"] = mono.alpha;
    t["beta"] = mono.beta;
    terms.push_back(std::move(t));
  }
  return {{"m", poly.m()}, {"p", poly.p()}, {"q", poly.q()}, {"terms", std::move(terms)}};
}

PQPolynomial polynomial_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("polynomial must be a JSON object");
  PQPolynomial poly(j.at("m").get<int>(), j.at("p").get<int>(), j.at("q").get<int>());
  for (const auto& t : j.at("terms")) {
    PQMonomial mono{t.at("alpha").get<std::vector<int>>(), t.at("beta").get<std::vector<int>>()};
    poly.add_term(mono, gaussian_from_json(t));
  }
  return poly;
}

json to_json(const MapTuple& tuple) {
  json components = json::array();
  json boundary = json::array();
  for (const auto& c : tuple.components()) components.push_back(to_json(c));
  for (const auto& b : tuple.boundary()) boundary.push_back(to_json(b));
  return {{"m", tuple.m()}, {"n", tuple.n()}, {"p", tuple.p()}, {"q", tuple.q()},
          {"components", std::move(components)}, {"boundary", std::move(boundary)}};
}

MapTuple tuple_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("tuple must be a JSON object");
  int m = j.at("m").get<int>();
  int n = j.at("n").get<int>();
  int p = j.at("p").get<int>();
  int q = j.at("q").get<int>();
  std::vector<PQPolynomial> components;
  for (const auto& c : j.at("components")) components.push_back(polynomial_from_json(c));
  if (!j.contains("boundary")) {
    return MapTuple::from_components(m, n, p, q, std::move(components));
  }
  std::vector<PQPolynomial> boundary;
  for (const auto& b : j.at("boundary")) boundary.push_back(polynomial_from_json(b));
  return MapTuple(m, n, p, q, std::move(components), std::move(boundary));
}

}  // namespace ratmaps
