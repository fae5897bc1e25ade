#pragma once

// JSON wire format:
//   polynomial: {"m":int,"p":int,"q":int,
//                "terms":[{"alpha":[...],"beta":[...],"re":"a/b","im":"c/d"}]}
//   tuple:      {"m","n","p","q","components":[poly...],"boundary":[poly...]}
// Terms are written in graded-lex order so that serialization is canonical.

#include <json.hpp>

#include "ratmaps/polynomial.hpp"

namespace ratmaps {

nlohmann::json to_json(const PQPolynomial& poly);
nlohmann::json to_json(const MapTuple& tuple);

/// Throws std::invalid_argument (or a nlohmann::json exception) on malformed input.
PQPolynomial polynomial_from_json(const nlohmann::json& j);
/// "boundary" may be omitted, in which case it is derived by restriction.
MapTuple tuple_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GaussianRational& z);
GaussianRational gaussian_from_json(const nlohmann::json& j);

}  // namespace ratmaps
