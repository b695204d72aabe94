#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "eelkit/checkers.hpp"
#include "eelkit/constructions.hpp"

namespace eelkit {

namespace detail {

// JSON numbers cannot carry infinities; clamp to the double range edges so a
// vacuous check still round-trips as a number.
inline double json_number(double v) {
  if (std::isinf(v)) return std::copysign(std::numeric_limits<double>::max(), v);
  return v;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["property"] = property_name(r.property);
  j["lambda"] = detail::json_number(r.lambda);
  j["passed"] = r.passed;
  j["worst_margin"] = detail::json_number(r.worst_margin);
  j["witness"] = r.witness;
  j["samples_checked"] = r.samples_checked;
  j["tol"] = r.tol;
  return j;
}

inline nlohmann::ordered_json to_json(const CertificationRecord& r) {
  nlohmann::ordered_json j;
  j["mu"] = r.mu;
  j["N"] = r.N;
  j["M"] = r.M;
  j["lambda"] = r.lambda;
  j["lemma"] = r.lemma;
  j["max_violation"] = detail::json_number(r.max_violation);
  j["argmax"] = r.argmax;
  j["grid"] = r.grid;
  return j;
}

}  // namespace eelkit
