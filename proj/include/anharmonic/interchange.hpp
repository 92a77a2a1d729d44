#pragma once

// JSON interchange for exact series and generalized expansions. Rationals are
// written as "num/den" strings, never as floats.

#include "json.hpp"

#include <string>

#include "anharmonic/errors.hpp"
#include "anharmonic/generalized.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/rational.hpp"

namespace anharmonic {

inline constexpr const char* kSchemaVersion = "1.0";

using json = nlohmann::ordered_json;

inline json rational_to_json(const Rational& r) { return to_fraction_string(r); }

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw DomainError("rational must be a \"num/den\" string");
  return parse_rational(j.get<std::string>());
}

inline json series_to_json(const RationalSeries& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["variable"] = s.variable;
  j["k_max"] = s.k_max();
  json arr = json::array();
  for (const auto& c : s.coefficients) arr.push_back(rational_to_json(c));
  j["coefficients"] = std::move(arr);
  return j;
}

inline void require_schema(const json& j) {
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
    throw DomainError("unsupported or missing schema_version");
}

inline RationalSeries series_from_json(const json& j) {
  require_schema(j);
  RationalSeries s;
  s.variable = j.value("variable", std::string("g"));
  for (const auto& c : j.at("coefficients")) s.coefficients.push_back(rational_from_json(c));
  if (j.contains("k_max") && j["k_max"].get<int>() != s.k_max())
    throw DomainError("k_max does not match the coefficient count");
  return s;
}

inline json oscillator_to_json(const OscillatorSpec& o) {
  json j;
  j["degree_M"] = o.degree_M;
  j["level_n"] = o.level_n;
  j["convention"] = to_string(o.convention);
  j["coupling_g"] = o.coupling_g ? json(*o.coupling_g) : json(nullptr);
  return j;
}

inline OscillatorSpec oscillator_from_json(const json& j) {
  OscillatorSpec o;
  o.degree_M = j.at("degree_M").get<int>();
  o.level_n = j.at("level_n").get<int>();
  const auto conv = j.at("convention").get<std::string>();
  if (conv == "EvenPower") o.convention = CouplingConvention::EvenPower;
  else if (conv == "OddSqrt") o.convention = CouplingConvention::OddSqrt;
  else throw DomainError("unknown coupling convention " + conv);
  if (j.contains("coupling_g") && !j["coupling_g"].is_null()) o.coupling_g = j["coupling_g"].get<double>();
  o.validate();
  return o;
}

inline json instanton_term_to_json(const InstantonTerm& t) {
  json j;
  j["J"] = t.J;
  j["L"] = t.L;
  j["action_A"] = rational_to_json(t.action_A);
  j["coupling_sign"] = t.coupling_sign;
  j["amplitude_power"] = rational_to_json(t.amplitude_power);
  j["amplitude_pow2"] = rational_to_json(t.amplitude_pow2);
  j["log_argument_scale"] = rational_to_json(t.log_argument_scale);
  json arr = json::array();
  for (const auto& c : t.correction_series.coefficients) arr.push_back(rational_to_json(c));
  j["correction_series"] = std::move(arr);
  return j;
}

inline InstantonTerm instanton_term_from_json(const json& j) {
  InstantonTerm t;
  t.J = j.at("J").get<int>();
  t.L = j.at("L").get<int>();
  t.action_A = rational_from_json(j.at("action_A"));
  t.coupling_sign = j.at("coupling_sign").get<int>();
  t.amplitude_power = rational_from_json(j.at("amplitude_power"));
  t.amplitude_pow2 = rational_from_json(j.at("amplitude_pow2"));
  t.log_argument_scale = rational_from_json(j.at("log_argument_scale"));
  for (const auto& c : j.at("correction_series")) t.correction_series.coefficients.push_back(rational_from_json(c));
  t.validate();
  return t;
}

inline json expansion_to_json(const GeneralizedExpansion& e) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["oscillator"] = oscillator_to_json(e.oscillator);
  j["perturbative"] = series_to_json(e.perturbative);
  json terms = json::array();
  for (const auto& t : e.instanton_terms) terms.push_back(instanton_term_to_json(t));
  j["instanton_terms"] = std::move(terms);
  return j;
}

inline GeneralizedExpansion expansion_from_json(const json& j) {
  require_schema(j);
  GeneralizedExpansion e;
  e.oscillator = oscillator_from_json(j.at("oscillator"));
  e.perturbative = series_from_json(j.at("perturbative"));
  for (const auto& t : j.at("instanton_terms")) e.instanton_terms.push_back(instanton_term_from_json(t));
  e.validate();
  return e;
}

}  // namespace anharmonic
