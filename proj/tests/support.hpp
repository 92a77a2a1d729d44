#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "anharmonic/anharmonic.hpp"

namespace testing_support {

/// Values computed by tests/oracles/generate_oracles.py and frozen.
inline const nlohmann::json& oracles() {
  static const nlohmann::json data = [] {
    std::ifstream f(ANH_ORACLE_FILE);
    return nlohmann::json::parse(f);
  }();
  return data;
}

inline anharmonic::Rational oracle_rational(const nlohmann::json& j) {
  return anharmonic::parse_rational(j.get<std::string>());
}

inline double oracle_double(const nlohmann::json& j) { return std::stod(j.get<std::string>()); }

inline double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace testing_support
