#pragma once

#include <complex>
#include <optional>
#include <string>

#include "anharmonic/errors.hpp"

namespace anharmonic {

/// How the coupling multiplies x^M: g x^M for even degrees, sqrt(g) x^M for
/// odd degrees (so that the energy is a series in g rather than sqrt(g)).
enum class CouplingConvention { EvenPower, OddSqrt };

inline const char* to_string(CouplingConvention c) {
  return c == CouplingConvention::EvenPower ? "EvenPower" : "OddSqrt";
}

struct OscillatorSpec {
  int degree_M = 3;
  int level_n = 0;
  CouplingConvention convention = CouplingConvention::OddSqrt;
  std::optional<double> coupling_g;

  /// Natural convention for the degree: OddSqrt for odd M, EvenPower for even.
  static OscillatorSpec natural(int M, int n, std::optional<double> g = std::nullopt) {
    OscillatorSpec s;
    s.degree_M = M;
    s.level_n = n;
    s.convention = (M % 2 == 0) ? CouplingConvention::EvenPower : CouplingConvention::OddSqrt;
    s.coupling_g = g;
    s.validate();
    return s;
  }

  void validate() const {
    if (degree_M < 3) throw DomainError("degree M must be >= 3, got " + std::to_string(degree_M));
    if (level_n < 0) throw DomainError("level n must be nonnegative");
    const bool odd = degree_M % 2 != 0;
    if (convention == CouplingConvention::OddSqrt && !odd)
      throw DomainError("OddSqrt convention requires odd M");
    if (convention == CouplingConvention::EvenPower && odd)
      throw DomainError("EvenPower convention requires even M");
  }

  bool is_odd() const { return convention == CouplingConvention::OddSqrt; }

  /// Coefficient of x^M in the Hamiltonian; principal sqrt for OddSqrt, so a
  /// negative g gives a purely imaginary cubic coupling.
  std::complex<double> perturbation_strength() const {
    const double g = require_coupling();
    if (is_odd()) return std::sqrt(std::complex<double>(g, 0.0));
    return {g, 0.0};
  }

  /// g > 0 for odd oscillators, g < 0 for even ones.
  bool in_unstable_region() const {
    const double g = require_coupling();
    return is_odd() ? g > 0.0 : g < 0.0;
  }

  double require_coupling() const {
    if (!coupling_g) throw DomainError("coupling g is not set");
    return *coupling_g;
  }
};

}  // namespace anharmonic
