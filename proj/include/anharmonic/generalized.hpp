#pragma once

// Generalized nonanalytic expansion of a resonance energy:
//
//   E(g) = sum_K c_K g^K
//        + sum_{J,L} [ i * 2^{p2} / (sqrt(pi) n!) * t^{-b} * exp(-A / t) ]^J
//                    * ln^L(c / g) * sum_K Xi_{J,L,K} g^K,     t = sigma g,
//
// with sigma = +1 for odd oscillators (unstable for g > 0) and -1 for even
// ones (unstable for g < 0). Only J = 1, L = 0 rows are populated by the
// shipped tables; the structure admits the rest.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/instanton.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/rational.hpp"
#include "anharmonic/series.hpp"

namespace anharmonic {

struct InstantonTerm {
  int J = 1;
  int L = 0;
  Rational action_A;
  int coupling_sign = 1;
  Rational amplitude_power;  ///< b, exponent of 1/t in the prefactor
  Rational amplitude_pow2;   ///< exponent of 2 in the amplitude
  Rational log_argument_scale;
  RationalSeries correction_series;

  void validate() const {
    if (J < 1) throw DomainError("instanton multiplicity J must be >= 1");
    if (L < 0 || L >= J) throw DomainError("log power L must satisfy 0 <= L < J");
    if (action_A <= 0) throw DomainError("instanton action must be positive");
    if (coupling_sign != 1 && coupling_sign != -1)
      throw DomainError("coupling_sign must be +1 or -1");
    if (log_argument_scale == 0) throw DomainError("log argument scale must be nonzero");
  }
};

struct GeneralizedExpansion {
  OscillatorSpec oscillator;
  RationalSeries perturbative;
  std::vector<InstantonTerm> instanton_terms;

  void validate() const {
    oscillator.validate();
    if (perturbative.empty()) throw DomainError("perturbative series must be present");
    for (std::size_t i = 0; i < instanton_terms.size(); ++i) {
      instanton_terms[i].validate();
      for (std::size_t j = 0; j < i; ++j)
        if (instanton_terms[i].J == instanton_terms[j].J &&
            instanton_terms[i].L == instanton_terms[j].L)
          throw DomainError("duplicate instanton term (J, L)");
    }
  }
};

/// J = 1, L = 0 term equivalent to a width series: Im of the term equals the
/// width series value, so Xi_{1,0,K} = overall_sign * bracket_K.
inline InstantonTerm one_instanton_term(const InstantonSeries& s) {
  InstantonTerm t;
  t.J = 1;
  t.L = 0;
  t.action_A = s.action_A;
  t.coupling_sign = s.coupling_sign;
  t.amplitude_power = s.prefactor_power_b;
  t.amplitude_pow2 = s.amplitude_pow2;
  t.log_argument_scale = s.oscillator.degree_M == 4 ? make_rational(4) : make_rational(-8);
  std::vector<Rational> xi;
  for (const auto& c : s.bracket_series.coefficients) xi.push_back(s.overall_sign * c);
  t.correction_series = RationalSeries(std::move(xi), "g");
  return t;
}

struct GeneralizedValue {
  std::complex<double> value;
  std::complex<double> perturbative;
  std::complex<double> instanton;
  std::string log_branch = "principal";
};

/// Evaluates the expansion at real g in the unstable region, perturbative part
/// through K_pert and every correction series through K_inst. The real part of
/// the instanton sector is reported as computed; no combination rule with the
/// perturbative sum is applied.
inline GeneralizedValue eval_generalized(const GeneralizedExpansion& exp, double g, int K_pert,
                                         int K_inst) {
  exp.validate();
  const bool unstable = exp.oscillator.is_odd() ? g > 0.0 : g < 0.0;
  if (!unstable)
    throw DomainError("eval_generalized: g = " + std::to_string(g) +
                      " is in the stable region; the expansion holds for the unstable region");

  GeneralizedValue out;
  out.perturbative = series_eval(exp.perturbative, g, K_pert);
  const double n_factorial_log = std::lgamma(exp.oscillator.level_n + 1.0);

  for (const auto& term : exp.instanton_terms) {
    const double t = term.coupling_sign * g;
    if (!(t > 0.0)) throw DomainError("instanton term coupling sign does not match the region");
    const double log_mag = to_double(term.amplitude_pow2) * std::log(2.0) -
                           0.5 * std::log(std::numbers::pi) - n_factorial_log -
                           to_double(term.amplitude_power) * std::log(t) -
                           to_double(term.action_A) / t;
    // [i * magnitude]^J with i^J taken exactly
    static constexpr std::complex<double> i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> base = std::exp(term.J * log_mag) * i_powers[term.J % 4];
    std::complex<double> log_factor(1.0, 0.0);
    if (term.L > 0) {
      const std::complex<double> arg(to_double(term.log_argument_scale) / g, 0.0);
      log_factor = std::pow(std::log(arg), term.L);
    }
    out.instanton += base * log_factor * series_eval(term.correction_series, g, K_inst);
  }
  out.value = out.perturbative + out.instanton;
  return out;
}

}  // namespace anharmonic
