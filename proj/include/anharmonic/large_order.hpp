#pragma once

// Large-order behaviour of the perturbative coefficients.
//
// Expanding a once-subtracted dispersion integral in g gives
//   c_K = (1/pi) int_0^inf ds Im E(s) s^{-K-1}        (odd, cut on s > 0)
//   c_K = -(1/pi) int_{-inf}^0 ds Im E(s) s^{-K-1}    (even, cut on s < 0)
// and with Im E = amplitude * s^{-b} e^{-A/s} sum_j c_j s^j each term
// integrates to Gamma(K + b - j) A^{j - K - b}. All values are carried as
// (sign, log|value|) so K in the hundreds does not overflow.

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/instanton.hpp"
#include "anharmonic/rational.hpp"

namespace anharmonic {

/// sign * exp(log_abs).
struct LogValue {
  int sign = 0;
  double log_abs = -HUGE_VAL;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  static LogValue from_rational(const Rational& r) {
    return {sgn(r), anharmonic::log_abs(r)};
  }
};

/// exact / predicted, formed in log space.
inline double ratio(const LogValue& exact, const LogValue& predicted) {
  if (predicted.sign == 0) throw DomainError("ratio: predicted value is zero");
  return exact.sign * predicted.sign * std::exp(exact.log_abs - predicted.log_abs);
}

inline double ratio(const Rational& exact, const LogValue& predicted) {
  return ratio(LogValue::from_rational(exact), predicted);
}

/// Leading large-order formula for the odd perturbation sqrt(g) x^M:
///   c_{n,K} ~ -(M-2) Gamma((M-2)K + n + 1/2) / (pi^{3/2} n! 2^{2K+1-n})
///             * B(M/(M-2), M/(M-2))^{-(M-2)K - n - 1/2}.
inline LogValue bender_wu_asymptotic(int M, int n, int K) {
  if (M < 3 || M % 2 == 0)
    throw DomainError("bender_wu_asymptotic is stated for odd M >= 3; got M = " + std::to_string(M));
  if (n < 0 || K < 1) throw DomainError("bender_wu_asymptotic requires n >= 0 and K >= 1");
  const double m2 = M - 2;
  const double x = static_cast<double>(M) / m2;
  const double exponent = m2 * K + n + 0.5;
  const double log_beta = std::log(boost::math::beta(x, x));
  const double la = std::log(m2) + std::lgamma(exponent) - 1.5 * std::log(std::numbers::pi) -
                    std::lgamma(n + 1.0) - (2.0 * K + 1.0 - n) * std::log(2.0) -
                    exponent * log_beta;
  return {-1, la};
}

/// Dispersion-derived asymptotics from a one-instanton width series:
///   c_K ~ sigma_K (amplitude/pi) sum_{j<=J} c_j Gamma(K + b - j) A^{-(K+b-j)},
/// where sigma_K = (-1)^{K+1} and c_j carries (-1)^j for the even oscillator
/// (cut on the negative axis); sigma_K = 1 otherwise.
struct LargeOrderModel {
  int degree_M = 3;
  int level_n = 0;
  double action_A = 0.0;
  double prefactor_power_b = 0.5;
  double amplitude = 0.0;
  bool alternating = false;
  std::vector<double> correction_coefficients;  ///< c_0 = 1, c_1, ...

  void validate() const {
    if (!(action_A > 0.0)) throw DomainError("LargeOrderModel: action must be positive");
    if (amplitude == 0.0) throw DomainError("LargeOrderModel: amplitude must be nonzero");
  }
};

/// Model built from the shipped width table for (M, n).
inline LargeOrderModel large_order_model(int M, int n) {
  const auto s = decay_width_series(M, n);
  LargeOrderModel m;
  m.degree_M = M;
  m.level_n = n;
  m.action_A = to_double(s.action_A);
  m.prefactor_power_b = to_double(s.prefactor_power_b);
  m.amplitude = s.overall_sign * s.amplitude();
  m.alternating = s.coupling_sign < 0;
  for (std::size_t j = 0; j < s.bracket_series.size(); ++j) {
    double c = to_double(s.bracket_series[j]);
    if (m.alternating && j % 2 == 1) c = -c;
    m.correction_coefficients.push_back(c);
  }
  if (m.alternating) m.amplitude = -m.amplitude;  // the even dispersion carries a minus sign
  return m;
}

/// Leading-only model for an odd level without a shipped width table
/// (amplitude 2^{3n}/(sqrt(pi) n!) for the cubic).
inline LargeOrderModel cubic_leading_model(int n) {
  LargeOrderModel m;
  m.degree_M = 3;
  m.level_n = n;
  m.action_A = 2.0 / 15.0;
  m.prefactor_power_b = n + 0.5;
  m.amplitude = -std::exp(3.0 * n * std::log(2.0) - 0.5 * std::log(std::numbers::pi) -
                          std::lgamma(n + 1.0));
  m.correction_coefficients = {1.0};
  return m;
}

inline LogValue large_order_from_dispersion(const LargeOrderModel& model, int K, int corrections_j) {
  model.validate();
  if (corrections_j < 0) throw DomainError("corrections_j must be nonnegative");
  if (corrections_j >= static_cast<int>(model.correction_coefficients.size()))
    throw RangeError("corrections_j = " + std::to_string(corrections_j) +
                     " exceeds the stored bracket length " +
                     std::to_string(model.correction_coefficients.size()));
  const double b = model.prefactor_power_b;
  if (!(K + b - corrections_j > 0.0))
    throw DomainError("large_order_from_dispersion requires K + b - j > 0");

  const double lead_log = std::lgamma(K + b) - (K + b) * std::log(model.action_A);
  // Sum relative to the leading term: Gamma(K+b-j)/Gamma(K+b) * A^j.
  double rel = 0.0;
  for (int j = 0; j <= corrections_j; ++j) {
    const double c = model.correction_coefficients[static_cast<std::size_t>(j)];
    rel += c * std::exp(std::lgamma(K + b - j) - std::lgamma(K + b) + j * std::log(model.action_A));
  }
  int sign = (model.amplitude > 0) ? 1 : -1;
  if (model.alternating && (K + 1) % 2 != 0) sign = -sign;
  if (rel < 0) sign = -sign;
  if (rel == 0.0) return {0, -HUGE_VAL};
  const double la =
      std::log(std::fabs(model.amplitude)) - std::log(std::numbers::pi) + lead_log + std::log(std::fabs(rel));
  return {sign, la};
}

}  // namespace anharmonic
