#pragma once

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/quadrature.hpp"
#include "anharmonic/rational.hpp"
#include "anharmonic/series.hpp"

namespace anharmonic {

inline void require_instanton_degree(int M) {
  if (M != 3 && M != 4)
    throw DomainError("closed-form instantons exist for M = 3 and M = 4 only, got M = " +
                      std::to_string(M));
}

/// Euclidean instanton in the rescaled variables: branch*(cosh 2t + 1)^{-1/2}
/// for the quartic, (cosh t + 1)^{-1} for the cubic (branch is ignored).
inline double instanton_trajectory(int M, double t, int branch = +1) {
  require_instanton_degree(M);
  if (branch != 1 && branch != -1) throw DomainError("branch must be +1 or -1");
  if (M == 4) return branch / std::sqrt(std::cosh(2.0 * t) + 1.0);
  return 1.0 / (std::cosh(t) + 1.0);
}

/// Time derivative of `instanton_trajectory`.
inline double instanton_velocity(int M, double t, int branch = +1) {
  require_instanton_degree(M);
  if (M == 4) {
    const double c = std::cosh(2.0 * t) + 1.0;
    return -branch * std::sinh(2.0 * t) / (c * std::sqrt(c));
  }
  const double c = std::cosh(t) + 1.0;
  return -std::sinh(t) / (c * c);
}

/// Inverted-potential force: q - 4 q^3 (quartic), r - 3 r^2 (cubic).
inline double instanton_force(int M, double x) {
  require_instanton_degree(M);
  return M == 4 ? x - 4.0 * x * x * x : x - 3.0 * x * x;
}

/// Lagrangian density of the rescaled Euclidean action,
/// 1/2 xdot^2 + 1/2 x^2 - x^{M}.
inline double instanton_lagrangian(int M, double x, double v) {
  return 0.5 * v * v + 0.5 * x * x - std::pow(x, M);
}

/// Acceleration of the closed-form trajectory by an eighth-order central
/// difference of the analytic velocity.
inline double instanton_acceleration(int M, double t, double h = 1e-2, int branch = +1) {
  static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double d = 0.0;
  for (int k = 1; k <= 4; ++k)
    d += w[k - 1] * (instanton_velocity(M, t + k * h, branch) - instanton_velocity(M, t - k * h, branch));
  return d / h;
}

/// |x'' - force(x)| at time t; the smaller of two step sizes is kept so a
/// roundoff-dominated step does not mask convergence.
inline double equation_of_motion_residual(int M, double t, int branch = +1) {
  const double x = instanton_trajectory(M, t, branch);
  const double f = instanton_force(M, x);
  const double r1 = std::fabs(instanton_acceleration(M, t, 2e-2, branch) - f);
  const double r2 = std::fabs(instanton_acceleration(M, t, 1e-2, branch) - f);
  return std::min(r1, r2);
}

/// |1/2 v^2 - (1/2 x^2 - x^M)|: the instanton has zero Euclidean energy.
inline double zero_energy_residual(int M, double t, int branch = +1) {
  const double x = instanton_trajectory(M, t, branch);
  const double v = instanton_velocity(M, t, branch);
  return std::fabs(0.5 * v * v - (0.5 * x * x - std::pow(x, M)));
}

struct ActionQuadrature {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;  ///< analytic bound on the |t| > window contribution
};

/// Dimensionless Euclidean action of the closed-form instanton by adaptive
/// quadrature over |t| <= window: 1/3 for M = 4, 2/15 for M = 3.
inline ActionQuadrature instanton_action_quadrature(int M, double window = 40.0, int branch = +1) {
  require_instanton_degree(M);
  if (!(window > 0.0)) throw DomainError("integration window must be positive");
  auto density = [&](double t) {
    return instanton_lagrangian(M, instanton_trajectory(M, t, branch),
                                instanton_velocity(M, t, branch));
  };
  // The integrand is even; split the half-line into unit panels so the
  // exponential decay is resolved without deep bisection.
  ActionQuadrature out;
  double sum = 0.0;
  for (double a = 0.0; a < window; a += 1.0) {
    const double b = std::min(a + 1.0, window);
    const auto r = integrate<double>(density, a, b, 1e-15);
    sum += r.value;
    out.quadrature_error += r.error_estimate;
  }
  out.value = 2.0 * sum;
  out.quadrature_error *= 2.0;
  // Both integrands are bounded by C e^{-2|t|} (C = 2 quartic, 4 cubic).
  out.tail_bound = (M == 4 ? 2.0 : 4.0) * std::exp(-2.0 * window);
  if (out.quadrature_error > 1e-12)
    throw ConvergenceError("instanton action quadrature did not converge",
                           out.quadrature_error);
  return out;
}

inline double instanton_action_numeric(int M, double window = 40.0) {
  return instanton_action_quadrature(M, window).value;
}

/// A_M = 2^{2/(M-2)} B(M/(M-2), M/(M-2)), the action implied by the growth
/// base of the large-order formula. Valid for any M >= 3.
inline double action_from_beta(int M) {
  if (M < 3) throw DomainError("action_from_beta requires M >= 3");
  const double x = static_cast<double>(M) / (M - 2);
  return std::pow(2.0, 2.0 / (M - 2)) * boost::math::beta(x, x);
}

/// Closed-form action as an exact rational.
inline Rational instanton_action_exact(int M) {
  require_instanton_degree(M);
  return M == 4 ? make_rational(1, 3) : make_rational(2, 15);
}

/// One-instanton width series
///   Im E = overall_sign * 2^{amplitude_pow2} / (sqrt(pi) n!) * t^{-b}
///          * exp(-A / t) * bracket(g),        t = coupling_sign * g > 0.
struct InstantonSeries {
  OscillatorSpec oscillator;
  Rational action_A;
  Rational prefactor_power_b;
  Rational amplitude_pow2;  ///< exponent of 2 in the amplitude
  int coupling_sign = 1;    ///< +1: unstable for g > 0 (odd); -1: g < 0 (even)
  int overall_sign = -1;
  RationalSeries bracket_series;

  /// log of |amplitude| = 2^{amplitude_pow2} / (sqrt(pi) n!)
  double log_amplitude() const {
    return to_double(amplitude_pow2) * std::log(2.0) - 0.5 * std::log(std::numbers::pi) -
           std::lgamma(oscillator.level_n + 1.0);
  }
  double amplitude() const { return std::exp(log_amplitude()); }
};

namespace detail {

inline const std::vector<std::string>& width_table(int M, int n) {
  static const std::vector<std::string> quartic0{
      "1",
      "95/24",
      "-13259/1152",
      "8956043/82944",
      "-11481557783/7962624",
      "4580883830443/191102976",
      "-12914334973382407/27518828544",
      "6938216714164463905/660451885056",
      "-33483882026182043052421/126806761930752"};
  static const std::vector<std::string> quartic1{
      "1",
      "371/24",
      "-3371/1152",
      "33467903/82944",
      "-73699079735/7962624",
      "44874270156367/191102976",
      "-181465701024056263/27518828544",
      "133606590325852428349/660451885056",
      "-850916613482026035123397/126806761930752"};
  static const std::vector<std::string> cubic0{
      "1",
      "-169/16",
      "-44507/512",
      "-86071851/40960",
      "-189244716209/2621440",
      "-128830328039451/41943040",
      "-1027625748709963623/6710886400",
      "-933142404651555165943/107374182400",
      "-7583898146256325425743381/13743895347200"};
  static const std::vector<std::string> cubic1{
      "1",
      "-853/16",
      "33349/512",
      "-395368511/40960",
      "-1788829864593/2621440",
      "-2121533029723423/41943040",
      "-27231734458812207783/6710886400",
      "-37583589061337851179291/107374182400",
      "-442771791224240926548268373/13743895347200"};
  if (M == 4) return n == 0 ? quartic0 : quartic1;
  return n == 0 ? cubic0 : cubic1;
}

}  // namespace detail

/// Built-in one-instanton tables for (M, n) in {3, 4} x {0, 1}.
inline InstantonSeries decay_width_series(int M, int n) {
  if ((M != 3 && M != 4) || (n != 0 && n != 1))
    throw DomainError("decay-width tables are shipped for M in {3, 4} and n in {0, 1}; got M = " +
                      std::to_string(M) + ", n = " + std::to_string(n));
  InstantonSeries s;
  s.oscillator = OscillatorSpec::natural(M, n);
  s.action_A = instanton_action_exact(M);
  s.prefactor_power_b = make_rational(2 * n + 1, 2);
  // quartic: 2^{2n + 1/2}; cubic: 2^{3n}
  s.amplitude_pow2 = M == 4 ? make_rational(4 * n + 1, 2) : make_rational(3 * n);
  s.coupling_sign = M == 4 ? -1 : 1;
  s.overall_sign = -1;
  s.bracket_series = parse_series(detail::width_table(M, n));
  return s;
}

namespace detail {

inline double unstable_variable(const InstantonSeries& s, double g) {
  const double t = s.coupling_sign * g;
  if (!(t > 0.0))
    throw DomainError("coupling g = " + std::to_string(g) +
                      " is outside the unstable region of the M = " +
                      std::to_string(s.oscillator.degree_M) + " oscillator");
  return t;
}

}  // namespace detail

/// log |prefactor(g)|: -A/t + log amplitude - b log t.
inline double log_width_prefactor(const InstantonSeries& s, double g) {
  const double t = detail::unstable_variable(s, g);
  return -to_double(s.action_A) / t + s.log_amplitude() - to_double(s.prefactor_power_b) * std::log(t);
}

/// Signed prefactor overall_sign * |prefactor|; underflows cleanly to 0.
inline double width_prefactor(const InstantonSeries& s, double g) {
  return s.overall_sign * std::exp(log_width_prefactor(s, g));
}

/// Im E_n(g) from the one-instanton series with the bracket summed through
/// order K.
inline double imag_energy(int M, int n, double g, int K) {
  const auto s = decay_width_series(M, n);
  const double bracket = series_eval(s.bracket_series, g, K).real();
  return width_prefactor(s, g) * bracket;
}

/// log |Im E_n(g)|, finite even where the value itself underflows.
inline double log_abs_imag_energy(int M, int n, double g, int K) {
  const auto s = decay_width_series(M, n);
  const double bracket = series_eval(s.bracket_series, g, K).real();
  return log_width_prefactor(s, g) + std::log(std::fabs(bracket));
}

/// Im E_n(g) with the bracket summed by optimal truncation; the error
/// estimate is scaled by the same prefactor.
inline TruncationResult imag_energy_optimal(int M, int n, double g) {
  const auto s = decay_width_series(M, n);
  const double pref = width_prefactor(s, g);
  auto t = optimal_truncation(s.bracket_series, g);
  t.value *= pref;
  t.error_estimate *= std::fabs(pref);
  return t;
}

}  // namespace anharmonic
