#pragma once

// Model integral whose small-beta expansion mixes powers and logarithms:
//
//   I(beta) = int_0^1 sqrt((w^2 + beta^2) / (1 - w^2)) dw
//           = 1 + beta^2 {ln(4/beta)/2 + 1/4} + beta^4 {-ln(4/beta)/16 + 3/64}
//             + beta^6 {3 ln(4/beta)/128 - 3/128} + O(beta^8 ln beta).
//
// w = sin(phi) removes the endpoint singularity:
//   I(beta) = int_0^{pi/2} sqrt(sin^2 phi + beta^2) dphi.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

#include "anharmonic/errors.hpp"
#include "anharmonic/quadrature.hpp"

namespace anharmonic {

struct ModelIntegralCheck {
  double numeric = 0.0;
  double expansion = 0.0;
  double difference = 0.0;  ///< numeric - expansion, formed at working precision
};

/// Quadrature of the sin-substituted form to relative tolerance `tol`.
template <class Real>
Real model_integral_numeric(const Real& beta, const Real& tol) {
  using std::sin;
  using std::sqrt;
  using std::pow;
  using std::log;
  const Real half_pi = boost::math::constants::half_pi<Real>();
  auto f = [&](const Real& phi) {
    const Real s = sin(phi);
    return Real(sqrt(s * s + beta * beta));
  };
  // The integrand bends on the scale phi ~ beta; split there.
  const Real knee = beta < half_pi ? beta : half_pi / 2;
  return integrate<Real>(f, Real(0), knee, tol, 15).value +
         integrate<Real>(f, knee, half_pi, tol, 15).value;
}

template <class Real>
Real model_integral_expansion(const Real& beta) {
  using std::log;
  const Real L = log(Real(4) / beta);
  const Real b2 = beta * beta;
  return Real(1) + b2 * (L / 2 + Real(1) / 4) + b2 * b2 * (-L / 16 + Real(3) / 64) +
         b2 * b2 * b2 * (Real(3) * L / 128 - Real(3) / 128);
}

template <class Real>
ModelIntegralCheck model_integral_check_at(double beta, int digits) {
  if (!(beta > 0.0)) throw DomainError("model_integral_check requires beta > 0");
  if (beta > 0.5) throw DomainError("model_integral_check requires beta <= 0.5");
  const Real b(beta);
  using std::pow;
  const Real numeric = model_integral_numeric(b, Real(pow(Real(10), -digits)));
  const Real expansion = model_integral_expansion(b);
  return {static_cast<double>(numeric), static_cast<double>(expansion),
          static_cast<double>(Real(numeric - expansion))};
}

/// `digits` sets the quadrature tolerance 10^-digits and the working
/// precision: binary64 up to 15 digits, the extended type up to 18, a
/// 50-digit software float beyond.
inline ModelIntegralCheck model_integral_check(double beta, int digits = 15) {
  if (digits < 1 || digits > 45) throw DomainError("model_integral_check: digits must be in [1, 45]");
  if (digits <= 15) return model_integral_check_at<double>(beta, digits);
  if (digits <= 18) return model_integral_check_at<long double>(beta, digits);
  return model_integral_check_at<boost::multiprecision::cpp_bin_float_50>(beta, digits);
}

}  // namespace anharmonic
