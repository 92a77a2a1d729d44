#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace anharmonic {

template <class Real>
struct QuadratureResult {
  Real value{};
  Real error_estimate{};
};

/// Adaptive Gauss-Kronrod (15-point) on a finite or semi-infinite interval.
template <class Real, class F>
QuadratureResult<Real> integrate(F&& f, Real a, Real b, Real rel_tol, unsigned max_depth = 20) {
  using boost::math::quadrature::gauss_kronrod;
  // Tolerances near machine epsilon make the error estimate stall on
  // roundoff and bisection run to max_depth.
  const Real floor_tol = Real(1000) * std::numeric_limits<Real>::epsilon();
  if (rel_tol < floor_tol) rel_tol = floor_tol;
  Real err = 0;
  Real l1 = 0;
  const Real value = gauss_kronrod<Real, 15>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
  return {value, err};
}

}  // namespace anharmonic
