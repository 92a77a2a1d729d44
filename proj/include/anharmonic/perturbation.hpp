#pragma once

// Exact Rayleigh-Schroedinger coefficients by the Bender-Wu polynomial
// recursion. With psi = exp(-x^2/2) * sum_k lambda^k P_k(x) the eigenvalue
// equation -psi''/2 + x^2 psi/2 + lambda x^M psi = E psi becomes, order by
// order in lambda,
//
//   (L - E_0) P_k = sum_{j=1}^{k} E_j P_{k-j} - x^M P_{k-1},
//   L x^m = (m + 1/2) x^m - m(m-1)/2 x^{m-2},
//
// an upper-triangular system in the monomial basis. The coefficient of x^n
// in P_k (k >= 1) is pinned to zero; the x^n row then fixes E_k.

#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/rational.hpp"

namespace anharmonic {

struct PerturbationLimits {
  int max_orders = 200;   ///< K_max cap (orders of g)
  int max_degree = 1000;  ///< cap on the polynomial degree of any layer
};

/// Polynomial factor of the wavefunction at order lambda^k (lambda = sqrt(g)
/// for OddSqrt, g for EvenPower), in monomial coefficients of x^j.
struct WavefunctionLayer {
  int order_k = 0;
  std::vector<Rational> polynomial_coefficients;

  int degree() const {
    for (int j = static_cast<int>(polynomial_coefficients.size()) - 1; j >= 0; --j)
      if (polynomial_coefficients[static_cast<std::size_t>(j)] != 0) return j;
    return -1;
  }
};

struct BenderWuExpansion {
  std::vector<WavefunctionLayer> layers;
  std::vector<Rational> energy_by_lambda;  ///< E_k for k = 0..lambda_orders
};

/// Physicists' Hermite polynomial H_n in monomial coefficients.
inline std::vector<Rational> hermite_coefficients(int n) {
  std::vector<Rational> prev{Rational(1)};
  if (n == 0) return prev;
  std::vector<Rational> cur{Rational(0), Rational(2)};
  for (int k = 1; k < n; ++k) {
    std::vector<Rational> next(static_cast<std::size_t>(k + 2), Rational(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Runs the recursion through lambda^lambda_orders.
inline BenderWuExpansion bender_wu_expand(const OscillatorSpec& spec, int lambda_orders,
                                          const PerturbationLimits& limits = {}) {
  spec.validate();
  if (lambda_orders < 0) throw DomainError("number of orders must be nonnegative");
  const int M = spec.degree_M;
  const int n = spec.level_n;
  const long top_degree = static_cast<long>(n) + static_cast<long>(lambda_orders) * M;
  if (top_degree > limits.max_degree)
    throw ResourceError("polynomial degree " + std::to_string(top_degree) +
                        " exceeds cap " + std::to_string(limits.max_degree));

  BenderWuExpansion out;
  out.layers.push_back({0, hermite_coefficients(n)});
  out.energy_by_lambda.push_back(make_rational(2 * n + 1, 2));
  const Rational lead = out.layers[0].polynomial_coefficients[static_cast<std::size_t>(n)];

  for (int k = 1; k <= lambda_orders; ++k) {
    const int deg = n + k * M;
    std::vector<Rational> rhs(static_cast<std::size_t>(deg + 3), Rational(0));
    for (int j = 1; j < k; ++j) {
      const Rational& e = out.energy_by_lambda[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      const auto& p = out.layers[static_cast<std::size_t>(k - j)].polynomial_coefficients;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) rhs[i] += e * p[i];
    }
    {
      const auto& p = out.layers[static_cast<std::size_t>(k - 1)].polynomial_coefficients;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) rhs[i + static_cast<std::size_t>(M)] -= p[i];
    }

    std::vector<Rational> c(static_cast<std::size_t>(deg + 3), Rational(0));
    auto solve_row = [&](int m) {
      const auto mu = static_cast<std::size_t>(m);
      c[mu] = rhs[mu] + Rational((m + 2) * (m + 1) / 2) * c[mu + 2];
      c[mu] /= (m - n);
    };
    for (int m = deg; m > n; --m) solve_row(m);

    const Rational ek =
        (-Rational((n + 2) * (n + 1) / 2) * c[static_cast<std::size_t>(n + 2)] -
         rhs[static_cast<std::size_t>(n)]) /
        lead;
    const auto& p0 = out.layers[0].polynomial_coefficients;
    for (std::size_t i = 0; i < p0.size(); ++i) rhs[i] += ek * p0[i];
    for (int m = n - 1; m >= 0; --m) solve_row(m);

    c.resize(static_cast<std::size_t>(deg + 1));
    out.layers.push_back({k, std::move(c)});
    out.energy_by_lambda.push_back(ek);
  }
  return out;
}

/// Energy series sum_K c_K g^K through K_max, exact.
inline RationalSeries perturb_coefficients(const OscillatorSpec& spec, int K_max,
                                           const PerturbationLimits& limits = {}) {
  spec.validate();
  if (K_max < 0) throw DomainError("K_max must be nonnegative");
  if (K_max > limits.max_orders)
    throw ResourceError("K_max " + std::to_string(K_max) + " exceeds cap " +
                        std::to_string(limits.max_orders));
  const int stride = spec.is_odd() ? 2 : 1;
  const auto bw = bender_wu_expand(spec, stride * K_max, limits);

  RationalSeries series;
  series.variable = "g";
  for (int k = 0; k <= stride * K_max; ++k) {
    const Rational& e = bw.energy_by_lambda[static_cast<std::size_t>(k)];
    if (stride == 2 && k % 2 == 1) {
      if (e != 0)
        throw DomainError("odd-order energy correction " + std::to_string(k) +
                          " is nonzero: " + to_string(e));
      continue;
    }
    series.coefficients.push_back(e);
  }
  return series;
}

}  // namespace anharmonic
