#pragma once

// Independent low-order check of the perturbation coefficients: textbook
// Rayleigh-Schroedinger theory over intermediate harmonic-oscillator states.
//
// States are stored in the unnormalized Fock basis |m) = (a^+)^m |0>, where
// a^+|m) = |m+1) and a|m) = m|m-1), so every matrix element is an integer.
// The perturbation is taken as (a + a^+)^M = 2^{M/2} x^M; the square root
// of two is restored exactly at the end because only even powers of it
// survive in the energy. With intermediate normalization ((n|psi_k) = 0),
//
//   E_k      = [V psi_{k-1}]_n
//   psi_k(m) = ( -[V psi_{k-1}]_m + sum_{j=1}^{k-1} E_j psi_{k-j}(m) ) / (m - n),
//
// i.e. the resolvent sum_{m != n} |m><m| / (E_n - E_m) applied order by order.

#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/rational.hpp"

namespace anharmonic {

namespace detail {

using FockVector = std::vector<Rational>;

inline FockVector apply_position_sum(const FockVector& v) {
  FockVector w(v.size() + 1, Rational(0));
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (v[m] == 0) continue;
    w[m + 1] += v[m];                                    // a^+
    if (m > 0) w[m - 1] += static_cast<long>(m) * v[m];  // a
  }
  return w;
}

}  // namespace detail

inline RationalSeries oracle_rs_coefficients(const OscillatorSpec& spec, int K_max) {
  spec.validate();
  if (K_max < 0) throw DomainError("K_max must be nonnegative");
  if (K_max > 4) throw RangeError("oracle_rs_coefficients supports K_max <= 4");

  const int M = spec.degree_M;
  const int n = spec.level_n;
  const int stride = spec.is_odd() ? 2 : 1;
  const int orders = stride * K_max;

  std::vector<detail::FockVector> psi;
  std::vector<Rational> energy;  // in units of the (a + a^+)^M coupling
  psi.emplace_back(static_cast<std::size_t>(n + 1), Rational(0));
  psi[0][static_cast<std::size_t>(n)] = 1;
  energy.push_back(make_rational(2 * n + 1, 2));

  for (int k = 1; k <= orders; ++k) {
    detail::FockVector v = psi[static_cast<std::size_t>(k - 1)];
    for (int i = 0; i < M; ++i) v = detail::apply_position_sum(v);
    const Rational ek = static_cast<std::size_t>(n) < v.size() ? v[static_cast<std::size_t>(n)]
                                                               : Rational(0);
    detail::FockVector next(v.size(), Rational(0));
    for (std::size_t m = 0; m < v.size(); ++m) {
      if (static_cast<int>(m) == n) continue;
      Rational acc = -v[m];
      for (int j = 1; j < k; ++j) {
        const auto& prev = psi[static_cast<std::size_t>(k - j)];
        if (m < prev.size()) acc += energy[static_cast<std::size_t>(j)] * prev[m];
      }
      next[m] = acc / (static_cast<int>(m) - n);
    }
    energy.push_back(ek);
    psi.push_back(std::move(next));
  }

  // E_k(lambda x^M) = E_k((a + a^+)^M) * 2^{-M k / 2}
  RationalSeries out;
  out.variable = "g";
  for (int k = 0; k <= orders; k += stride) {
    Rational scale(1);
    const long half_powers = static_cast<long>(M) * k;  // exponent of 2^{-1/2}
    mpz_mul_2exp(scale.get_den_mpz_t(), scale.get_den_mpz_t(),
                 static_cast<unsigned long>(half_powers / 2));
    scale.canonicalize();
    out.coefficients.push_back(energy[static_cast<std::size_t>(k)] * scale);
  }
  if (stride == 2)
    for (int k = 1; k <= orders; k += 2)
      if (energy[static_cast<std::size_t>(k)] != 0)
        throw DomainError("oracle: odd-order correction is nonzero");
  return out;
}

}  // namespace anharmonic
