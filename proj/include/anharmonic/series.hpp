#pragma once

#include <complex>
#include <cstdlib>
#include <string>

#include "anharmonic/errors.hpp"
#include "anharmonic/rational.hpp"

namespace anharmonic {

/// Exact Gaussian rational a + i b.
struct ComplexRational {
  Rational re;
  Rational im;

  friend ComplexRational operator*(const ComplexRational& x, const ComplexRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend ComplexRational operator+(const ComplexRational& x, const ComplexRational& y) {
    return {x.re + y.re, x.im + y.im};
  }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// Partial sum c_0 + c_1 g + ... + c_K g^K with exact accumulation.
inline Rational series_eval_exact(const RationalSeries& series, const Rational& g, int K) {
  if (K < 0 || K > series.k_max())
    throw RangeError("series_eval: order " + std::to_string(K) +
                     " outside [0, " + std::to_string(series.k_max()) + "]");
  Rational acc = series[static_cast<std::size_t>(K)];
  for (int k = K - 1; k >= 0; --k) acc = acc * g + series[static_cast<std::size_t>(k)];
  return acc;
}

inline ComplexRational series_eval_exact(const RationalSeries& series, const ComplexRational& g,
                                         int K) {
  if (K < 0 || K > series.k_max())
    throw RangeError("series_eval: order " + std::to_string(K) +
                     " outside [0, " + std::to_string(series.k_max()) + "]");
  ComplexRational acc{series[static_cast<std::size_t>(K)], Rational(0)};
  for (int k = K - 1; k >= 0; --k) {
    acc = acc * g;
    acc.re += series[static_cast<std::size_t>(k)];
  }
  return acc;
}

/// Floating value of the partial sum through order K. Every binary64 input is
/// an exact rational, so the sum is accumulated exactly and rounded once.
inline std::complex<double> series_eval(const RationalSeries& series, std::complex<double> g,
                                        int K) {
  if (g.imag() == 0.0)
    return {to_double(series_eval_exact(series, exact_rational(g.real()), K)), 0.0};
  const ComplexRational z{exact_rational(g.real()), exact_rational(g.imag())};
  return series_eval_exact(series, z, K).to_complex();
}

struct TruncationResult {
  std::complex<double> value;
  int orders_used = 0;  ///< index of the last summed term
  double error_estimate = 0.0;
  bool optimum_reached = false;
};

/// Superasymptotic summation: sums through the smallest-magnitude term of the
/// leading decreasing run. Ties go to the earlier index. If the terms keep
/// shrinking through K_max the full sum is returned with
/// `optimum_reached == false` and the last term as the error estimate.
inline TruncationResult optimal_truncation(const RationalSeries& series, double g) {
  if (series.empty()) throw RangeError("optimal_truncation: empty series");
  if (g == 0.0) throw DomainError("optimal_truncation: g must be nonzero");
  const Rational gq = exact_rational(g);
  const int kmax = series.k_max();

  auto term = [&](int k) -> Rational { return series[static_cast<std::size_t>(k)] * pow(gq, unsigned(k)); };

  TruncationResult out;
  Rational sum = term(0);
  Rational prev = abs(sum);
  int k = 0;
  while (k < kmax) {
    const Rational next = term(k + 1);
    if (abs(next) >= prev) {
      out.optimum_reached = true;
      out.error_estimate = to_double(abs(next));
      break;
    }
    sum += next;
    prev = abs(next);
    ++k;
  }
  out.value = {to_double(sum), 0.0};
  out.orders_used = k;
  if (!out.optimum_reached) out.error_estimate = to_double(prev);
  return out;
}

}  // namespace anharmonic
