#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anharmonic/errors.hpp"

namespace anharmonic {

/// Arbitrary-precision rational. GMP keeps results of arithmetic in canonical
/// form (gcd(|num|, den) = 1, den > 0, zero is 0/1); values built from text go
/// through `parse_rational`, which canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw DomainError("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// Always "num/den", even for integers; the interchange format uses this.
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

inline bool is_canonical(const Rational& r) {
  if (r.get_den() <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

/// Natural log of |z| for integers far beyond double range.
inline double log_abs(const Integer& z) {
  if (z == 0) return -HUGE_VAL;
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

inline double log_abs(const Rational& r) {
  return log_abs(r.get_num()) - log_abs(r.get_den());
}

inline int sign(const Rational& r) { return sgn(r); }

/// Round-to-nearest-even conversion (mpq_get_d truncates). Subnormal results
/// are not specially rounded.
inline double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  Integer a = abs(r.get_num());
  Integer b = r.get_den();
  const long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
  const long shift = 64 - e;
  if (shift >= 0)
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(shift));
  else
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(-shift));
  Integer q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const auto drop = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;
  Integer low, half;
  mpz_fdiv_r_2exp(low.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(drop));
  mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(drop));
  mpz_setbit(half.get_mpz_t(), static_cast<unsigned long>(drop - 1));
  const int cmp_half = cmp(low, half);
  if (cmp_half > 0 || (cmp_half == 0 && (rem != 0 || mpz_odd_p(q.get_mpz_t()))))
    q += 1;
  const double mag = std::ldexp(q.get_d(), static_cast<int>(drop - shift));
  return sgn(r) < 0 ? -mag : mag;
}

/// Exact rational value of a finite double.
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational r(x);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

/// Power series in one variable with exact coefficients c_0..c_{K_max}.
struct RationalSeries {
  std::vector<Rational> coefficients;
  std::string variable = "g";

  RationalSeries() = default;
  RationalSeries(std::vector<Rational> coeffs, std::string var = "g")
      : coefficients(std::move(coeffs)), variable(std::move(var)) {}

  std::size_t size() const { return coefficients.size(); }
  bool empty() const { return coefficients.empty(); }
  /// Highest stored order; undefined for an empty series.
  int k_max() const { return static_cast<int>(coefficients.size()) - 1; }
  const Rational& operator[](std::size_t k) const { return coefficients.at(k); }

  friend bool operator==(const RationalSeries& a, const RationalSeries& b) {
    return a.variable == b.variable && a.coefficients == b.coefficients;
  }
};

inline RationalSeries parse_series(const std::vector<std::string>& coeffs,
                                   std::string variable = "g") {
  RationalSeries s;
  s.variable = std::move(variable);
  s.coefficients.reserve(coeffs.size());
  for (const auto& c : coeffs) s.coefficients.push_back(parse_rational(c));
  return s;
}

}  // namespace anharmonic
