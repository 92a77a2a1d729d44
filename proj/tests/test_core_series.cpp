#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace anharmonic;
using testing_support::oracles;
using testing_support::oracle_rational;

namespace {

RationalSeries width_bracket(int M, int n) { return decay_width_series(M, n).bracket_series; }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  return make_rational(num(rng), den(rng));
}

}  // namespace

TEST(Rational, StoredInReducedForm) {
  const Rational r = make_rational(6, -4);
  EXPECT_EQ(to_fraction_string(r), "-3/2");
  EXPECT_TRUE(is_canonical(r));
  EXPECT_EQ(to_fraction_string(make_rational(0, 7)), "0/1");
  EXPECT_EQ(to_fraction_string(parse_rational("4/8")), "1/2");
  EXPECT_EQ(to_fraction_string(parse_rational("-12")), "-12/1");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a/b", "1/-2", " 1/2"})
    EXPECT_THROW(parse_rational(bad), DomainError) << bad;
  EXPECT_THROW(make_rational(1, 0), DomainError);
}

TEST(Rational, ArithmeticIsExact) {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 500; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    const Rational sum = a + b;
    const Rational back = sum - b;
    EXPECT_EQ(back, a);
    EXPECT_TRUE(is_canonical(sum));
    EXPECT_TRUE(is_canonical(Rational(a * b)));
  }
}

TEST(Rational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(to_double(make_rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(make_rational(-2, 3)), -2.0 / 3.0);
  EXPECT_EQ(to_double(make_rational(1, 10)), 0.1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    EXPECT_EQ(to_double(exact_rational(x)), x);
  }
  // a value exactly between two doubles rounds to even
  const Rational tie = exact_rational(1.0) + Rational(1) / Rational(Integer(1) << 53);
  EXPECT_EQ(to_double(tie), 1.0);
}

TEST(SeriesEval, ZeroCouplingReturnsLeadingCoefficient) {
  const auto cubic = perturb_coefficients(OscillatorSpec::natural(3, 0), 6);
  for (int K = 0; K <= 6; ++K) EXPECT_EQ(series_eval(cubic, 0.0, K), std::complex<double>(0.5, 0.0));
  for (int M : {3, 4})
    for (int n : {0, 1}) {
      const auto s = width_bracket(M, n);
      EXPECT_EQ(series_eval(s, 0.0, s.k_max()).real(), to_double(s[0]));
    }
}

TEST(SeriesEval, CubicBracketFirstOrder) {
  EXPECT_DOUBLE_EQ(series_eval(width_bracket(3, 0), 0.01, 1).real(), 0.894375);
}

TEST(SeriesEval, QuarticBracketMatchesExactEvaluation) {
  const Rational expected = oracle_rational(oracles()["quartic_n0_bracket_g-0.02_K2"]);
  EXPECT_EQ(series_eval(width_bracket(4, 0), -0.02, 2).real(),
            to_double(series_eval_exact(width_bracket(4, 0), exact_rational(-0.02), 2)));
  EXPECT_NEAR(series_eval(width_bracket(4, 0), -0.02, 2).real(), to_double(expected), 1e-16);
}

TEST(SeriesEval, ComplexCoupling) {
  const RationalSeries s({make_rational(1), make_rational(2), make_rational(3)});
  const std::complex<double> g(0.5, 0.25);
  const auto v = series_eval(s, g, 2);
  const auto expected = 1.0 + 2.0 * g + 3.0 * g * g;
  EXPECT_NEAR(v.real(), expected.real(), 1e-15);
  EXPECT_NEAR(v.imag(), expected.imag(), 1e-15);
}

TEST(SeriesEval, OrderOutOfRange) {
  const auto s = width_bracket(3, 0);
  EXPECT_THROW(series_eval(s, 0.1, -1), RangeError);
  EXPECT_THROW(series_eval(s, 0.1, s.k_max() + 1), RangeError);
}

TEST(OptimalTruncation, ConvergentCaseReportsNoOptimum) {
  const RationalSeries s({make_rational(1), make_rational(-1, 2), make_rational(1, 4)});
  const auto t = optimal_truncation(s, 1.0);
  EXPECT_FALSE(t.optimum_reached);
  EXPECT_EQ(t.value.real(), 0.75);
  EXPECT_EQ(t.orders_used, 2);
  EXPECT_EQ(t.error_estimate, 0.25);
}

TEST(OptimalTruncation, StopsBeforeGrowingTerm) {
  const RationalSeries s({make_rational(2), make_rational(5)});
  const auto t = optimal_truncation(s, 1.0);
  EXPECT_TRUE(t.optimum_reached);
  EXPECT_EQ(t.value.real(), 2.0);
  EXPECT_EQ(t.orders_used, 0);
  EXPECT_EQ(t.error_estimate, 5.0);

  const RationalSeries single({make_rational(3, 7)});
  EXPECT_EQ(optimal_truncation(single, 0.3).value.real(), 3.0 / 7.0);
}

TEST(OptimalTruncation, TiesResolveToEarlierIndex) {
  const RationalSeries s({make_rational(1), make_rational(1), make_rational(1)});
  const auto t = optimal_truncation(s, 1.0);
  EXPECT_EQ(t.orders_used, 0);
  EXPECT_EQ(t.value.real(), 1.0);
}

TEST(OptimalTruncation, CubicBracketAtSmallestTerm) {
  const auto s = width_bracket(3, 0);
  const double g = 0.01;
  const auto t = optimal_truncation(s, g);
  std::vector<double> mags;
  for (int k = 0; k <= s.k_max(); ++k) mags.push_back(std::fabs(to_double(s[std::size_t(k)]) * std::pow(g, k)));
  int k = 0;
  while (k < s.k_max() && mags[std::size_t(k) + 1] < mags[std::size_t(k)]) ++k;
  EXPECT_EQ(t.orders_used, k);
  // the error estimate is the distance to the sum one order later
  if (t.optimum_reached)
    EXPECT_NEAR(t.error_estimate, std::fabs(series_eval(s, g, k + 1).real() - t.value.real()), 1e-15);
}

TEST(OptimalTruncation, Preconditions) {
  EXPECT_THROW(optimal_truncation(width_bracket(3, 0), 0.0), DomainError);
  EXPECT_THROW(optimal_truncation(RationalSeries{}, 0.1), RangeError);
}

TEST(Generalized, EmptyInstantonSectorIsPerturbativeSum) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(3, 0);
  e.perturbative = perturb_coefficients(e.oscillator, 5);
  for (double g : {0.001, 0.02, 0.1}) {
    const auto v = eval_generalized(e, g, 5, 0);
    EXPECT_EQ(v.value, series_eval(e.perturbative, g, 5));
  }
}

TEST(Generalized, OneInstantonTermMatchesWidthSeries) {
  struct Case {
    int M;
    double g;
  };
  for (const auto& c : {Case{3, 0.02}, Case{4, -0.05}}) {
    GeneralizedExpansion e;
    e.oscillator = OscillatorSpec::natural(c.M, 0);
    e.perturbative = perturb_coefficients(e.oscillator, 3);
    e.instanton_terms.push_back(one_instanton_term(decay_width_series(c.M, 0)));
    const auto v = eval_generalized(e, c.g, 3, 8);
    EXPECT_EQ(v.log_branch, "principal");
    EXPECT_EQ(v.instanton.real(), 0.0);
    EXPECT_NEAR(v.value.imag(), imag_energy(c.M, 0, c.g, 8), 1e-14 * std::fabs(imag_energy(c.M, 0, c.g, 8)));
    EXPECT_EQ(v.value.real(), v.perturbative.real());
  }
}

TEST(Generalized, LogarithmUsesPrincipalBranch) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(3, 0);
  e.perturbative = RationalSeries({make_rational(0)});
  InstantonTerm t = one_instanton_term(decay_width_series(3, 0));
  t.J = 2;
  t.L = 1;
  t.correction_series = RationalSeries({make_rational(1)});
  e.instanton_terms.push_back(t);
  const double g = 0.05;
  const auto v = eval_generalized(e, g, 0, 0);
  // [i a]^2 ln(-8/g) = -a^2 (ln(8/g) + i pi)
  const double a = std::exp(0.5 * std::log(1.0 / std::numbers::pi) - 0.5 * std::log(g) - (2.0 / 15.0) / g);
  EXPECT_NEAR(v.instanton.real(), -a * a * std::log(8.0 / g), 1e-12 * a * a);
  EXPECT_NEAR(v.instanton.imag(), -a * a * std::numbers::pi, 1e-12 * a * a);
}

TEST(Generalized, StableRegionRefused) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(4, 0);
  e.perturbative = perturb_coefficients(e.oscillator, 2);
  EXPECT_THROW(eval_generalized(e, 0.05, 2, 0), DomainError);
  e.oscillator = OscillatorSpec::natural(3, 0);
  EXPECT_THROW(eval_generalized(e, -0.05, 2, 0), DomainError);
}

TEST(Generalized, TruncationOrdersWithinStoredData) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(3, 0);
  e.perturbative = perturb_coefficients(e.oscillator, 2);
  e.instanton_terms.push_back(one_instanton_term(decay_width_series(3, 0)));
  EXPECT_THROW(eval_generalized(e, 0.02, 3, 0), RangeError);
  EXPECT_THROW(eval_generalized(e, 0.02, 2, 9), RangeError);
}

TEST(Generalized, StructuralInvariants) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(3, 0);
  e.perturbative = perturb_coefficients(e.oscillator, 1);
  e.instanton_terms.push_back(one_instanton_term(decay_width_series(3, 0)));
  e.instanton_terms.push_back(one_instanton_term(decay_width_series(3, 0)));
  EXPECT_THROW(e.validate(), DomainError);

  InstantonTerm t = one_instanton_term(decay_width_series(3, 0));
  t.L = 1;
  EXPECT_THROW(t.validate(), DomainError);
  t.L = 0;
  t.action_A = make_rational(-1, 3);
  EXPECT_THROW(t.validate(), DomainError);

  GeneralizedExpansion empty;
  empty.oscillator = OscillatorSpec::natural(3, 0);
  EXPECT_THROW(empty.validate(), DomainError);
}

TEST(ModelIntegral, SmallBetaLimit) {
  const auto m = model_integral_check(1e-6);
  EXPECT_NEAR(m.numeric, 1.0, 1e-10);
}

TEST(ModelIntegral, MatchesHighPrecisionQuadrature) {
  for (const char* b : {"0.05", "0.1", "0.2", "0.25", "0.5"}) {
    const auto& ref = oracles()["model_integral"][b];
    const auto m = model_integral_check(std::stod(b), 30);
    EXPECT_NEAR(m.numeric, testing_support::oracle_double(ref["numeric"]), 2e-16) << b;
    EXPECT_NEAR(m.difference, testing_support::oracle_double(ref["difference"]),
                1e-9 * std::fabs(testing_support::oracle_double(ref["difference"])))
        << b;
  }
}

TEST(ModelIntegral, RemainderBoundAtOneTenth) {
  const double b = 0.1;
  const auto m = model_integral_check(b, 30);
  EXPECT_LE(std::fabs(m.difference), 10.0 * std::pow(b, 8) * std::fabs(std::log(b)));
}

TEST(ModelIntegral, RemainderShrinksWithBeta) {
  EXPECT_LT(std::fabs(model_integral_check(0.25).difference), std::fabs(model_integral_check(0.5).difference));
}

TEST(ModelIntegral, RemainderScalesAsBeta8LogBeta) {
  double lo = HUGE_VAL, hi = 0.0;
  for (double b : {0.05, 0.1, 0.2}) {
    const double c = std::fabs(model_integral_check(b, 30).difference) / (std::pow(b, 8) * std::fabs(std::log(b)));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_LE(hi / lo, 4.0);
}

TEST(ModelIntegral, PrecisionKnobAgrees) {
  const auto d = model_integral_check(0.1, 15), e = model_integral_check(0.1, 18), f = model_integral_check(0.1, 30);
  EXPECT_NEAR(d.difference, f.difference, 1e-14);
  EXPECT_NEAR(e.difference, f.difference, 1e-16);
}

TEST(ModelIntegral, DomainChecks) {
  EXPECT_THROW(model_integral_check(0.0), DomainError);
  EXPECT_THROW(model_integral_check(-0.1), DomainError);
  EXPECT_THROW(model_integral_check(0.6), DomainError);
}

TEST(Interchange, SeriesRoundTrip) {
  const auto s = perturb_coefficients(OscillatorSpec::natural(3, 1), 12);
  const auto j = series_to_json(s);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  for (const auto& c : j["coefficients"]) EXPECT_TRUE(c.is_string());
  EXPECT_EQ(series_from_json(j), s);
  EXPECT_EQ(series_to_json(series_from_json(json::parse(j.dump()))).dump(), j.dump());
}

TEST(Interchange, ExpansionRoundTrip) {
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(4, 1);
  e.perturbative = perturb_coefficients(e.oscillator, 6);
  e.instanton_terms.push_back(one_instanton_term(decay_width_series(4, 1)));
  const auto text = expansion_to_json(e).dump();
  const auto back = expansion_from_json(json::parse(text));
  EXPECT_EQ(back.perturbative, e.perturbative);
  ASSERT_EQ(back.instanton_terms.size(), 1u);
  EXPECT_EQ(back.instanton_terms[0].correction_series.coefficients, e.instanton_terms[0].correction_series.coefficients);
  EXPECT_EQ(expansion_to_json(back).dump(), text);
}

TEST(Interchange, RejectsFloatsAndUnknownSchema) {
  auto j = series_to_json(RationalSeries({make_rational(1, 2)}));
  j["coefficients"][0] = 0.5;
  EXPECT_THROW(series_from_json(j), DomainError);
  j = series_to_json(RationalSeries({make_rational(1, 2)}));
  j["schema_version"] = "0.0";
  EXPECT_THROW(series_from_json(j), DomainError);
  j = series_to_json(RationalSeries({make_rational(1, 2)}));
  j["k_max"] = 3;
  EXPECT_THROW(series_from_json(j), DomainError);
}
