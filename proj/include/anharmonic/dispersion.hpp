#pragma once

// Once-subtracted dispersion relation for the resonance energies:
//
//   E_n(g) = n + 1/2 + (G/pi) PV int_0^inf ds Im E_n(sigma s) / (s (s - G)),
//
// with sigma = +1, G = g for the odd oscillator (cut on g > 0) and
// sigma = -1, G = -g for the even one (cut on g < 0, mapped s -> -s). Im E
// is the negative resonance width as produced by a positive rotation angle.
//
// The integrand comes from an ImagEnergyProfile: a monotone cubic
// interpolant of log(-Im E) against log s on the grid, the one-instanton
// series below the grid, and the strong-coupling form
// Im[s^p (a + b s^{-2p})] above it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/instanton.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/quadrature.hpp"
#include "anharmonic/spectra.hpp"

namespace anharmonic {

/// Fritsch-Carlson monotone piecewise-cubic Hermite interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw DomainError("MonotoneCubic needs >= 2 matching points");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      if (!(h[i] > 0.0)) throw DomainError("MonotoneCubic abscissae must increase strictly");
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double x) const {
    const std::size_t n = x_.size();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * d_[i + 1];
  }

 private:
  static double end_slope(double h0, double h1, double d0, double d1) {
    double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::fabs(d) > std::fabs(3 * d0)) d = 3 * d0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

/// Below-grid model: the one-instanton width series summed by optimal
/// truncation, or nothing (integrand taken as zero).
struct HeadModel {
  bool instanton = false;
  int degree_M = 3;
  int level_n = 0;
};

/// Above-grid model Im[s^power (leading + subleading s^{-2 power})].
struct TailModel {
  double power = 0.0;
  std::complex<double> leading{0.0, 0.0};
  std::complex<double> subleading{0.0, 0.0};

  double operator()(double s) const {
    if (leading == 0.0 && subleading == 0.0) return 0.0;
    return (std::pow(s, power) * (leading + subleading * std::pow(s, -2.0 * power))).imag();
  }
};

class ImagEnergyProfile {
 public:
  /// `grid` holds positive abscissae s (for the even oscillator s = -g),
  /// `values` Im E_n at the matching coupling, all <= 0.
  ImagEnergyProfile(int degree_M, int level_n, std::vector<double> grid, std::vector<double> values,
                    HeadModel head = {}, TailModel tail = {}, double crossover_tolerance = 0.05)
      : degree_M_(degree_M),
        level_n_(level_n),
        grid_(std::move(grid)),
        values_(std::move(values)),
        head_(head),
        tail_(tail) {
    if (degree_M_ < 3) throw DomainError("profile degree must be >= 3");
    if (grid_.size() < 2 || grid_.size() != values_.size())
      throw DomainError("profile needs >= 2 nodes with one value each");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!(grid_[i] > 0.0)) throw DomainError("profile grid must be positive");
      if (i > 0 && !(grid_[i] > grid_[i - 1]))
        throw DomainError("profile grid must be strictly increasing");
      if (values_[i] > 0.0) throw DomainError("profile values must be <= 0");
    }
    log_space_ = std::all_of(values_.begin(), values_.end(), [](double v) { return v < 0.0; });
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      lx.push_back(std::log(grid_[i]));
      ly.push_back(log_space_ ? std::log(-values_[i]) : values_[i]);
    }
    interp_ = MonotoneCubic(std::move(lx), std::move(ly));
    check_crossovers(crossover_tolerance);
  }

  int degree_M() const { return degree_M_; }
  int level_n() const { return level_n_; }
  bool mirrored() const { return degree_M_ % 2 == 0; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const HeadModel& head() const { return head_; }
  const TailModel& tail() const { return tail_; }

  /// Im E_n at abscissa s > 0 (coupling sigma * s).
  double imag_at(double s) const {
    if (s < grid_.front()) return head_value(s);
    if (s > grid_.back()) return tail_(s);
    const double y = interp_(std::log(s));
    return log_space_ ? -std::exp(y) : y;
  }

  double head_value(double s) const {
    if (!head_.instanton || s <= 0.0) return 0.0;
    const double g = mirrored() ? -s : s;
    return imag_energy_optimal(head_.degree_M, head_.level_n, g).value.real();
  }

 private:
  void check_crossovers(double tol) const {
    auto mismatch = [](double model, double node) {
      return std::fabs(model - node) / std::max(std::fabs(node), 1e-300);
    };
    if (head_.instanton) {
      const double m = mismatch(head_value(grid_.front()), values_.front());
      if (m > tol)
        throw DomainError("head model differs from the first grid node by " + std::to_string(m * 100) +
                          "%");
    }
    const bool has_tail = tail_.leading != 0.0 || tail_.subleading != 0.0;
    if (has_tail && grid_.size() >= 3) {
      const std::size_t k = grid_.size() - 3;
      const double m = mismatch(tail_(grid_[k]), values_[k]);
      if (m > tol)
        throw DomainError("tail model differs from grid node " + std::to_string(k) + " by " +
                          std::to_string(m * 100) + "%");
    }
  }

  int degree_M_;
  int level_n_;
  std::vector<double> grid_;
  std::vector<double> values_;
  HeadModel head_;
  TailModel tail_;
  bool log_space_ = true;
  MonotoneCubic interp_;
};

/// Exponent p of the strong-coupling growth E ~ g^p: 1/(M+2) for sqrt(g) x^M,
/// 2/(M+2) for g x^M.
inline double strong_coupling_power(int M) {
  return (M % 2 != 0 ? 1.0 : 2.0) / (M + 2);
}

/// Fits Im[s^p (a + b s^{-2p})] through two complex energies.
inline TailModel fit_tail(int M, double s1, std::complex<double> e1, double s2, std::complex<double> e2) {
  TailModel t;
  t.power = strong_coupling_power(M);
  const double p = t.power;
  const double a11 = std::pow(s1, p), a12 = std::pow(s1, -p);
  const double a21 = std::pow(s2, p), a22 = std::pow(s2, -p);
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) throw DomainError("tail fit is singular");
  t.leading = (e1 * a22 - e2 * a12) / det;
  t.subleading = (a11 * e2 - a21 * e1) / det;
  return t;
}

struct ProfileOptions {
  int basis_N = 256;
  std::optional<double> theta;  ///< default: 0.4 odd, 0.35 even
  double crossover_tolerance = 0.05;
};

/// Builds a profile from spectral resonance energies at `nodes` (positive
/// abscissae; the even oscillator is evaluated at g = -s).
inline ImagEnergyProfile build_imag_profile(int M, int n, const std::vector<double>& nodes,
                                            const ProfileOptions& opts = {}) {
  if (nodes.size() < 3) throw DomainError("profile construction needs at least 3 nodes");
  const bool even = M % 2 == 0;
  std::vector<double> values;
  std::vector<std::complex<double>> energies;
  ResonanceOptions ropts;
  ropts.compute_stability = false;
  for (double s : nodes) {
    auto spec = OscillatorSpec::natural(M, n, even ? -s : s);
    const double theta = opts.theta.value_or(default_theta(spec));
    const auto r = resonance_energy(spec, n, opts.basis_N, theta, ropts);
    energies.push_back(r.energy);
    values.push_back(std::min(r.energy.imag(), 0.0));
  }
  const std::size_t P = nodes.size();
  const TailModel tail = fit_tail(M, nodes[P - 2], energies[P - 2], nodes[P - 1], energies[P - 1]);
  HeadModel head;
  if ((M == 3 || M == 4) && (n == 0 || n == 1)) head = {true, M, n};
  return ImagEnergyProfile(M, n, nodes, std::move(values), head, tail, opts.crossover_tolerance);
}

/// `count` log-spaced nodes on [lo, hi].
inline std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw DomainError("log_spaced: bad range");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
  out.front() = lo;
  out.back() = hi;
  return out;
}

struct DispersionBreakdown {
  double energy = 0.0;
  double head = 0.0;  ///< integral contributions before the G/pi factor
  double grid = 0.0;
  double tail = 0.0;
};

namespace detail {

/// int_{s_P}^inf Im[s^p (a + b s^{-2p})] / (s (s - G)) ds by the geometric
/// expansion 1/(s - G) = sum_k G^k / s^{k+1}, convergent for G < s_P.
inline double tail_integral(const TailModel& tail, double sP, double G) {
  if (tail.leading == 0.0 && tail.subleading == 0.0) return 0.0;
  const double p = tail.power;
  double sum = 0.0;
  double ratio_k = 1.0;  // (G / sP)^k
  for (int k = 0; k < 400; ++k) {
    const std::complex<double> term =
        tail.leading * std::pow(sP, p - 1.0) / (k + 1.0 - p) +
        tail.subleading * std::pow(sP, -p - 1.0) / (k + 1.0 + p);
    const double add = ratio_k * term.imag();
    sum += add;
    if (std::fabs(add) <= 1e-17 * std::fabs(sum)) break;
    ratio_k *= G / sP;
  }
  return sum;
}

}  // namespace detail

/// Re E_n(g) from the profile. g must sit strictly inside the grid span
/// (|g| in (s_1, s_P)); a g that coincides with a node is bracketed by the
/// two neighbouring panels.
inline DispersionBreakdown reconstruct_real_energy_detail(const ImagEnergyProfile& profile, int n,
                                                          double g) {
  const double G = profile.mirrored() ? -g : g;
  const auto& s = profile.grid();
  if (!(G > s.front() && G < s.back()))
    throw DomainError("coupling |g| = " + std::to_string(std::fabs(g)) + " outside the profile span (" +
                      std::to_string(s.front()) + ", " + std::to_string(s.back()) + ")");
  if (n != profile.level_n()) throw DomainError("profile level does not match n");

  const double tol = 1e-10;
  auto f = [&](double x) { return profile.imag_at(x) / x; };
  DispersionBreakdown out;

  if (profile.head().instanton) {
    auto h = [&](double x) { return x > 0.0 ? f(x) / (x - G) : 0.0; };
    out.head = integrate<double>(h, 0.0, s.front(), tol).value;
  }

  // panel boundaries; drop a node that coincides with G
  std::vector<double> edges;
  for (double x : s)
    if (std::fabs(x - G) > 1e-12 * G) edges.push_back(x);
  const double fG = f(G);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    if (a < G && G < b) {
      // at x == G the difference quotient is replaced by f'(G)
      const double dG = 1e-6 * G;
      auto h = [&](double x) {
        if (x == G) return (f(G + dG) - f(G - dG)) / (2.0 * dG);
        return (f(x) - fG) / (x - G);
      };
      out.grid += integrate<double>(h, a, b, tol).value + fG * std::log((b - G) / (G - a));
    } else {
      auto h = [&](double x) { return f(x) / (x - G); };
      out.grid += integrate<double>(h, a, b, tol).value;
    }
  }
  out.tail = detail::tail_integral(profile.tail(), s.back(), G);
  out.energy = n + 0.5 + G / std::numbers::pi * (out.head + out.grid + out.tail);
  return out;
}

inline double reconstruct_real_energy(const ImagEnergyProfile& profile, int n, double g) {
  return reconstruct_real_energy_detail(profile, n, g).energy;
}

}  // namespace anharmonic
