#pragma once

// The ten acceptance criteria, shared by `anharmonic checkall` and the
// acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anharmonic/anharmonic.hpp"
#include "cli.hpp"

namespace anharmonic::cli {

namespace acceptance {

inline std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
    pass = pass && ok;
  }
};

inline Outcome actions() {
  Outcome o;
  const double a4 = instanton_action_numeric(4), a3 = instanton_action_numeric(3);
  o.check(std::fabs(a4 - 1.0 / 3.0) < 1e-10, "M=4 action err " + fmt("%.1e", std::fabs(a4 - 1.0 / 3.0)));
  o.check(std::fabs(a3 - 2.0 / 15.0) < 1e-10, "M=3 action err " + fmt("%.1e", std::fabs(a3 - 2.0 / 15.0)));
  o.check(std::fabs(action_from_beta(4) - a4) < 1e-9 && std::fabs(action_from_beta(3) - a3) < 1e-9,
          "beta route agrees");
  return o;
}

inline Outcome oracle_equivalence() {
  Outcome o;
  int compared = 0;
  bool all = true;
  for (int M : {3, 4})
    for (int n : {0, 1, 2}) {
      const auto spec = OscillatorSpec::natural(M, n);
      all = all && perturb_coefficients(spec, 4) == oracle_rs_coefficients(spec, 4);
      ++compared;
    }
  o.check(all, std::to_string(compared) + " (M, n) pairs equal through K=4");
  return o;
}

inline Outcome cubic_large_order() {
  Outcome o;
  const int K = 40;
  for (int n : {0, 1}) {
    const auto exact = perturb_coefficients(OscillatorSpec::natural(3, n), K);
    const double r0 = ratio(exact[K], bender_wu_asymptotic(3, n, K));
    const double r2 = ratio(exact[K], large_order_from_dispersion(large_order_model(3, n), K, 2));
    o.check(std::fabs(r0 - 1.0) <= 0.05, "n=" + std::to_string(n) + " leading ratio " + fmt("%.5f", r0));
    o.check(std::fabs(r2 - 1.0) <= 0.005, "n=" + std::to_string(n) + " j=2 ratio " + fmt("%.6f", r2));
  }
  return o;
}

inline Outcome quartic_large_order() {
  Outcome o;
  const int K = 40;
  const auto exact = perturb_coefficients(OscillatorSpec::natural(4, 0), K);
  const double r2 = ratio(exact[K], large_order_from_dispersion(large_order_model(4, 0), K, 2));
  o.check(std::fabs(r2 - 1.0) <= 0.01, "E_{0,40} j=2 ratio " + fmt("%.6f", r2));
  return o;
}

inline Outcome spectral_widths() {
  Outcome o;
  struct Case {
    int M;
    double g;
  };
  for (const auto& c : {Case{3, 0.01}, Case{4, -0.03}}) {
    const auto spec = OscillatorSpec::natural(c.M, 0, c.g);
    const auto res = resonance_energy(spec);
    const auto t = imag_energy_optimal(c.M, 0, c.g);
    const double spectral = std::fabs(res.energy.imag());
    const double series = std::fabs(t.value.real());
    const double budget = t.error_estimate + 0.01 * series;
    o.check(res.converged && std::fabs(spectral - series) <= budget,
            "M=" + std::to_string(c.M) + " |Im| spectral " + fmt("%.6e", spectral) + " vs series " +
                fmt("%.6e", series) + " budget " + fmt("%.2e", budget));
  }
  return o;
}

inline Outcome strong_coupling() {
  Outcome o;
  const double ref[3] = {0.762851775, 2.711079923, 4.989240088};
  for (int n = 0; n < 3; ++n) {
    const auto s = strong_coupling_leading(3, n);
    const double rel = std::fabs(s.modulus - ref[n]) / ref[n];
    o.check(rel < 1e-6 && s.phase_error < 1e-6,
            "e_" + std::to_string(n) + " = " + fmt("%.9f", s.modulus) + " rel " + fmt("%.1e", rel) +
                " phase err " + fmt("%.1e", s.phase_error));
  }
  return o;
}

inline Outcome dispersion() {
  Outcome o;
  struct Case {
    int M;
    double g, lo;
  };
  for (const auto& c : {Case{3, 0.02, 0.005}, Case{4, -0.05, 0.015}}) {
    const auto profile = build_imag_profile(c.M, 0, log_spaced(c.lo, 50.0, 40));
    const double re = reconstruct_real_energy(profile, 0, c.g);
    const auto res = resonance_energy(OscillatorSpec::natural(c.M, 0, c.g));
    const double d = std::fabs(re - res.energy.real());
    o.check(d < 1e-3, "M=" + std::to_string(c.M) + " g=" + fmt("%g", c.g) + " |diff| " + fmt("%.2e", d));
  }
  return o;
}

inline Outcome pt_reality() {
  Outcome o;
  ResonanceOptions opts;
  opts.compute_stability = false;
  double worst = 0.0;
  for (double g : {-0.01, -0.05, -0.1})
    for (int n = 0; n < 4; ++n) {
      const auto spec = OscillatorSpec::natural(3, n, g);
      const auto r = resonance_energy(spec, n, 256, default_theta(spec), opts);
      worst = std::max(worst, std::fabs(r.energy.imag()));
    }
  o.check(worst < 1e-8, "max |Im| over 12 levels " + fmt("%.1e", worst));
  return o;
}

inline Outcome model_integral() {
  Outcome o;
  double lo = HUGE_VAL, hi = 0.0;
  std::string ratios;
  for (double b : {0.05, 0.1, 0.2}) {
    const auto m = model_integral_check(b, 30);
    const double c = m.difference / (std::pow(b, 8) * std::fabs(std::log(b)));
    lo = std::min(lo, std::fabs(c));
    hi = std::max(hi, std::fabs(c));
    ratios += (ratios.empty() ? "" : ", ") + fmt("%.4f", c);
  }
  o.check(hi / lo <= 4.0 && hi <= 10.0, "diff/(b^8|ln b|) = " + ratios);
  return o;
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Outcome properties() {
  Outcome o;
  double eom = 0.0, energy = 0.0;
  for (int M : {3, 4})
    for (int branch : {1, -1})
      for (int i = 0; i <= 200; ++i) {
        const double t = -10.0 + 0.1 * i;
        eom = std::max(eom, equation_of_motion_residual(M, t, branch));
        energy = std::max(energy, zero_energy_residual(M, t, branch));
      }
  o.check(eom < 1e-10, "EOM residual " + fmt("%.1e", eom));
  o.check(energy < 1e-10, "zero-energy residual " + fmt("%.1e", energy));

  const double c3 = conjugate_branch_check(OscillatorSpec::natural(3, 0, 0.05), 0, 256, 0.4);
  const double c4 = conjugate_branch_check(OscillatorSpec::natural(4, 0, -0.1), 0, 256, 0.35);
  o.check(std::max(c3, c4) < 1e-8, "conjugate branches " + fmt("%.1e", std::max(c3, c4)));

  bool odd_zero = true;
  for (int n : {0, 1, 2}) {
    const auto bw = bender_wu_expand(OscillatorSpec::natural(3, n), 41);
    for (std::size_t k = 1; k < bw.energy_by_lambda.size(); k += 2) odd_zero = odd_zero && bw.energy_by_lambda[k] == 0;
  }
  o.check(odd_zero, "odd-lambda energies vanish through lambda^41");

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "anharmonic_rerun";
  fs::create_directories(dir);
  const auto file = (dir / "run.json").string();
  const auto traj = (dir / "trajectory.tsv").string();
  bool same = true;
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"perturb", "--degree", "3", "--level", "0", "--orders", "12"},
        std::vector<std::string>{"instanton", "--degree", "4", "--trajectory", traj},
        std::vector<std::string>{"largeorder", "--degree", "4", "--level", "0", "--corrections", "2"}}) {
    std::string outputs[2];
    for (auto& text : outputs) {
      auto args = base;
      args.insert(args.end(), {"-o", file});
      std::ostringstream out, err;
      run(args, out, err);
      text = slurp(file) + slurp(traj);
    }
    same = same && !outputs[0].empty() && outputs[0] == outputs[1];
  }
  fs::remove_all(dir);
  o.check(same, "CLI reruns byte-identical");
  return o;
}

}  // namespace acceptance

inline std::vector<CriterionResult> run_acceptance(const std::set<int>& only) {
  struct Entry {
    int id;
    const char* name;
    acceptance::Outcome (*fn)();
  };
  static const Entry entries[] = {
      {1, "instanton actions", acceptance::actions},
      {2, "oracle equivalence", acceptance::oracle_equivalence},
      {3, "cubic large order", acceptance::cubic_large_order},
      {4, "quartic large order via dispersion", acceptance::quartic_large_order},
      {5, "spectral vs instanton widths", acceptance::spectral_widths},
      {6, "strong-coupling coefficients", acceptance::strong_coupling},
      {7, "dispersion reconstruction", acceptance::dispersion},
      {8, "PT reality", acceptance::pt_reality},
      {9, "model integral", acceptance::model_integral},
      {10, "property suites", acceptance::properties},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    if (!only.empty() && !only.count(e.id)) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto o = e.fn();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(r);
  }
  return out;
}

}  // namespace anharmonic::cli
