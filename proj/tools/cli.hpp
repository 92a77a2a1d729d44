#pragma once

// Command-line front end. `run` never throws: results go to `out` (or the
// --output file), errors to `err` as one-line JSON records.
//
// Exit codes: 0 success, 1 domain/range error, 2 usage error,
// 3 non-convergence.

#include <CLI11.hpp>
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anharmonic/anharmonic.hpp"

namespace anharmonic::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kPrecisionEnv = "ANHARMONIC_PRECISION";
inline constexpr int kDefaultPrecision = 10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::optional<int> degree_M;
  std::optional<int> level_n;
  std::optional<double> coupling_g;
  std::optional<int> orders_K;
  std::optional<int> basis_N;
  std::optional<double> theta;
  std::string output_format = "json";
  int precision_digits = kDefaultPrecision;
  std::string output_path;
};

struct Report {
  json body = json::object();
  json provenance = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json warnings = json::array();
  int exit_code = 0;
};

/// Outcome of one acceptance criterion; shared with acceptance.hpp.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Defined in acceptance.hpp.
std::vector<CriterionResult> run_acceptance(const std::set<int>& only);

namespace detail {

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["degree_M"] = opt_json(c.degree_M);
  j["level_n"] = opt_json(c.level_n);
  j["coupling_g"] = opt_json(c.coupling_g);
  j["orders_K"] = opt_json(c.orders_K);
  j["basis_N"] = opt_json(c.basis_N);
  j["theta"] = opt_json(c.theta);
  j["output_format"] = c.output_format;
  j["precision_digits"] = c.precision_digits;
  j["output_path"] = c.output_path.empty() ? json(nullptr) : json(c.output_path);
  return j;
}

/// Rounds to `digits` significant digits; non-finite values become null.
inline json number(double x, int digits) {
  if (!std::isfinite(x)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

inline json complex_json(std::complex<double> z, int digits) {
  json j;
  j["re"] = number(z.real(), digits);
  j["im"] = number(z.imag(), digits);
  return j;
}

inline std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render(const Report& r, const RunConfig& cfg) {
  if (cfg.output_format == "json") {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = config_json(cfg);
    for (auto it = r.body.begin(); it != r.body.end(); ++it) doc[it.key()] = it.value();
    doc["provenance"] = r.provenance;
    doc["warnings"] = r.warnings;
    return doc.dump(2) + "\n";
  }
  const bool csv = cfg.output_format == "csv";
  const char sep = csv ? ',' : '\t';
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += sep;
      out += csv ? csv_escape(cells[i]) : cells[i];
    }
    out += '\n';
  };
  line(r.columns);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(cell_text(v));
    line(cells);
  }
  return out;
}

inline std::string error_record(const std::string& kind, const std::string& message, int code) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  return j.dump() + "\n";
}

inline std::string warning_record(const json& w) {
  json j;
  j["warning"] = w;
  return j.dump() + "\n";
}

inline std::string join_command(const std::vector<std::string>& args) {
  std::string s = "anharmonic";
  for (const auto& a : args) s += " " + a;
  return s;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

inline int need(const std::optional<int>& v, const char* flag) {
  require(v.has_value(), std::string(flag) + " is required");
  return *v;
}

inline double need(const std::optional<double>& v, const char* flag) {
  require(v.has_value(), std::string(flag) + " is required");
  return *v;
}

inline void check_degree(int M) { require(M >= 3, "--degree must be >= 3"); }
inline void check_level(int n) { require(n >= 0, "--level must be >= 0"); }

inline json series_coefficients(const RationalSeries& s) {
  json arr = json::array();
  for (const auto& c : s.coefficients) arr.push_back(to_fraction_string(c));
  return arr;
}

}  // namespace detail

struct Options {
  std::optional<int> degree, level, orders, basis;
  std::optional<double> coupling, theta;
  std::string format;
  std::optional<int> precision;
  std::string output;
  // subcommand-specific
  std::string trajectory_path;
  double t_min = -10.0, t_max = 10.0;
  int samples = 201;
  int branch = 1;
  int nodes = 40;
  std::optional<double> s_min;
  double s_max = 50.0;
  int k_min = 10, k_max = 40, k_step = 10;
  int corrections = 0;
  double beta = 0.1;
  int digits = 15;
  std::vector<int> only;
};

namespace detail {

inline Report cmd_perturb(const RunConfig& c) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const int K = need(c.orders_K, "--orders");
  check_degree(M);
  check_level(n);
  require(K >= 0, "--orders must be >= 0");
  const auto s = perturb_coefficients(OscillatorSpec::natural(M, n), K);
  Report r;
  r.body["variable"] = s.variable;
  r.body["k_max"] = s.k_max();
  r.body["coefficients"] = series_coefficients(s);
  r.provenance["coefficients"] = "exact";
  r.columns = {"K", "coefficient"};
  for (int k = 0; k <= s.k_max(); ++k) r.rows.push_back({k, to_fraction_string(s[std::size_t(k)])});
  return r;
}

inline Report cmd_oracle(const RunConfig& c) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const int K = need(c.orders_K, "--orders");
  check_degree(M);
  check_level(n);
  require(K >= 0 && K <= 4, "--orders must be in [0, 4] for the sum-over-states oracle");
  const auto spec = OscillatorSpec::natural(M, n);
  const auto rec = perturb_coefficients(spec, K);
  const auto orc = oracle_rs_coefficients(spec, K);
  Report r;
  json cmp = json::array();
  bool all = true;
  r.columns = {"K", "recursion", "oracle", "equal"};
  for (int k = 0; k <= K; ++k) {
    const bool eq = rec[std::size_t(k)] == orc[std::size_t(k)];
    all = all && eq;
    json e;
    e["K"] = k;
    e["recursion"] = to_fraction_string(rec[std::size_t(k)]);
    e["oracle"] = to_fraction_string(orc[std::size_t(k)]);
    e["equal"] = eq;
    cmp.push_back(e);
    r.rows.push_back({k, e["recursion"], e["oracle"], eq});
  }
  r.body["comparison"] = cmp;
  r.body["all_equal"] = all;
  r.provenance["comparison"] = "exact";
  if (!all) r.exit_code = 1;
  return r;
}

inline Report cmd_widths(const RunConfig& c) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const double g = need(c.coupling_g, "--coupling");
  require(M == 3 || M == 4, "--degree must be 3 or 4 for widths");
  require(n == 0 || n == 1, "--level must be 0 or 1 for widths");
  const int p = c.precision_digits;
  Report r;
  const auto s = decay_width_series(M, n);
  const double log_pref = log_width_prefactor(s, g);
  const double pref = width_prefactor(s, g);
  double bracket = 0.0, bracket_error = 0.0;
  int used = 0;
  bool optimum = true;
  std::string method;
  if (c.orders_K) {
    const int kmax = s.bracket_series.k_max();
    require(*c.orders_K >= 0 && *c.orders_K <= kmax,
            "--orders must be in [0, " + std::to_string(kmax) + "]");
    used = *c.orders_K;
    bracket = series_eval(s.bracket_series, g, used).real();
    bracket_error = used < kmax ? std::fabs(series_eval(s.bracket_series, g, used + 1).real() - bracket)
                                : std::numeric_limits<double>::quiet_NaN();
    method = "fixed_order";
  } else {
    const auto t = optimal_truncation(s.bracket_series, g);
    bracket = t.value.real();
    bracket_error = t.error_estimate;
    used = t.orders_used;
    optimum = t.optimum_reached;
    method = "optimal_truncation";
  }
  const double value = pref * bracket;
  const double estimate = std::fabs(pref) * bracket_error;
  bool reliable = true;
  if (std::fabs(g) > 0.1) {
    reliable = false;
    r.warnings.push_back("coupling |g| > 0.1 is outside the validated small-coupling range; "
                         "the asymptotic series is unreliable");
  }
  if (!(bracket_error <= 0.1 * std::fabs(bracket))) {
    reliable = false;
    r.warnings.push_back("truncation error estimate exceeds 10% of the value");
  }
  r.body["method"] = method;
  r.body["imag_energy"] = number(value, p);
  r.body["log_abs_imag_energy"] = number(log_pref + std::log(std::fabs(bracket)), p);
  r.body["error_estimate"] = number(estimate, p);
  r.body["orders_used"] = used;
  r.body["optimum_reached"] = optimum;
  r.body["reliable"] = reliable;
  r.provenance["imag_energy"] = "asymptotic";
  r.provenance["log_abs_imag_energy"] = "asymptotic";
  r.provenance["error_estimate"] = "asymptotic";
  r.columns = {"g", "imag_energy", "error_estimate", "orders_used", "reliable"};
  r.rows.push_back({number(g, p), r.body["imag_energy"], r.body["error_estimate"], used, reliable});
  return r;
}

inline Report cmd_resonance(RunConfig& c) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const double g = need(c.coupling_g, "--coupling");
  check_degree(M);
  check_level(n);
  const auto spec = OscillatorSpec::natural(M, n, g);
  if (!c.basis_N) c.basis_N = 256;
  if (!c.theta) c.theta = default_theta(spec);
  const int p = c.precision_digits;
  const auto res = resonance_energy(spec, n, *c.basis_N, *c.theta, ResonanceOptions{});
  Report r;
  r.body["energy"] = complex_json(res.energy, p);
  r.body["level_n"] = res.level_n;
  r.body["basis_size_N"] = res.basis_size_N;
  r.body["rotation_theta"] = number(res.rotation_theta, p);
  r.body["stability"] = number(res.stability, 3);
  r.body["overlap"] = number(res.overlap, p);
  r.body["converged"] = res.converged;
  r.body["width_resolved"] = res.width_resolved;
  for (const char* f : {"energy", "stability", "overlap"}) r.provenance[f] = "spectral";
  if (!res.width_resolved)
    r.warnings.push_back("|Im E| is below the resolvable floor; imaginary part not meaningful");
  r.columns = {"g", "re", "im", "N", "theta", "stability", "converged"};
  r.rows.push_back({number(g, p), r.body["energy"]["re"], r.body["energy"]["im"], res.basis_size_N,
                    r.body["rotation_theta"], r.body["stability"], res.converged});
  if (!res.converged) r.exit_code = 3;
  return r;
}

inline Report cmd_strongcoupling(RunConfig& c) {
  const int M = c.degree_M.value_or(3);
  require(M == 3, "--degree must be 3 for strongcoupling");
  c.degree_M = M;
  if (!c.basis_N) c.basis_N = 256;
  if (!c.theta) c.theta = 0.3;
  std::vector<int> levels;
  if (c.level_n) {
    check_level(*c.level_n);
    levels = {*c.level_n};
  } else {
    levels = {0, 1, 2};
  }
  const int p = c.precision_digits;
  Report r;
  json arr = json::array();
  bool all = true;
  r.columns = {"n", "e_n", "phase", "phase_error", "stability", "converged"};
  for (int n : levels) {
    const auto s = strong_coupling_leading(M, n, *c.basis_N, *c.theta);
    json e;
    e["n"] = n;
    e["e_n"] = number(s.modulus, p);
    e["phase"] = number(s.phase, p);
    e["phase_error"] = number(s.phase_error, 3);
    e["stability"] = number(s.stability, 3);
    e["converged"] = s.converged;
    all = all && s.converged;
    r.rows.push_back({n, e["e_n"], e["phase"], e["phase_error"], e["stability"], s.converged});
    arr.push_back(e);
  }
  r.body["levels"] = arr;
  r.provenance["levels"] = "spectral";
  if (!all) r.exit_code = 3;
  return r;
}

inline Report cmd_instanton(const RunConfig& c, const Options& o, const std::string& command_line) {
  const int M = need(c.degree_M, "--degree");
  check_degree(M);
  const int p = c.precision_digits;
  Report r;
  const bool closed = M == 3 || M == 4;
  if (closed) {
    const auto q = instanton_action_quadrature(M, 40.0, o.branch);
    r.body["action_numeric"] = number(q.value, p);
    r.body["quadrature_error"] = number(q.quadrature_error, 3);
    r.body["tail_bound"] = number(q.tail_bound, 3);
    r.provenance["action_numeric"] = "quadrature";
  } else {
    r.body["action_numeric"] = nullptr;
  }
  r.body["action_beta"] = number(action_from_beta(M), p);
  r.body["closed_form"] = closed ? json(to_fraction_string(instanton_action_exact(M))) : json(nullptr);
  r.provenance["action_beta"] = "exact";
  r.provenance["closed_form"] = "exact";
  r.columns = {"M", "action_numeric", "action_beta", "closed_form"};
  r.rows.push_back({M, r.body["action_numeric"], r.body["action_beta"], r.body["closed_form"]});

  if (!o.trajectory_path.empty()) {
    require(closed, "--trajectory needs --degree 3 or 4");
    require(o.samples >= 2, "--samples must be >= 2");
    require(o.t_max > o.t_min, "--t-max must exceed --t-min");
    std::ofstream f(o.trajectory_path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + o.trajectory_path);
    f << "# " << command_line << "\n";
    f << "# t\tposition\n";
    for (int i = 0; i < o.samples; ++i) {
      const double t = o.t_min + (o.t_max - o.t_min) * i / (o.samples - 1);
      f << number(t, p).dump() << '\t' << number(instanton_trajectory(M, t, o.branch), p).dump() << '\n';
    }
    r.body["trajectory_file"] = o.trajectory_path;
    r.body["trajectory_samples"] = o.samples;
  }
  return r;
}

inline Report cmd_dispersion(RunConfig& c, const Options& o) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const double g = need(c.coupling_g, "--coupling");
  require(M == 3 || M == 4, "--degree must be 3 or 4 for dispersion");
  check_level(n);
  require(o.nodes >= 3, "--nodes must be >= 3");
  if (!c.basis_N) c.basis_N = 256;
  const double lo = o.s_min.value_or(M == 3 ? 0.005 : 0.015);
  require(lo > 0.0 && o.s_max > lo, "--s-min/--s-max must satisfy 0 < s-min < s-max");
  const int p = c.precision_digits;
  ProfileOptions popts;
  popts.basis_N = *c.basis_N;
  popts.theta = c.theta;
  const auto profile = build_imag_profile(M, n, log_spaced(lo, o.s_max, o.nodes), popts);
  const auto b = reconstruct_real_energy_detail(profile, n, g);
  const auto spec = OscillatorSpec::natural(M, n, g);
  const auto res = resonance_energy(spec, n, *c.basis_N, c.theta.value_or(default_theta(spec)),
                                    ResonanceOptions{});
  Report r;
  r.body["real_energy_dispersion"] = number(b.energy, p);
  r.body["real_energy_spectral"] = number(res.energy.real(), p);
  r.body["difference"] = number(b.energy - res.energy.real(), 3);
  json parts;
  parts["head"] = number(b.head, p);
  parts["grid"] = number(b.grid, p);
  parts["tail"] = number(b.tail, p);
  r.body["integral_parts"] = parts;
  r.body["nodes"] = o.nodes;
  r.body["s_min"] = number(lo, p);
  r.body["s_max"] = number(o.s_max, p);
  r.body["mirrored"] = profile.mirrored();
  r.provenance["real_energy_dispersion"] = "quadrature";
  r.provenance["real_energy_spectral"] = "spectral";
  r.provenance["difference"] = "quadrature";
  r.provenance["integral_parts"] = "quadrature";
  r.columns = {"g", "dispersion", "spectral", "difference"};
  r.rows.push_back({number(g, p), r.body["real_energy_dispersion"], r.body["real_energy_spectral"],
                    r.body["difference"]});
  return r;
}

inline Report cmd_largeorder(const RunConfig& c, const Options& o) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  check_degree(M);
  check_level(n);
  require(o.k_min >= 1 && o.k_max >= o.k_min && o.k_step >= 1,
          "--k-min/--k-max/--k-step must satisfy 1 <= k-min <= k-max, step >= 1");
  require(o.corrections >= 0, "--corrections must be >= 0");
  const int p = c.precision_digits;
  const bool table = (M == 3 || M == 4) && (n == 0 || n == 1);
  std::optional<LargeOrderModel> model;
  if (table) model = large_order_model(M, n);
  else
    require(M % 2 == 1 && o.corrections == 0,
            "no width table for this (--degree, --level); only --corrections 0 for odd degree");
  const auto exact = perturb_coefficients(OscillatorSpec::natural(M, n), o.k_max);
  Report r;
  json recs = json::array();
  r.columns = {"K", "exact", "predicted", "ratio"};
  for (int K = o.k_min; K <= o.k_max; K += o.k_step) {
    const LogValue pred = model ? large_order_from_dispersion(*model, K, o.corrections)
                                : bender_wu_asymptotic(M, n, K);
    json e;
    e["K"] = K;
    e["exact"] = to_fraction_string(exact[std::size_t(K)]);
    e["predicted"] = number(pred.value(), p);
    e["log_abs_predicted"] = number(pred.log_abs, p);
    e["ratio"] = number(ratio(exact[std::size_t(K)], pred), p);
    r.rows.push_back({K, e["exact"], e["predicted"], e["ratio"]});
    recs.push_back(e);
  }
  r.body["model"] = model ? "dispersion" : "bender_wu";
  r.body["corrections_j"] = o.corrections;
  r.body["records"] = recs;
  r.provenance["records.exact"] = "exact";
  r.provenance["records.predicted"] = "asymptotic";
  r.provenance["records.ratio"] = "asymptotic";
  return r;
}

inline Report cmd_modelintegral(const RunConfig& c, const Options& o) {
  require(o.digits >= 1, "--digits must be >= 1");
  const int p = c.precision_digits;
  const auto m = model_integral_check(o.beta, o.digits);
  Report r;
  r.body["beta"] = number(o.beta, p);
  r.body["numeric"] = number(m.numeric, std::max(p, 17));
  r.body["expansion"] = number(m.expansion, std::max(p, 17));
  r.body["difference"] = number(m.difference, p);
  r.provenance["numeric"] = "quadrature";
  r.provenance["expansion"] = "exact";
  r.provenance["difference"] = "quadrature";
  r.columns = {"beta", "numeric", "expansion", "difference"};
  r.rows.push_back({r.body["beta"], r.body["numeric"], r.body["expansion"], r.body["difference"]});
  return r;
}

inline Report cmd_expansion(const RunConfig& c) {
  const int M = need(c.degree_M, "--degree");
  const int n = need(c.level_n, "--level");
  const int K = need(c.orders_K, "--orders");
  check_degree(M);
  check_level(n);
  require(K >= 0, "--orders must be >= 0");
  GeneralizedExpansion e;
  e.oscillator = OscillatorSpec::natural(M, n);
  e.perturbative = perturb_coefficients(e.oscillator, K);
  if ((M == 3 || M == 4) && (n == 0 || n == 1))
    e.instanton_terms.push_back(one_instanton_term(decay_width_series(M, n)));
  Report r;
  r.body["expansion"] = expansion_to_json(e);
  r.provenance["expansion"] = "exact";
  r.columns = {"K", "coefficient"};
  for (int k = 0; k <= K; ++k) r.rows.push_back({k, to_fraction_string(e.perturbative[std::size_t(k)])});
  return r;
}

inline Report cmd_checkall(const Options& o) {
  const std::set<int> only(o.only.begin(), o.only.end());
  const auto results = run_acceptance(only);
  Report r;
  json arr = json::array();
  bool all = true;
  r.columns = {"id", "status", "name", "detail"};
  for (const auto& c : results) {
    json e;
    e["id"] = c.id;
    e["name"] = c.name;
    e["status"] = c.pass ? "PASS" : "FAIL";
    e["detail"] = c.detail;
    arr.push_back(e);
    all = all && c.pass;
    r.rows.push_back({c.id, e["status"], c.name, c.detail});
  }
  r.body["criteria"] = arr;
  r.body["all_pass"] = all;
  if (!all) r.exit_code = 1;
  return r;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Resonance energies of cubic and quartic anharmonic oscillators", "anharmonic"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json, csv or tsv")->check(CLI::IsMember({"json", "csv", "tsv"}));
    s->add_option("--precision", o.precision, "significant digits in floating output");
    s->add_option("-o,--output", o.output, "write the result to this file");
  };
  auto osc = [&](CLI::App* s, bool coupling) {
    s->add_option("--degree", o.degree, "degree M of the perturbation");
    s->add_option("--level", o.level, "level n");
    if (coupling) s->add_option("--coupling", o.coupling, "coupling g");
  };

  auto* perturb = app.add_subcommand("perturb", "exact perturbation coefficients");
  osc(perturb, false);
  perturb->add_option("--orders", o.orders, "highest order K");
  auto* oracle = app.add_subcommand("oracle", "recursion vs sum-over-states, K <= 4");
  osc(oracle, false);
  oracle->add_option("--orders", o.orders, "highest order K");
  auto* widths = app.add_subcommand("widths", "one-instanton imaginary part");
  osc(widths, true);
  widths->add_option("--orders", o.orders, "fixed bracket order (default: optimal truncation)");
  auto* resonance = app.add_subcommand("resonance", "complex-rotated spectral resonance");
  osc(resonance, true);
  resonance->add_option("--basis", o.basis, "basis size N");
  resonance->add_option("--theta", o.theta, "rotation angle");
  auto* strong = app.add_subcommand("strongcoupling", "leading strong-coupling coefficients e_n");
  osc(strong, false);
  strong->add_option("--basis", o.basis, "basis size N");
  strong->add_option("--theta", o.theta, "rotation angle");
  auto* inst = app.add_subcommand("instanton", "instanton actions and trajectory");
  inst->add_option("--degree", o.degree, "degree M");
  inst->add_option("--trajectory", o.trajectory_path, "write (t, position) TSV here");
  inst->add_option("--t-min", o.t_min);
  inst->add_option("--t-max", o.t_max);
  inst->add_option("--samples", o.samples);
  inst->add_option("--branch", o.branch)->check(CLI::IsMember({-1, 1}));
  auto* disp = app.add_subcommand("dispersion", "real part from the dispersion relation");
  osc(disp, true);
  disp->add_option("--basis", o.basis, "basis size N");
  disp->add_option("--theta", o.theta, "rotation angle");
  disp->add_option("--nodes", o.nodes, "profile nodes");
  disp->add_option("--s-min", o.s_min, "lowest node |g|");
  disp->add_option("--s-max", o.s_max, "highest node |g|");
  auto* large = app.add_subcommand("largeorder", "exact vs asymptotic coefficients");
  osc(large, false);
  large->add_option("--k-min", o.k_min);
  large->add_option("--k-max", o.k_max);
  large->add_option("--k-step", o.k_step);
  large->add_option("--corrections", o.corrections, "number j of bracket corrections");
  auto* model = app.add_subcommand("modelintegral", "log-term model integral check");
  model->add_option("--beta", o.beta);
  model->add_option("--digits", o.digits, "working precision in decimal digits");
  auto* expansion = app.add_subcommand("expansion", "generalized expansion in interchange form");
  osc(expansion, false);
  expansion->add_option("--orders", o.orders, "highest perturbative order K");
  auto* checkall = app.add_subcommand("checkall", "run every acceptance criterion");
  checkall->add_option("--only", o.only, "restrict to these criterion ids")->delimiter(',');
  for (auto* s : app.get_subcommands({})) common(s);

  RunConfig cfg;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_record("usage", e.what(), 2);
    return 2;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.degree_M = o.degree;
    cfg.level_n = o.level;
    cfg.coupling_g = o.coupling;
    cfg.orders_K = o.orders;
    cfg.basis_N = o.basis;
    cfg.theta = o.theta;
    cfg.output_format = o.format.empty() ? "json" : o.format;
    cfg.output_path = o.output;
    if (o.precision) {
      cfg.precision_digits = *o.precision;
    } else if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      require(*end == '\0', std::string(kPrecisionEnv) + " must be an integer");
      cfg.precision_digits = static_cast<int>(v);
    }
    require(cfg.precision_digits >= 1 && cfg.precision_digits <= 17, "--precision must be in [1, 17]");

    Report rep;
    const auto& sc = cfg.subcommand;
    if (sc == "perturb") rep = cmd_perturb(cfg);
    else if (sc == "oracle") rep = cmd_oracle(cfg);
    else if (sc == "widths") rep = cmd_widths(cfg);
    else if (sc == "resonance") rep = cmd_resonance(cfg);
    else if (sc == "strongcoupling") rep = cmd_strongcoupling(cfg);
    else if (sc == "instanton") rep = cmd_instanton(cfg, o, join_command(args));
    else if (sc == "dispersion") rep = cmd_dispersion(cfg, o);
    else if (sc == "largeorder") rep = cmd_largeorder(cfg, o);
    else if (sc == "modelintegral") rep = cmd_modelintegral(cfg, o);
    else if (sc == "expansion") rep = cmd_expansion(cfg);
    else rep = cmd_checkall(o);

    for (const auto& w : rep.warnings) err << warning_record(w);
    const std::string text = render(rep, cfg);
    if (cfg.output_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) throw DomainError("cannot open output file " + cfg.output_path);
      f << text;
    }
    if (rep.exit_code == 1) err << error_record("check", "verification reported a mismatch or failure", 1);
    if (rep.exit_code == 3) err << error_record("convergence", "result did not converge", 3);
    return rep.exit_code;
  } catch (const UsageError& e) {
    err << error_record("usage", e.what(), 2);
    return 2;
  } catch (const ConvergenceError& e) {
    err << error_record("convergence", e.what(), 3);
    return 3;
  } catch (const Error& e) {
    err << error_record(e.kind(), e.what(), 1);
    return 1;
  } catch (const std::exception& e) {
    err << error_record("internal", e.what(), 1);
    return 1;
  }
}

}  // namespace anharmonic::cli
