#ifndef BIREV_CLI_HPP
#define BIREV_CLI_HPP

// Command-line driver. run() does all the work so it can be called in-process.

#include "birev/analysis.hpp"
#include "birev/dispersion.hpp"
#include "birev/fourier.hpp"
#include "birev/hilbert.hpp"
#include "birev/revival.hpp"
#include "birev/solver.hpp"
#include "birev/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace birev::cli {

using nlohmann::json;

enum exit_code : int { ok = 0, check_failed = 1, config_error = 2, numeric_error = 3 };

struct RunConfig {
  std::string subcommand;
  std::string dispersion = "monomial:2";
  std::string equation = "beam";
  std::string f = "step";
  std::string g = "step";
  std::string time = "pi*1/3";
  std::vector<std::string> times{"0.1", "0.5", "pi*1/3", "pi*1/2"};
  std::string trig = "cos";
  int truncation = default_truncation;
  int grid = 4096;
  double mu = 0.0;
  double eps = 0.0;
  double dt = 0.0;  // 0: min(1e-3, stable limit)
  int modes = 512;
  bool dealias = false;
  double delta = 0.1;
  double tolerance = 2e-2;
  int order = 4;
  int special = 1;
  std::string output;
  std::string format;
  bool shift = false;
};

/// Bad parameter; the message names it.
struct config_error_t : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct TimeSpec {
  double value = 0.0;
  std::optional<RationalTime> exact;
};

inline TimeSpec parse_time(const std::string& text) {
  if (auto r = parse_rational_time(text)) return {r->value(), r};
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return {v, std::nullopt};
  } catch (const std::exception&) {
  }
  throw config_error_t("time: cannot parse '" + text + "' (use pi*p/q or a decimal)");
}

inline RationalTime require_rational(const std::string& text) {
  auto t = parse_time(text);
  if (!t.exact) throw config_error_t("time: '" + text + "' must be exact, pi*p/q");
  return *t.exact;
}

// file:PATH, first line q=<den>, then rows start,c0,c1,... with coefficients in s = x/pi.
inline PiecewisePolynomial<double> read_piecewise_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error_t("ic: cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("q=", 0) != 0) throw config_error_t("ic: " + path + " must start with q=<denominator>");
  const auto q = std::stoll(line.substr(2));
  std::vector<std::int64_t> starts;
  std::vector<poly::Coeffs<double>> pieces;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    starts.push_back(std::stoll(cell));
    poly::Coeffs<double> c;
    while (std::getline(ss, cell, ',')) c.push_back(std::stod(cell));
    pieces.push_back(c);
  }
  try {
    return PiecewisePolynomial<double>(q, starts, pieces);
  } catch (const std::exception& e) {
    throw config_error_t("ic: " + path + ": " + e.what());
  }
}

inline std::optional<PiecewisePolynomial<double>> piecewise_ic(const std::string& name) {
  if (name == "step") return step_sigma();
  if (name == "unit-step") return unit_step();
  if (name == "zero") return PiecewisePolynomial<double>(1, {0}, {{0.0}});
  if (name == "sin") return std::nullopt;
  if (name.rfind("file:", 0) == 0) return read_piecewise_file(name.substr(5));
  throw config_error_t("ic: unknown initial condition '" + name + "'");
}

inline FourierSeries series_ic(const std::string& name, int m) {
  if (auto p = piecewise_ic(name)) return coeffs_of_piecewise_poly(*p, m);
  FourierSeries s(m, true);
  s.at(1) = cplx(0.0, -0.5);
  s.at(-1) = cplx(0.0, 0.5);
  return s;
}

inline PiecewisePolynomial<double> require_piecewise(const std::string& name, const char* which) {
  auto p = piecewise_ic(name);
  if (!p) throw config_error_t(std::string(which) + ": '" + name + "' is not piecewise polynomial");
  return *p;
}

inline DispersionSpec dispersion(const std::string& text) {
  try {
    return parse_dispersion(text);
  } catch (const std::invalid_argument& e) {
    throw config_error_t(std::string("dispersion: ") + e.what());
  }
}

inline FourierSeries evolve(const DispersionSpec& spec, const FourierSeries& f, const FourierSeries& g, const TimeSpec& t) {
  return t.exact ? linear_evolve(spec, f, g, *t.exact) : linear_evolve(spec, f, g, t.value);
}

inline void check_grid(const RunConfig& c) {
  if (c.truncation < 1) throw config_error_t("truncation must be positive");
  if (c.grid < 2 * c.truncation + 1)
    throw config_error_t("grid: " + std::to_string(c.grid) + " points alias truncation " + std::to_string(c.truncation));
}

inline void write_csv(std::ostream& os, const GridFunction& g, bool shift) {
  os << "x,u_re,u_im\n";
  const std::size_t n = g.size();
  const std::size_t first = shift ? (n + 1) / 2 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = (first + i) % n;
    const double x = shift && m >= first ? g.x(m) - 2.0 * pi : g.x(m);
    os << fmt17(x) << ',' << fmt17(g[m].real()) << ',' << fmt17(g[m].imag()) << '\n';
  }
}

inline void write_pieces(std::ostream& os, const PiecewisePolynomial<double>& p) {
  const auto merged = merged_for_display(p, 1e-12);
  std::size_t width = 0;
  for (const auto& c : merged.pieces()) width = std::max(width, c.size());
  os << "x_start,x_end";
  for (std::size_t j = 0; j < width; ++j) os << ",c" << j;
  os << '\n';
  const double scale = pi / static_cast<double>(merged.q_den());
  for (std::size_t i = 0; i < merged.piece_count(); ++i) {
    auto cx = coefficients_in_x(merged.pieces()[i]);
    cx.resize(width, 0.0);
    os << fmt17(scale * static_cast<double>(merged.starts()[i])) << ',' << fmt17(scale * static_cast<double>(merged.end_of(i)));
    for (double v : cx) os << ',' << fmt17(v);
    os << '\n';
  }
}

inline json check(const std::string& name, double expected, double actual, double tol, bool pass) {
  return {{"name", name}, {"expected", expected}, {"actual", actual}, {"tolerance", tol}, {"pass", pass}};
}

inline json config_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"dispersion", c.dispersion}, {"equation", c.equation}, {"f", c.f},
          {"g", c.g}, {"time", c.time}, {"times", c.times}, {"trig", c.trig}, {"truncation", c.truncation},
          {"grid", c.grid}, {"mu", c.mu}, {"eps", c.eps}, {"dt", c.dt}, {"modes", c.modes},
          {"dealias", c.dealias}, {"delta", c.delta}, {"tolerance", c.tolerance}, {"order", c.order},
          {"special", c.special}, {"shift", c.shift}};
}

struct Result {
  int code = ok;
  std::string summary;
};

inline bool all_pass(const json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

// Report shape shared by every JSON-producing command.
inline std::string report(const RunConfig& c, json result, json checks) {
  json j;
  j["config"] = config_json(c);
  j["result"] = std::move(result);
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

}  // namespace detail

/// Payload (CSV or JSON) plus a one-line summary.
struct Output {
  std::string payload;
  std::string summary;
  int code = ok;
};

inline Output linear_evolve_cmd(const RunConfig& c) {
  detail::check_grid(c);
  const auto spec = detail::dispersion(c.dispersion);
  const auto t = detail::parse_time(c.time);
  const auto f = detail::series_ic(c.f, c.truncation), g = detail::series_ic(c.g, c.truncation);
  if (std::holds_alternative<FractionalMonomial>(spec) && std::abs(g[0]) > 1e-14)
    throw config_error_t("g: needs zero mean for fractional dispersion");
  const auto profile = evaluate_series(detail::evolve(spec, f, g, t), static_cast<std::size_t>(c.grid));
  std::ostringstream os;
  detail::write_csv(os, profile, c.shift);
  return {os.str(), "linear-evolve " + to_string(spec) + " t=" + c.time + (t.exact ? " (exact)" : " (decimal)") +
                        ": " + std::to_string(c.grid) + " samples"};
}

inline PiecewisePolynomial<double> closed_form_profile(const RunConfig& c, RationalTime t) {
  if (c.equation == "beam") {
    if (c.f != "step" || c.g != "step") {
      auto u = monomial_closed_form(2, t, detail::require_piecewise(c.f, "f"), detail::require_piecewise(c.g, "g"));
      return birev::detail::real_part(u);
    }
    return beam_closed_form(t);
  }
  if (c.equation.rfind("monomial:", 0) == 0) {
    const auto spec = detail::dispersion(c.equation);
    const int n = std::get<Monomial>(spec).n;
    auto u = monomial_closed_form(n, t, detail::require_piecewise(c.f, "f"), detail::require_piecewise(c.g, "g"));
    return birev::detail::real_part(u);
  }
  throw config_error_t("equation: expected beam or monomial:N, got '" + c.equation + "'");
}

inline Output closed_form_cmd(const RunConfig& c) {
  const auto t = detail::require_rational(c.time);
  const auto u = closed_form_profile(c, t);
  std::ostringstream os;
  const std::string fmt = c.format.empty() ? "pieces" : c.format;
  if (fmt == "pieces") {
    detail::write_pieces(os, u);
  } else if (fmt == "csv") {
    detail::write_csv(os, GridFunction::sample(static_cast<std::size_t>(c.grid), [&](double x) { return cplx(u(x)); }),
                      c.shift);
  } else {
    throw config_error_t("format: closed-form writes pieces or csv");
  }
  return {os.str(), "closed-form " + c.equation + " t=" + t.str() + ": " + std::to_string(merged_for_display(u, 1e-12).piece_count()) + " pieces"};
}

inline Output revival_coeffs_cmd(const RunConfig& c) {
  const auto t = detail::require_rational(c.time);
  const auto spec = detail::dispersion(c.dispersion);
  const auto coeffs = integral_coefficients(spec);
  if (!coeffs) throw config_error_t("dispersion: revival needs an integral polynomial");
  Trig trig;
  if (c.trig == "cos") trig = Trig::cos;
  else if (c.trig == "sin") trig = Trig::sin;
  else if (c.trig == "exp") trig = Trig::exp;
  else throw config_error_t("trig: expected cos, sin or exp");
  const auto kern = revival_kernel(*coeffs, t, trig);
  BoxExpansion boxes;
  if (const auto* m = std::get_if<Monomial>(&spec); m && trig != Trig::exp)
    boxes = trig == Trig::cos ? box_expansion_cos(m->n, t) : box_expansion_sin(m->n, t);
  else
    boxes = birev::detail::boxes_from(apply_kernel(kern, step_sigma()), t.q);
  std::ostringstream os;
  os << "j,weight_re,weight_im,box_re,box_im\n";
  for (std::size_t j = 0; j < kern.weights.size(); ++j)
    os << j << ',' << detail::fmt17(kern.weights[j].real()) << ',' << detail::fmt17(kern.weights[j].imag()) << ','
       << detail::fmt17(boxes.values[j].real()) << ',' << detail::fmt17(boxes.values[j].imag()) << '\n';
  return {os.str(), "revival-coeffs " + to_string(spec) + " t=" + t.str() + " " + c.trig + ": " +
                        std::to_string(kern.weights.size()) + " boxes"};
}

inline Output compare_cmd(const RunConfig& c) {
  detail::check_grid(c);
  const auto t = detail::require_rational(c.time);
  const auto u = closed_form_profile(c, t);
  const DispersionSpec spec = c.equation == "beam" ? DispersionSpec{Monomial{2}} : detail::dispersion(c.equation);
  const auto series = linear_evolve(spec, detail::series_ic(c.f, c.truncation), detail::series_ic(c.g, c.truncation), t);
  ComparisonReport r;
  try {
    r = compare_profiles(evaluate_series(series, static_cast<std::size_t>(c.grid)), u, c.delta);
  } catch (const std::invalid_argument& e) {
    throw config_error_t(std::string("delta: ") + e.what());
  }
  json result = {{"sup_error_excluded", r.sup_error_excluded}, {"jump_set", r.jump_set},
                 {"exclusion_radius", r.exclusion_radius}, {"grid_size", r.grid_size}, {"samples_used", r.samples_used}};
  json checks = json::array({detail::check("sup_error_outside_jumps", 0.0, r.sup_error_excluded, c.tolerance,
                                           r.sup_error_excluded < c.tolerance)});
  const bool pass = detail::all_pass(checks);
  return {detail::report(c, result, checks),
          "compare " + c.equation + " t=" + t.str() + ": sup error " + detail::fmt17(r.sup_error_excluded) +
              (pass ? " (pass)" : " (FAIL)"),
          pass ? ok : check_failed};
}

inline Output nonlinear_evolve_cmd(const RunConfig& c, std::ostream& err) {
  BeamParams p;
  p.mu = c.mu;
  p.eps = c.eps;
  p.modes = c.modes;
  p.dealias = c.dealias;
  p.dt = 1.0;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error_t(e.what());
  }
  p.dt = c.dt > 0.0 ? c.dt : std::min(1e-3, p.stable_dt());
  if (c.dt < 0.0) throw config_error_t("dt must be positive");
  for (const auto& a : p.advisories()) err << "advisory: " << a << '\n';
  const auto t = detail::parse_time(c.time);
  if (t.value < 0.0) throw config_error_t("time must be >= 0");
  const int m = p.truncation();
  auto s = initial_state(p, detail::series_ic(c.f, m), detail::series_ic(c.g, m));
  const bool real = s.uhat.real_valued() && s.vhat.real_valued();
  const double e0 = real ? energy(s) : 0.0;
  s = evolve_state(s, t.value);
  std::ostringstream os;
  detail::write_csv(os, evaluate_series(s.uhat, static_cast<std::size_t>(p.modes)), c.shift);
  std::string summary = "nonlinear-evolve mu=" + detail::fmt17(c.mu) + " eps=" + detail::fmt17(c.eps) +
                        " dt=" + detail::fmt17(p.dt) + " modes=" + std::to_string(p.modes) + " t=" + c.time;
  if (real) summary += ": energy " + detail::fmt17(e0) + " -> " + detail::fmt17(energy(s));
  return {os.str(), summary};
}

inline Output zeta_cmd(const RunConfig& c) {
  const int n = c.order;
  if (n < 2) throw config_error_t("order must be >= 2");
  if (n > 40) throw config_error_t("order must be <= 40");
  if (c.special < 1) throw config_error_t("special must be >= 1");
  const auto ledger = build_ledger(n, c.special);
  const auto& entry = ledger.get(n);
  std::string line = series_name(n) + " = " + entry.value.str();
  json result = {{"series", series_name(n)}, {"value", entry.value.str()}, {"numeric", entry.value.value()},
                 {"provenance", entry.provenance}};
  json checks = json::array();
  const double brute = n % 2 ? tau_partial_sum(n) : sigma_partial_sum(n);
  checks.push_back(detail::check(series_name(n) + "_partial_sum", entry.value.value(), brute, 1e-9,
                                 std::abs(entry.value.value() - brute) <= 1e-9));
  if (n % 2 == 0) {
    const auto z = zeta_from_sigma(n, ledger);
    line += ", zeta(" + std::to_string(n) + ") = " + z.str();
    result["zeta"] = z.str();
    const double zb = zeta_partial_sum(n);
    checks.push_back(detail::check("zeta(" + std::to_string(n) + ")_partial_sum", z.value(), zb, 1e-9,
                                   std::abs(z.value() - zb) <= 1e-9));
  }
  const bool pass = detail::all_pass(checks);
  if (c.format == "json") return {detail::report(c, result, checks), line, pass ? ok : check_failed};
  return {line + "\n", line, pass ? ok : check_failed};
}

inline Output fractal_dim_cmd(const RunConfig& c) {
  detail::check_grid(c);
  const auto spec = detail::dispersion(c.dispersion);
  const auto t = detail::parse_time(c.time);
  const auto profile = evaluate_series(
      detail::evolve(spec, detail::series_ic(c.f, c.truncation), detail::series_ic(c.g, c.truncation), t),
      static_cast<std::size_t>(c.grid));
  const auto scales = dyadic_scales();
  const double d = box_counting_dimension(profile, scales);
  json result = {{"dimension", d}, {"scales", scales}, {"grid", c.grid}};
  json checks = json::array({detail::check("dimension_in_range", 1.5, d, 0.5, d >= 1.0 && d <= 2.0)});
  return {detail::report(c, result, checks),
          "fractal-dim " + to_string(spec) + " t=" + c.time + ": " + detail::fmt17(d)};
}

inline Output asymptotic_gap_cmd(const RunConfig& c) {
  const auto spec = detail::dispersion(c.dispersion);
  if (!leading_polynomial(spec)) throw config_error_t("dispersion: " + c.dispersion + " has no polynomial asymptote");
  if (c.truncation > 2047) throw config_error_t("truncation: at most 2047 on the 4096-point gap grid");
  json rows = json::array(), checks = json::array();
  double worst_gap = 0.0, worst_bound = 0.0;
  for (const auto& ts : c.times) {
    const double t = detail::parse_time(ts).value;
    const double gap = asymptotic_gap(spec, t, c.truncation), bound = asymptotic_gap_bound(spec, t, c.truncation);
    rows.push_back({{"time", ts}, {"gap", gap}, {"bound", bound}});
    checks.push_back(detail::check("gap_below_bound t=" + ts, bound, gap, 0.0, gap <= bound));
    worst_gap = std::max(worst_gap, gap);
    worst_bound = std::max(worst_bound, bound);
  }
  checks.push_back(detail::check("uniform_bound_below_one", 1.0, worst_bound, 0.0, worst_bound < 1.0));
  const bool pass = detail::all_pass(checks);
  return {detail::report(c, {{"rows", rows}, {"max_gap", worst_gap}, {"max_bound", worst_bound}}, checks),
          "asymptotic-gap " + to_string(spec) + ": max gap " + detail::fmt17(worst_gap) + ", max bound " +
              detail::fmt17(worst_bound) + (pass ? " (pass)" : " (FAIL)"),
          pass ? ok : check_failed};
}

/// Dispatches a parsed config.
inline Output execute(const RunConfig& c, std::ostream& err) {
  if (c.subcommand == "linear-evolve") return linear_evolve_cmd(c);
  if (c.subcommand == "closed-form") return closed_form_cmd(c);
  if (c.subcommand == "revival-coeffs") return revival_coeffs_cmd(c);
  if (c.subcommand == "compare") return compare_cmd(c);
  if (c.subcommand == "nonlinear-evolve") return nonlinear_evolve_cmd(c, err);
  if (c.subcommand == "zeta") return zeta_cmd(c);
  if (c.subcommand == "fractal-dim") return fractal_dim_cmd(c);
  if (c.subcommand == "asymptotic-gap") return asymptotic_gap_cmd(c);
  throw config_error_t("unknown subcommand '" + c.subcommand + "'");
}

inline void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("subcommand", c.subcommand,
                 "linear-evolve | closed-form | revival-coeffs | compare | nonlinear-evolve | zeta | fractal-dim | asymptotic-gap")
      ->required();
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.add_option("--dispersion", c.dispersion, "monomial:N, poly:c0,...,cN, boussinesq, frac:alpha");
  app.add_option("--equation", c.equation, "beam or monomial:N (closed-form, compare)");
  app.add_option("--f,--ic", c.f, "initial displacement: step | unit-step | zero | sin | file:PATH");
  app.add_option("--g", c.g, "initial velocity, same choices");
  app.add_option("--time", c.time, "pi*p/q (exact) or decimal");
  app.add_option("--times", c.times, "times for asymptotic-gap")->delimiter(',');
  app.add_option("--trig", c.trig, "cos | sin | exp (revival-coeffs)");
  app.add_option("--truncation", c.truncation, "Fourier truncation M");
  app.add_option("--grid", c.grid, "output grid size n");
  app.add_option("--mu", c.mu);
  app.add_option("--eps", c.eps);
  app.add_option("--dt", c.dt, "time step; 0 picks min(1e-3, stability limit)");
  app.add_option("--modes", c.modes, "solver grid size, power of two");
  app.add_flag("--dealias", c.dealias, "2/3 rule on the cubic term");
  app.add_option("--delta", c.delta, "exclusion radius around jumps");
  app.add_option("--tolerance", c.tolerance, "compare pass threshold");
  app.add_option("--order", c.order, "zeta order N");
  app.add_option("--special", c.special, "l in t = (2l-1) pi/2 for zeta");
  app.add_option("--output,-o", c.output, "output file, stdout if empty");
  app.add_option("--format", c.format, "csv | json | pieces");
  app.add_flag("--shift", c.shift, "report x in [-pi, pi)");
}

/// Full run: parse args (without argv[0]), execute, write artifacts. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("birev: periodic bidirectional dispersive revival");
  add_options(app, c);
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  }
  try {
    const Output o = execute(c, err);
    if (c.output.empty()) {
      out << o.payload;
      if (c.subcommand != "zeta" || c.format == "json") err << o.summary << '\n';
    } else {
      std::ofstream f(c.output, std::ios::binary);
      if (!f) throw config_error_t("output: cannot write " + c.output);
      f << o.payload;
      out << o.summary << '\n';
    }
    return o.code;
  } catch (const numerical_abort& e) {
    err << "numerical abort: " << e.what() << '\n';
    return numeric_error;
  } catch (const config_error_t& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  }
}

}  // namespace birev::cli

#endif  // BIREV_CLI_HPP
