#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sta_otto/cli.hpp"
#include "sta_otto/cli/config_file.hpp"
#include "sta_otto/cli/csv.hpp"
#include "sta_otto/engine_cycle.hpp"
#include "sta_otto/errors.hpp"
#include "sta_otto/oscillator_dynamics.hpp"
#include "sta_otto/qsl_bounds.hpp"
#include "sta_otto/shortcut_cost.hpp"
#include "sta_otto/thermo_strokes.hpp"

namespace sta_otto::cli {

namespace {

struct Context {
  std::vector<std::string> argv;
  std::string config_path;
};

EngineConfig resolve_config(const Context& ctx) {
  if (ctx.config_path.empty())
    throw ConfigError("no config file given (use --config or set STA_OTTO_CONFIG)");
  return load_config(ctx.config_path);
}

void require_valid(const EngineConfig& c) {
  const auto v = config_violations(c);
  if (!v.empty()) throw ConfigError(v.front());
}

// Opens `path` for writing, or returns stdout's stream for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError(fmt::format("cannot open '{}' for writing", path));
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{:#.12g}", *v) : "n/a"; }

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out.empty() ? "none" : out;
}

void print_stroke(std::ostream& out, const char* tag, const StrokeResult& s) {
  auto line = [&](const char* name, double v) { fmt::print(out, "{}_{:<24} = {:#.12g}\n", tag, name, v); };
  line("q_star", s.q_star);
  line("work_actual", s.work_actual);
  line("work_adiabatic", s.work_adiabatic);
  line("work_nonadiabatic", s.work_nonadiabatic_excess);
  line("sa_cost", s.sa_cost);
  line("bures_angle", s.bures_angle);
  fmt::print(out, "{}_{:<24} = {}\n", tag, "tau_qsl", opt(s.tau_qsl));
  line("min_omega_eff_sq", s.inversion.min_omega_eff_sq);
  fmt::print(out, "{}_{:<24} = {}\n", tag, "qsl_premise", s.qsl_premise ? "true" : "false");
}

int cmd_cycle(const Context& ctx, double tau, const std::string& csv_path) {
  const EngineConfig c = resolve_config(ctx);
  require_valid(c);
  const CycleMetrics m = run_cycle(c, tau);
  auto& out = std::cout;
  auto line = [&](const char* name, double v) { fmt::print(out, "{:<27} = {:#.12g}\n", name, v); };
  line("tau", m.tau);
  line("tau_cycle", m.tau_cycle);
  line("q_star_1", m.q_star_1);
  line("q_star_3", m.q_star_3);
  line("eta_sa", m.eta_sa);
  line("eta_na", m.eta_na);
  line("eta_ad", m.eta_ad);
  line("eta_qsl", m.eta_qsl);
  line("p_sa", m.p_sa);
  line("p_na", m.p_na);
  fmt::print(out, "{:<27} = {}\n", "p_qsl", opt(m.p_qsl));
  line("q2_na", m.q2_na);
  line("q2_ad", m.q2_ad);
  line("cost_total", m.cost_total);
  fmt::print(out, "{:<27} = {}\n", "is_engine_na", m.is_engine_na ? "true" : "false");
  print_stroke(out, "s1", m.compression);
  print_stroke(out, "s3", m.expansion);
  fmt::print(out, "{:<27} = {}\n", "flags", join_flags(m.flags));

  if (!csv_path.empty()) {
    Output file(csv_path);
    write_sweep_csv(file.stream(), make_manifest(c, ctx.argv), {SweepRow{tau, m, {}}});
  }
  return Ok;
}

int cmd_sweep(const Context& ctx, const std::string& out_path, unsigned threads) {
  const EngineConfig c = resolve_config(ctx);
  require_valid(c);
  const auto rows = sweep(c, threads);
  Output out(out_path);
  write_sweep_csv(out.stream(), make_manifest(c, ctx.argv), rows);
  out.stream().flush();

  const auto failed = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.metrics; }));
  fmt::print(stderr, "sweep: {} rows, {} failed\n", rows.size(), failed);
  if (failed * 10 > rows.size()) {
    fmt::print(stderr, "error: more than 10% of the sweep failed\n");
    return NumericalFailure;
  }
  return Ok;
}

int cmd_crossover(const Context& ctx, const std::string& kind, std::optional<double> lo,
                  std::optional<double> hi) {
  const EngineConfig c = resolve_config(ctx);
  require_valid(c);
  const double a = lo.value_or(c.grid.tau_min), b = hi.value_or(c.grid.tau_max);
  if (!(a > 0.0 && b > a)) throw ConfigError("bracket must satisfy 0 < lo < hi");

  if (kind == "heat") {
    const double tau = find_heat_sign_crossover(c, a, b);
    fmt::print("threshold_q_star = {:#.12g}\n", heat_sign_threshold(c));
    fmt::print("tau_heat_sign    = {:#.12g}\n", tau);
    return Ok;
  }
  const double tau = find_efficiency_crossover(c, a, b);
  const auto below = run_cycle(c, tau / 2), above = run_cycle(c, tau * 2);
  fmt::print("tau_star             = {:#.12g}\n", tau);
  fmt::print("eta_sa-eta_na @ tau/2 = {:#.12g}\n", below.eta_sa - below.eta_na);
  fmt::print("eta_sa-eta_na @ 2tau  = {:#.12g}\n", above.eta_sa - above.eta_na);
  return Ok;
}

// ---------------------------------------------------------------------------
// validate

enum class Status { Pass, Warn, Fail };

struct CheckResult {
  std::string name;
  Status status;
  double residual;
  double tolerance;
  std::string note;
};

class Report {
 public:
  void check(std::string name, double residual, double tolerance, std::string note = {}) {
    const Status s = std::isfinite(residual) && residual <= tolerance ? Status::Pass : Status::Fail;
    results_.push_back({std::move(name), s, residual, tolerance, std::move(note)});
  }
  void warn(std::string name, std::string note) {
    results_.push_back({std::move(name), Status::Warn, NAN, NAN, std::move(note)});
  }
  void fail(std::string name, std::string note) {
    results_.push_back({std::move(name), Status::Fail, NAN, NAN, std::move(note)});
  }

  int print(std::ostream& out) const {
    std::size_t failures = 0, warnings = 0;
    for (const auto& r : results_) {
      const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Warn ? "WARN" : "FAIL";
      if (r.status == Status::Fail) ++failures;
      if (r.status == Status::Warn) ++warnings;
      if (std::isnan(r.tolerance))
        fmt::print(out, "{} {:<32} {}\n", tag, r.name, r.note);
      else
        fmt::print(out, "{} {:<32} residual {:.3e} (tol {:.1e}){}{}\n", tag, r.name, r.residual, r.tolerance,
                   r.note.empty() ? "" : "  ", r.note);
    }
    fmt::print(out, "{} checks, {} failed, {} warnings\n", results_.size(), failures, warnings);
    return failures == 0 ? Ok : ValidationFailed;
  }

 private:
  std::vector<CheckResult> results_;
};

struct StrokeSpec {
  const char* tag;
  double w_start, w_end, beta;
};

void dynamics_checks(const EngineConfig& c, Report& report) {
  const StrokeSpec strokes[] = {{"1", c.omega1, c.omega2, c.beta1}, {"3", c.omega2, c.omega1, c.beta2}};

  double wronskian = 0.0, routes = 0.0, q_min = INFINITY;
  for (const auto& s : strokes) {
    for (double tau : {0.1, 1.0, 10.0}) {
      const auto p = FrequencyProtocol::polynomial_ramp(s.w_start, s.w_end, tau);
      const auto pair = solve_linear_pair(p, c.solver);
      const auto erm = ermakov_from_linear(pair, s.w_start);
      const auto mom = solve_second_moments(p, c.solver);
      for (int i = 0; i <= 100; ++i) {
        const double t = i == 100 ? tau : tau * i / 100.0;
        const double wt = p.sample(t).omega;
        wronskian = std::max(wronskian, std::fabs(pair.wronskian(t) - 1.0));
        const double q_h = adiabaticity_parameter(pair, s.w_start, wt, t);
        const double q_e = adiabaticity_parameter_ermakov(erm, wt, t);
        const double q_m = mom.q_star(t, wt);
        routes = std::max({routes, std::fabs(q_e - q_h) / q_h, std::fabs(q_m - q_h) / q_h});
        q_min = std::min(q_min, q_h);
      }
    }
  }
  report.check("wronskian_constancy", wronskian, 1e-9, "tau in {0.1, 1, 10}, both strokes");
  report.check("q_star_three_routes", routes, 1e-8, "Husimi / Ermakov / second moments");
  report.check("q_star_at_least_one", std::max(0.0, 1.0 - q_min), 1e-9);

  double lcd = 0.0;
  for (const auto& s : strokes)
    for (double tau : {0.05, 0.1, 0.5, 1.0, 5.0})
      lcd = std::max(lcd, std::fabs(lcd_final_adiabaticity(
                                        FrequencyProtocol::polynomial_ramp(s.w_start, s.w_end, tau), c.solver) -
                                    1.0));
  report.check("lcd_shortcut_exact", lcd, 1e-6, "Q*(tau) under LCD driving");

  double scaling = 0.0;
  for (const auto& s : strokes) {
    const auto init = ThermalOscillatorState::make(s.beta, s.w_start, c.hbar);
    auto scaled = [&](double tau) {
      return sa_cost_time_average(FrequencyProtocol::polynomial_ramp(s.w_start, s.w_end, tau), init, c.quad_tol) *
             tau * tau;
    };
    const double ref = scaled(0.1);
    for (double tau : {1.0, 10.0}) scaling = std::max(scaling, std::fabs(scaled(tau) / ref - 1.0));
  }
  report.check("cost_tau_squared_scaling", scaling, 1e-8);
}

void thermo_checks(const EngineConfig& c, Report& report) {
  const double w_ad = stroke_work(1.0, c.omega1, c.omega2, c.beta1, c.hbar) +
                      stroke_work(1.0, c.omega2, c.omega1, c.beta2, c.hbar);
  const double q2 = hot_isochore_heat(1.0, c);
  report.check("adiabatic_efficiency_identity", std::fabs(-w_ad / q2 - (1.0 - c.omega1 / c.omega2)), 1e-9);
  report.check("fidelity_identical_states", std::fabs(gaussian_fidelity(c.beta1, c.omega1, c.omega1, 1.0, c.hbar) - 1.0),
               1e-12);

  EngineConfig scaled = c;
  scaled.hbar *= 2;
  scaled.beta1 /= 2;
  scaled.beta2 /= 2;
  const double tau = std::sqrt(c.grid.tau_min * c.grid.tau_max);
  try {
    const auto a = run_cycle(c, tau), b = run_cycle(scaled, tau);
    const double d = std::max({std::fabs(a.eta_sa - b.eta_sa), std::fabs(a.eta_na - b.eta_na),
                               std::fabs(a.eta_qsl - b.eta_qsl)});
    report.check("hbar_rescaling_invariance", d, 1e-12, fmt::format("tau = {:.6g}", tau));
  } catch (const Error& e) {
    report.fail("hbar_rescaling_invariance", e.what());
  }
}

void sweep_checks(const EngineConfig& c, Report& report) {
  const auto rows = sweep(c);
  std::vector<const SweepRow*> ok;
  std::size_t inverted = 0;
  std::string first_error;
  for (const auto& r : rows) {
    if (!r.metrics) {
      if (first_error.empty()) first_error = fmt::format("tau = {:.6g}: {}", r.tau, r.error);
      continue;
    }
    ok.push_back(&r);
    if (r.metrics->compression.inversion.inverted || r.metrics->expansion.inversion.inverted) ++inverted;
  }
  const std::size_t failed = rows.size() - ok.size();
  if (failed > 0)
    report.fail("sweep_rows", fmt::format("{} of {} rows failed; first: {}", failed, rows.size(), first_error));
  else
    report.check("sweep_rows", 0.0, 0.0, fmt::format("{} rows", rows.size()));
  if (inverted > 0)
    report.warn("trap_inversion", fmt::format("{} of {} rows have Omega^2 <= 0 somewhere", inverted, rows.size()));
  if (ok.empty()) return;

  double eta_excess = 0.0, power_deficit = 0.0, inv_tau = 0.0, friction = 0.0, bound_excess = 0.0;
  std::size_t non_monotone = 0, premise = 0;
  const double p_tau = ok.front()->metrics->p_sa * ok.front()->tau;
  double prev_eta = -INFINITY;
  for (const SweepRow* r : ok) {
    const CycleMetrics& m = *r->metrics;
    eta_excess = std::max(eta_excess, m.eta_sa - m.eta_ad);
    power_deficit = std::max(power_deficit, m.p_na - m.p_sa);
    inv_tau = std::max(inv_tau, std::fabs(m.p_sa * r->tau / p_tau - 1.0));
    friction = std::max({friction, -m.compression.work_nonadiabatic_excess, -m.expansion.work_nonadiabatic_excess});
    if (m.is_engine_na && m.eta_sa < prev_eta) ++non_monotone;
    prev_eta = m.eta_sa;
    if (m.compression.qsl_premise && m.expansion.qsl_premise) {
      ++premise;
      bound_excess = std::max({bound_excess, m.eta_sa - m.eta_qsl, m.eta_qsl - m.eta_ad});
      if (m.p_qsl) bound_excess = std::max(bound_excess, m.p_sa - *m.p_qsl);
    }
  }
  report.check("eta_sa_below_eta_ad", eta_excess, 1e-12);
  report.check("p_sa_at_least_p_na", power_deficit, 1e-12);
  report.check("p_sa_inverse_tau", inv_tau, 1e-9);
  report.check("friction_nonnegative", friction, 1e-9);
  if (non_monotone > 0)
    report.warn("eta_sa_monotone", fmt::format("{} decreasing steps in the engine regime", non_monotone));
  else
    report.check("eta_sa_monotone", 0.0, 0.0);
  report.check("qsl_bound_ordering", bound_excess, 1e-12,
               fmt::format("premise holds on {} of {} rows", premise, ok.size()));
}

int cmd_validate(const Context& ctx) {
  const EngineConfig c = resolve_config(ctx);
  Report report;
  const auto violations = config_violations(c);
  if (!violations.empty()) {
    for (const auto& v : violations) report.fail("config", v);
    return report.print(std::cout);
  }
  report.check("config", 0.0, 0.0);
  try {
    dynamics_checks(c, report);
    thermo_checks(c, report);
    sweep_checks(c, report);
  } catch (const Error& e) {
    report.fail("numerics", e.what());
  }
  return report.print(std::cout);
}

// ---------------------------------------------------------------------------
// protocol-dump

struct DumpOptions {
  double omega_i = 0.32;
  double omega_f = 1.0;
  double tau = 1.0;
  std::size_t points = 201;
  double beta = 0.5;
  double hbar = 1.0;
  std::string table;
  std::string out;
};

int cmd_protocol_dump(const Context& ctx, const DumpOptions& o) {
  if (o.points < 2) throw ConfigError("--points must be at least 2");
  if (!(o.beta > 0.0) || !(o.hbar > 0.0)) throw ConfigError("--beta and --hbar must be positive");
  const FrequencyProtocol p = o.table.empty() ? FrequencyProtocol::polynomial_ramp(o.omega_i, o.omega_f, o.tau)
                                              : load_protocol_table(o.table);
  const auto init = ThermalOscillatorState::make(o.beta, p.omega_initial(), o.hbar);

  Output file(o.out);
  auto& out = file.stream();
  std::string command;
  for (const auto& a : ctx.argv) command += (command.empty() ? "" : " ") + a;
  fmt::print(out, "# sta-otto {}\n# command: {}\n", STA_OTTO_VERSION, command);
  out << "t,omega,omega_dot,omega_ddot,omega_eff_sq,h_sa,q_star_lcd,q_star_lcd_uncorrected\n";
  for (std::size_t i = 0; i < o.points; ++i) {
    const double t = i + 1 == o.points ? p.duration()
                                       : p.duration() * static_cast<double>(i) / static_cast<double>(o.points - 1);
    const ProtocolSample s = p.sample(t);
    out << format_number(t);
    for (double v : {s.omega, s.omega_dot, s.omega_ddot, s.omega_eff_sq, sa_energy_instant(s, init),
                     q_star_lcd_instant(s), q_star_lcd_uncorrected(s)})
      out << ',' << format_number(v);
    out << '\n';
  }
  return Ok;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return UsageError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return NumericalFailure;
  }
}

}  // namespace

int run(int argc, char** argv) {
  Context ctx;
  ctx.argv.assign(argv, argv + argc);

  CLI::App app{"Quantum Otto engine with shortcut-to-adiabaticity strokes", "sta-otto"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sta-otto ") + STA_OTTO_VERSION);

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", ctx.config_path, "Configuration file (key = value)")
        ->envname("STA_OTTO_CONFIG");
  };

  int code = Ok;

  double tau = 0.0;
  std::string csv_path;
  auto* cycle = app.add_subcommand("cycle", "Evaluate one engine cycle");
  add_config(cycle);
  cycle->add_option("--tau", tau, "Stroke duration")->required();
  cycle->add_option("--csv", csv_path, "Also write the cycle as a one-row CSV");
  cycle->callback([&] { code = guarded([&] { return cmd_cycle(ctx, tau, csv_path); }); });

  std::string out_path;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate the cycle over the configured tau grid");
  add_config(sweep_cmd);
  sweep_cmd->add_option("-o,--out", out_path, "CSV output file (default: stdout)");
  sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep_cmd->callback([&] { code = guarded([&] { return cmd_sweep(ctx, out_path, threads); }); });

  std::string kind = "efficiency";
  std::optional<double> lo, hi;
  auto* cross = app.add_subcommand("crossover", "Locate the eta_SA = eta_NA or heat-sign crossing");
  add_config(cross);
  cross->add_option("--kind", kind, "efficiency or heat")->check(CLI::IsMember({"efficiency", "heat"}));
  cross->add_option("--lo", lo, "Lower end of the tau bracket (default: tau_min)");
  cross->add_option("--hi", hi, "Upper end of the tau bracket (default: tau_max)");
  cross->callback([&] { code = guarded([&] { return cmd_crossover(ctx, kind, lo, hi); }); });

  auto* validate = app.add_subcommand("validate", "Run the invariant checks and report residuals");
  add_config(validate);
  validate->callback([&] { code = guarded([&] { return cmd_validate(ctx); }); });

  DumpOptions dump;
  auto* pd = app.add_subcommand("protocol-dump", "Write a frequency protocol and its shortcut terms as CSV");
  pd->add_option("--omega-i", dump.omega_i, "Initial frequency");
  pd->add_option("--omega-f", dump.omega_f, "Final frequency");
  pd->add_option("--tau", dump.tau, "Stroke duration");
  pd->add_option("--points", dump.points, "Number of samples");
  pd->add_option("--beta", dump.beta, "Inverse temperature of the initial state");
  pd->add_option("--hbar", dump.hbar, "Reduced Planck constant");
  pd->add_option("--table", dump.table, "Two-column CSV (t, omega) used instead of the quintic ramp");
  pd->add_option("-o,--out", dump.out, "CSV output file (default: stdout)");
  pd->callback([&] { code = guarded([&] { return cmd_protocol_dump(ctx, dump); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : UsageError;
  }
  return code;
}

}  // namespace sta_otto::cli
