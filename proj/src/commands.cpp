#include "degenfront/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>

#include "degenfront/artifacts.hpp"
#include "degenfront/checks.hpp"
#include "degenfront/error.hpp"
#include "degenfront/evolution.hpp"
#include "degenfront/grid.hpp"
#include "degenfront/linop.hpp"
#include "degenfront/oracle.hpp"
#include "degenfront/semigroup.hpp"
#include "degenfront/spectrum.hpp"

#ifndef DEGENFRONT_VERSION
#define DEGENFRONT_VERSION "0.0.0"
#endif

namespace degenfront {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class ArtifactSet {
 public:
  explicit ArtifactSet(std::string dir) : dir_(std::move(dir)) {}

  std::string path(const std::string& name) const { return (fs::path(dir_) / name).string(); }

  void write(const std::string& name, const std::string& content) {
    const std::string p = path(name);
    fs::create_directories(fs::path(p).parent_path());
    write_file_atomic(p, content);
    written_.push_back(p);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
  void write_profile(const std::string& name, const FrontProfile& p) {
    const std::string csv = path(name);
    fs::create_directories(fs::path(csv).parent_path());
    write_profile_csv(p, csv);
    written_.push_back(csv);
    written_.push_back(sidecar_path(csv));
  }

  void remove_all() {
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
    written_.clear();
  }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

ExtentOptions extent_of(const RunConfig& cfg) {
  ExtentOptions e;
  e.left_tol = cfg.grid.left_tol;
  e.right_pad = cfg.grid.right_pad;
  return e;
}

KineticsPair kinetics_or_reference(const RunConfig& cfg) {
  return cfg.kinetics ? *cfg.kinetics : KineticsPair::quadratic_cubic(1.0, 0.625);
}

/// Explicit profile file, then inline kinetics, then a profile left by `front`.
FrontProfile obtain_profile(const RunConfig& cfg, std::size_t inline_nodes, std::ostream& log) {
  auto from_file = [&](const std::string& path) {
    auto r = read_profile_csv(path);
    for (const auto& w : r.warnings) log << "warning: " << w << "\n";
    return std::move(r.profile);
  };
  if (cfg.profile_path) return from_file(*cfg.profile_path);
  if (cfg.kinetics) {
    return solve_profile(*cfg.kinetics, cfg.grid.phi_at_zero, extent_of(cfg), inline_nodes);
  }
  const fs::path prior = fs::path(cfg.output) / "profile.csv";
  if (fs::exists(prior)) return from_file(prior.string());
  throw ConfigError("missing profile input");
}

std::vector<double> initial_condition(const FrontProfile& p, const RunConfig& cfg) {
  const auto& ic = cfg.evolution.initial;
  const std::size_t n = p.size() - 2;
  std::vector<double> u(n, 0.0);
  if (ic.kind == "gaussian") {
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (p.x[i + 1] - ic.center) / ic.width;
      u[i] = ic.amplitude * std::exp(-z * z);
    }
  } else if (ic.kind == "random") {
    std::mt19937_64 rng(cfg.seed);
    SmoothFieldOptions opt;
    opt.bumps = ic.bumps;
    opt.center_lo = std::max(p.x.front() + 8.0, -15.0);
    opt.center_hi = p.omega0;
    const std::vector<double> x(p.x.begin() + 1, p.x.end() - 1);
    u = smooth_random_field(x, rng, opt);
    const double m = max_abs(u);
    if (m > 0.0) {
      for (double& v : u) v *= ic.amplitude / m;
    }
  } else if (ic.kind == "shift") {
    const auto s = shifted_front(p, ic.shift);
    for (std::size_t i = 0; i < n; ++i) u[i] = s[i + 1] - p.phi[i + 1];
  } else if (ic.kind == "phi_x") {
    for (std::size_t i = 0; i < n; ++i) u[i] = ic.amplitude * p.phi_x[i + 1];
  }
  return u;
}

json profile_summary(const FrontProfile& p) {
  return {{"n_nodes", p.size()},
          {"h", p.h},
          {"x_left", p.x.front()},
          {"x_right", p.x.back()},
          {"omega0", p.omega0},
          {"travel_from_alpha", p.omega0 - p.shape->position_of(p.kinetics().alpha())},
          {"residual_first_order", p.residuals.first_order},
          {"residual_second_order", p.residuals.second_order}};
}

std::string sweep_name(double eps) {
  std::ostringstream os;
  os << "sweep/eps_" << std::setprecision(3) << eps << ".json";
  return os.str();
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

CheckContext check_context(const RunConfig& cfg) {
  CheckContext ctx;
  ctx.kinetics = kinetics_or_reference(cfg);
  ctx.phi_at_zero = cfg.grid.phi_at_zero;
  ctx.extent = extent_of(cfg);
  ctx.seed = cfg.seed;
  return ctx;
}

json check_to_json(const CheckResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}};
}

int cmd_front(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  if (!cfg.kinetics) throw ConfigError("front requires 'diffusion' and 'reaction'");
  const auto p = solve_profile(*cfg.kinetics, cfg.grid.phi_at_zero, extent_of(cfg), cfg.grid.n_nodes);
  out.write_profile("profile.csv", p);
  log << "omega0 " << format_double(p.omega0) << "\n";
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  const auto p = obtain_profile(cfg, cfg.spectral.n_nodes.value_or(cfg.grid.n_nodes), log);
  const auto r = eigen_spectrum(assemble_operator(p, 0.0), p.kinetics());
  json j = spectrum_to_json(r);
  const auto cls = classify_spectrum(r, p.kinetics());
  j["classification"] = {{"stable", cls.stable}, {"gap_ok", cls.gap_ok},
                         {"zero_simple", cls.zero_simple}, {"notes", cls.notes}};
  out.write_json("spectrum.json", j);
  out.write("eigenvalues.csv", eigenvalues_csv(r));
  log << "lambda0 " << format_double(r.lambda0.real()) << " lambda1 "
      << format_double(r.lambda1.real()) << "\n";
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  const auto p = obtain_profile(cfg, cfg.grid.n_nodes, log);
  const auto d = assemble_operator(p, 0.0);
  const double l1 = symmetrized_lambda1(d);
  const double t_end = cfg.evolution.t_end.value_or(30.0 / std::abs(l1));
  auto pd = build_projection(p, 0.0);
  attach_discrete_kernel(pd, d);
  const auto u0 = initial_condition(p, cfg);

  const auto traj = evolve_linear(d, u0, t_end, cfg.evolution.dt, cfg.evolution.theta, &pd);
  out.write("trajectory.csv", trajectory_csv(traj));
  const auto fit = fit_decay(traj, cfg.evolution.t_burn);
  json dj = decay_fit_to_json(fit);
  dj["lambda1"] = l1;
  out.write_json("decay_fit.json", dj);

  NonlinearOptions opt;
  opt.t_end = cfg.evolution.nonlinear_t_end;
  opt.dt = cfg.evolution.dt;
  opt.track_every = cfg.evolution.track_every;
  const std::size_t every = cfg.evolution.snapshot_every;
  if (every > 0) {
    opt.observer = [&](std::size_t step, double, const std::vector<double>& v) {
      if (step % every == 0) {
        std::ostringstream name;
        name << "snapshots/step_" << std::setw(7) << std::setfill('0') << step << ".csv";
        out.write(name.str(), snapshot_csv(p.x, v));
      }
    };
  }
  const auto run = evolve_nonlinear(p, u0, opt);
  out.write("run.csv", run_csv(run));
  out.write_json("evolve.json", {{"initial", cfg.evolution.initial.kind},
                                 {"linear_t_end", t_end},
                                 {"lambda1", l1},
                                 {"fitted_rate", fit.fitted_rate},
                                 {"nonlinear_max_drift", run.max_drift},
                                 {"final_shift", run.records.empty() ? 0.0 : run.records.back().shift},
                                 {"range_flags", run.range_flags.size()},
                                 {"extension_dependent", run.extension_dependent}});
  log << "rate " << format_double(fit.fitted_rate) << " (-lambda1 " << format_double(-l1) << ")\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  const auto p = obtain_profile(cfg, cfg.spectral.sweep_n_nodes, log);
  const auto sw = epsilon_sweep(p, cfg.spectral.epsilons);
  json summary = {{"epsilons", sw.epsilons},
                  {"lambda1", sw.lambda1},
                  {"continuity_ok", sw.continuity_ok},
                  {"continuity_at_smallest", sw.continuity_at_smallest},
                  {"monotone_ok", sw.monotone_ok},
                  {"unstable_count", sw.unstable_count},
                  {"delocalized_ok", sw.delocalized_ok},
                  {"reports", json::array()}};
  for (std::size_t i = 0; i < sw.reports.size(); ++i) {
    const std::string name = sweep_name(sw.epsilons[i]);
    json j = spectrum_to_json(sw.reports[i]);
    j["delocalized_ceiling"] =
        std::isfinite(sw.delocalized_ceiling[i]) ? json(sw.delocalized_ceiling[i]) : json(nullptr);
    out.write_json(name, j);
    summary["reports"].push_back(name);
  }
  out.write_json("sweep.json", summary);
  log << "continuity " << format_double(sw.continuity_at_smallest) << "\n";
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  AcceptanceSuite suite(check_context(cfg));
  json checks = json::array();
  bool failed = false;
  suite.run_all([&](const CheckResult& r) {
    log << format_check_line(r) << "\n" << std::flush;
    checks.push_back(check_to_json(r));
    failed = failed || r.status == CheckStatus::fail;
  });
  out.write_json("check.json", {{"checks", checks}, {"passed", !failed}});
  return failed ? kExitCheckFailed : kExitOk;
}

int cmd_report(const RunConfig& cfg, ArtifactSet& out, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  AcceptanceSuite suite(check_context(cfg));
  json checks = json::array(), timing = json::object();
  std::ostringstream text;
  text << "degenfront report\n\nchecks\n";
  suite.run_all([&](const CheckResult& r) {
    log << format_check_line(r) << "\n" << std::flush;
    checks.push_back(check_to_json(r));
    timing["check_" + std::to_string(r.id)] = r.seconds;
    text << "  " << to_string(r.status) << "  " << r.id << " " << r.name << ": " << r.detail << "\n";
  });

  const auto& p = suite.profile(2001);
  const auto& s = suite.spectrum(2001);
  const auto d = assemble_operator(p, 0.0);
  auto pd = build_projection(p, 0.0);
  attach_discrete_kernel(pd, d);
  std::vector<double> u0(d.n());
  for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = 0.05 * std::exp(-d.x[i] * d.x[i]);
  const auto fit = fit_decay(evolve_linear(d, u0, 30.0 / std::abs(s.lambda1.real()), 0.01, 1.0, &pd));

  json body = {{"config", config_to_json(cfg)},
               {"profile", profile_summary(p)},
               {"spectrum",
                {{"n_nodes", p.size()},
                 {"lambda0", s.lambda0.real()},
                 {"lambda1", s.lambda1.real()},
                 {"gap", s.gap},
                 {"beta", s.beta},
                 {"max_imag", s.max_imag},
                 {"unstable", unstable_count(s)}}},
               {"decay",
                {{"initial", "gaussian 0.05 exp(-x^2)"},
                 {"fitted_rate", fit.fitted_rate},
                 {"r_squared", fit.r_squared},
                 {"prefactor", fit.prefactor}}},
               {"checks", checks}};
  timing["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json report = {{"report", body},
                 {"provenance",
                  {{"config_hash", hex64(fnv1a(config_to_json(cfg).dump()))},
                   {"code_version", DEGENFRONT_VERSION},
                   {"timestamp", iso_timestamp()}}},
                 {"timing", timing}};
  out.write_json("report.json", report);

  text << "\nprofile  omega0 " << format_double(p.omega0) << "  travel from alpha "
       << format_double(body["profile"]["travel_from_alpha"].get<double>()) << "\n";
  text << "spectrum lambda1 " << format_double(s.lambda1.real()) << "  beta " << format_double(s.beta)
       << "\n";
  text << "decay    rate " << format_double(fit.fitted_rate) << "  r2 " << format_double(fit.r_squared)
       << "\n";
  out.write("report.txt", text.str());
  return kExitOk;
}

}  // namespace

std::optional<Subcommand> parse_subcommand(const std::string& name) {
  for (auto s : {Subcommand::front, Subcommand::spectrum, Subcommand::evolve, Subcommand::sweep,
                 Subcommand::check, Subcommand::report}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::front: return "front";
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::evolve: return "evolve";
    case Subcommand::sweep: return "sweep";
    case Subcommand::check: return "check";
    case Subcommand::report: return "report";
  }
  return "";
}

int run_subcommand(Subcommand cmd, const RunConfig& cfg, std::ostream& log) {
  ArtifactSet out(cfg.output);
  try {
    switch (cmd) {
      case Subcommand::front: return cmd_front(cfg, out, log);
      case Subcommand::spectrum: return cmd_spectrum(cfg, out, log);
      case Subcommand::evolve: return cmd_evolve(cfg, out, log);
      case Subcommand::sweep: return cmd_sweep(cfg, out, log);
      case Subcommand::check: return cmd_check(cfg, out, log);
      case Subcommand::report: return cmd_report(cfg, out, log);
    }
  } catch (...) {
    out.remove_all();
    throw;
  }
  return kExitOk;
}

int dispatch(const std::string& subcommand, const std::string& config_path,
             const std::optional<std::string>& out_dir, const std::optional<std::uint64_t>& seed,
             std::ostream& log, std::ostream& err) {
  const auto cmd = parse_subcommand(subcommand);
  if (!cmd) {
    err << "error: unknown subcommand '" << subcommand << "'\n";
    return kExitConfig;
  }
  try {
    RunConfig cfg = load_config(config_path);
    if (out_dir) cfg.output = *out_dir;
    if (seed) cfg.seed = *seed;
    return run_subcommand(*cmd, cfg, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << subcommand << " failed: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace degenfront
