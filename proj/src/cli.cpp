#include "sqg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "sqg/bilinear.hpp"
#include "sqg/config.hpp"
#include "sqg/errors.hpp"
#include "sqg/solver.hpp"
#include "sqg/verification.hpp"

namespace fs = std::filesystem;

namespace sqg {

namespace {

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.precision(17);
  return out;
}

void write_echo(std::ostream& out, const Metadata& echo) {
  for (const auto& [k, v] : echo) out << "# " << k << '=' << v << '\n';
}

std::string snapshot_name(std::size_t i) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(5) << std::setfill('0') << i << ".snap";
  return s.str();
}

void write_trajectory(const fs::path& dir, const Trajectory& tr, const Metadata& echo) {
  make_dir(dir / "snapshots");
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i)
    write_snapshot((dir / "snapshots" / snapshot_name(i)).string(), tr.snapshots[i].field,
                   tr.snapshots[i].t, echo);
  std::ostringstream csv;
  write_diagnostics_csv(csv, tr);
  std::ofstream out = open_out(dir / "diagnostics.csv");
  write_echo(out, echo);
  for (const auto& w : tr.warnings) out << "# warning: " << w << '\n';
  out << csv.str();
}

int report_blow_up(const BlowUpError& e, const fs::path& dir, const Metadata& echo, std::ostream& err) {
  err << "blow-up: " << e.what() << " at t=" << e.time() << '\n';
  if (e.last_snapshot()) {
    Metadata meta = echo;
    std::ostringstream t;
    t.precision(17);
    t << e.time();
    meta["blow_up_time"] = t.str();
    make_dir(dir);
    const fs::path path = dir / "last_snapshot.snap";
    write_snapshot(path.string(), e.last_snapshot()->field, e.last_snapshot()->t, meta);
    err << "last finite snapshot saved to " << path.string() << '\n';
  }
  return kExitBlowUp;
}

int run_simulate(const Config& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const SolverConfig sc = solver_config(cfg);
  const Metadata echo = cfg.echo();
  make_dir(dir);
  try {
    const Trajectory tr = solve(sc);
    write_trajectory(dir, tr, echo);
    for (const auto& w : tr.warnings) err << "warning: " << w << '\n';
    out << "simulate: " << tr.snapshots.size() << " snapshots, " << tr.diagnostics.size()
        << " diagnostic rows written to " << dir.string() << '\n';
    return kExitOk;
  } catch (const BlowUpError& e) {
    return report_blow_up(e, dir, echo, err);
  }
}

int run_picard(const Config& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const SolverConfig sc = solver_config(cfg);
  const GevreyParams gp = gevrey_params(cfg);
  const Metadata echo = cfg.echo();
  make_dir(dir);
  std::vector<Trajectory> iterates;
  try {
    iterates = picard_solve(sc);
  } catch (const BlowUpError& e) {
    return report_blow_up(e, dir, echo, err);
  }
  const DyadicSystem sys(sc.grid, sc.bump_sharpness);
  const BesovParams bp{sc.sigma(), sc.p, sc.q};
  const std::vector<double> gaps = picard_gaps(iterates, sys, bp);
  std::ofstream csv = open_out(dir / "convergence.csv");
  write_echo(csv, echo);
  csv << "n,gap_to_next,ratio_to_previous_gap,xt_norm\n";
  for (std::size_t n = 0; n < iterates.size(); ++n) {
    write_trajectory(dir / ("iterate_" + std::to_string(n)), iterates[n], echo);
    std::vector<TimeSample> positive;
    for (const auto& s : iterates[n].snapshots)
      if (s.t > 0.0) positive.push_back(s);
    const double xt = positive.empty() ? 0.0 : xt_norm(positive, sys, gp, bp).sup;
    csv << n << ',';
    if (n < gaps.size()) csv << gaps[n];
    csv << ',';
    if (n >= 1 && n < gaps.size() && gaps[n - 1] > 0.0) csv << gaps[n] / gaps[n - 1];
    csv << ',' << xt << '\n';
  }
  out << "picard: " << iterates.size() << " iterates written to " << dir.string() << '\n';
  return kExitOk;
}

std::vector<Snapshot> load_input(const std::string& input) {
  if (input.empty()) throw ConfigError("analyze needs input=<snapshot file or directory>");
  std::vector<Snapshot> snaps;
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(input))
      if (e.is_regular_file() && e.path().extension() == ".snap") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) snaps.push_back(read_snapshot(f.string()));
    std::stable_sort(snaps.begin(), snaps.end(),
                     [](const Snapshot& a, const Snapshot& b) { return a.time < b.time; });
    if (snaps.empty()) throw ConfigError("no .snap files under '" + input + "'");
  } else {
    snaps.push_back(read_snapshot(input));
  }
  return snaps;
}

int run_analyze(const Config& cfg, const fs::path& dir, std::ostream& out) {
  const std::vector<Snapshot> snaps = load_input(cfg.text("input"));
  const BesovParams bp = besov_params(cfg);
  // The radius fit only needs alpha > 0; the Gevrey norms need the full
  // parameter set (alpha < kappa and so on).
  const double alpha = cfg.real("alpha");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  std::optional<GevreyParams> gp;
  std::string gevrey_problem;
  try {
    gp = gevrey_params(cfg);
  } catch (const ConfigError& e) {
    gevrey_problem = e.what();
  }
  if (cfg.real("gamma") > 0.0 && !gp) throw ConfigError(gevrey_problem);
  const Metadata echo = cfg.echo();
  const Snapshot& last = snaps.back();
  const DyadicSystem sys(last.field.grid(), cfg.real("bump_sharpness"));
  make_dir(dir);

  const BesovReport br = besov_report(sys, last.field, bp);
  {
    std::ofstream csv = open_out(dir / "besov.csv");
    write_echo(csv, echo);
    for (const auto& w : br.warnings) csv << "# warning: " << w << '\n';
    write_besov_csv(csv, br);
  }
  const RadiusEstimate radius = analyticity_radius_estimate(last.field, alpha);
  std::ofstream csv = open_out(dir / "analysis.csv");
  write_echo(csv, echo);
  csv << "quantity,value\n";
  csv << "time," << last.time << '\n';
  csv << "n," << last.field.grid().n() << '\n';
  csv << "besov_norm," << br.norm << '\n';
  csv << "discarded_energy_fraction," << br.discarded_energy_fraction << '\n';
  csv << "radius_estimate," << radius.gamma << '\n';
  csv << "radius_r_squared," << radius.r_squared << '\n';
  csv << "radius_shells_used," << radius.shells_used << '\n';
  csv << "radius_low_signal," << (radius.low_signal ? 1 : 0) << '\n';
  if (gp && gp->gamma > 0.0)
    csv << "gevrey_besov_norm," << besov_norm(sys, gevrey_multiply(last.field, gp->gamma, gp->alpha), bp)
        << '\n';
  out << "analyze: t=" << last.time << " besov_norm=" << br.norm << " radius=" << radius.gamma
      << (radius.low_signal ? " (low signal)" : "") << '\n';

  std::vector<TimeSample> traj;
  for (const auto& s : snaps)
    if (s.time > 0.0) traj.push_back({s.time, s.field});
  if (snaps.size() > 1 && !traj.empty() && !gp) {
    csv << "# warning: X_T norm skipped: " << gevrey_problem << '\n';
    out << "analyze: X_T norm skipped: " << gevrey_problem << '\n';
  } else if (snaps.size() > 1 && !traj.empty()) {
    const XTNormResult xt = xt_norm(traj, sys, *gp, bp);
    std::ofstream x = open_out(dir / "xt.csv");
    write_echo(x, echo);
    write_xt_csv(x, xt);
    csv << "xt_norm," << xt.sup << '\n';
    out << "analyze: X_T norm over " << traj.size() << " snapshots = " << xt.sup << '\n';
  }
  return kExitOk;
}

int run_verify(const Config& cfg, const std::vector<std::string>& requested, const fs::path& dir,
               std::ostream& out) {
  std::vector<std::string> ids = requested.empty() ? check_ids() : requested;
  std::vector<CheckConfig> configs;
  for (const auto& id : ids) configs.push_back(check_config(cfg, id));  // rejects unknown ids first
  std::vector<InequalityReport> reports;
  bool failed = false;
  for (const auto& c : configs) {
    reports.push_back(run_check(c));
    const InequalityReport& r = reports.back();
    failed = failed || r.verdict == Verdict::fail;
    out << r.check_id << ", " << to_string(r.verdict) << ", " << r.key_name << "≈" << r.key_value << '\n';
  }
  write_report_bundle(dir.string(), reports, cfg.echo());
  out << "verify: reports written to " << dir.string() << '\n';
  return failed ? kExitCheckFailed : kExitOk;
}

int run_symbols(const Config& cfg, const fs::path& dir, std::ostream& out) {
  for (const SymbolInfo& s : symbol_registry()) {
    out << s.id << '(';
    for (std::size_t i = 0; i < s.params.size(); ++i)
      out << (i ? ", " : "") << s.params[i] << '=' << s.defaults[i];
    out << "): " << s.description << '\n';
  }
  if (!cfg.is_set("symbol")) return kExitOk;

  const BilinearSymbol m =
      make_symbol(cfg.text("symbol"), cfg.real_list("symbol_params"), cfg.real("bump_sharpness"));
  const MarcinkiewiczReport mr =
      marcinkiewicz_check(m, static_cast<int>(cfg.integer("symbol_order")), default_probes(m));
  const Grid grid(static_cast<int>(cfg.integer("n")), cfg.real("box_length"));
  const NormEstimate ne = estimate_operator_norm(m, grid, cfg.real("symbol_p"), cfg.real("symbol_q"),
                                                 static_cast<int>(cfg.integer("symbol_trials")),
                                                 static_cast<std::uint64_t>(cfg.integer("seed")));
  make_dir(dir);
  std::ofstream csv = open_out(dir / "symbol.csv");
  write_echo(csv, cfg.echo());
  csv << "# norm_estimate=" << ne.estimate << "\n# r=" << ne.r
      << "\n# in_theorem_range=" << (ne.in_theorem_range ? "true" : "false") << '\n';
  csv << "beta_xi1,beta_xi2,beta_eta1,beta_eta2,max_weighted,non_finite\n";
  for (const auto& e : mr.entries)
    csv << e.beta_xi[0] << ',' << e.beta_xi[1] << ',' << e.beta_eta[0] << ',' << e.beta_eta[1] << ','
        << e.max_weighted << ',' << (e.non_finite ? 1 : 0) << '\n';
  out << m.id << ": norm estimate " << ne.estimate << " (L^" << cfg.real("symbol_p") << " x L^"
      << cfg.real("symbol_q") << " -> L^" << ne.r << (ne.in_theorem_range ? "" : ", outside theorem range")
      << "), max weighted derivative " << mr.max_entry() << '\n';
  return kExitOk;
}

}  // namespace

int run(const Command& command, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> verbs = {"simulate", "picard", "analyze", "verify", "symbols"};
  if (std::find(verbs.begin(), verbs.end(), command.verb) == verbs.end()) {
    err << "unknown verb '" << command.verb << "' (valid: simulate, picard, analyze, verify, symbols)\n";
    return kExitUsage;
  }
  try {
    const Config cfg = parse_config(command.config_path, command.overrides);
    const fs::path dir(command.output_dir);
    if (command.verb == "simulate") return run_simulate(cfg, dir, out, err);
    if (command.verb == "picard") return run_picard(cfg, dir, out, err);
    if (command.verb == "analyze") return run_analyze(cfg, dir, out);
    if (command.verb == "verify") return run_verify(cfg, command.checks, dir, out);
    return run_symbols(cfg, dir, out);
  } catch (const BlowUpError& e) {
    return report_blow_up(e, command.output_dir, {}, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sqg
