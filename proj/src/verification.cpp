#include "sqg/verification.hpp"

#include <fftw3.h>

#include <filesystem>
#include <fstream>

#include "check_util.hpp"
#include "json.hpp"
#include "sqg/errors.hpp"

namespace sqg {

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "bernstein", "positivity",      "heat_kernel",       "lin_gevrey",
      "concavity", "r_derivatives",   "commutator_decay",  "wellposedness"};
  return ids;
}

CheckConfig default_check_config(const std::string& id) {
  CheckConfig cfg;
  cfg.check_id = id;
  if (id == "bernstein") {
    cfg.n = 128;
    cfg.j_lo = 0;
    cfg.j_hi = 5;
    cfg.s = {0.25, 0.5, 1.0};
    cfg.p = {2, 4, 8};
    cfg.trials = 500;
  } else if (id == "positivity") {
    cfg.n = 64;
    cfg.j_lo = 0;
    cfg.j_hi = 3;
    cfg.s = {0.25, 0.5, 0.9};
    cfg.p = {2, 4, 6};
    cfg.trials = 200;
    cfg.padding = true;
  } else if (id == "heat_kernel") {
    cfg.n = 128;
    cfg.j_lo = 1;
    cfg.j_hi = 5;
    cfg.t = {0.01, 0.03, 0.1, 0.3, 1.0};
    cfg.p = {2, 4};
    cfg.kappa = {0.5, 0.8};
    cfg.trials = 100;
  } else if (id == "lin_gevrey") {
    cfg.n = 128;
    cfg.j_lo = 0;
    cfg.j_hi = 4;
    cfg.gamma = {0.01, 0.1, 0.5};
    cfg.alpha = {0.3};
    cfg.kappa = {0.8};
    cfg.p = {2, 4};
    cfg.trials = 50;
  } else if (id == "concavity") {
    cfg.alpha = {0.3, 0.5, 0.9};
    cfg.c = {0.5, 1.0, 2.0};
  } else if (id == "r_derivatives") {
    cfg.alpha = {0.3, 0.7};
    cfg.sigma = {0.0, 0.5, 1.0};
    cfg.j_lo = 3;  // smallest separation k - l
    cfg.j_hi = 7;  // largest separation
    cfg.max_order = 2;
  } else if (id == "commutator_decay") {
    cfg.n = 128;
    cfg.j_lo = 1;
    cfg.j_hi = 5;
    cfg.s = {1.2, 1.3};
    cfg.t = {0.3, 0.5};
    cfg.p = {2, 4};
    cfg.gamma = {0.0, 0.1};
    cfg.alpha = {0.5};
    cfg.delta = 0.1;
    cfg.trials = 50;
    cfg.allow_boundary = true;
  } else if (id == "wellposedness") {
    cfg.n = 128;
    cfg.kappa = {0.8};
    cfg.alpha = {0.4};
    cfg.beta = 0.3;
    cfg.p = {2};
    cfg.amplitudes = {0.01, 0.1, 1.0};
  } else {
    std::string valid;
    for (const auto& c : check_ids()) valid += (valid.empty() ? "" : ", ") + c;
    throw ConfigError("unknown check '" + id + "' (valid: " + valid + ")");
  }
  return cfg;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

void add_fit(InequalityReport& report, Fit fit) { report.fits.push_back(std::move(fit)); }

void finalize(InequalityReport& report) {
  bool failed = false, weak = false;
  for (const Fit& f : report.fits) {
    if (!f.pass) failed = true;
    if (!std::isnan(f.r_squared) && f.r_squared < 0.9) weak = true;
  }
  if (failed)
    report.verdict = Verdict::fail;
  else if (weak || report.fits.empty())
    report.verdict = Verdict::inconclusive;
  else
    report.verdict = Verdict::pass;
}

std::vector<std::string> commutator_hypothesis_violations(double s, double t, double p,
                                                          double delta) {
  std::vector<std::string> out;
  const double crit = 2.0 / p;
  if (!(crit < s && s < 1.0 + crit - delta)) out.push_back("(i)");
  if (!(t < crit)) out.push_back("(ii)");
  if (!(s + t > crit)) out.push_back("(iii)");
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace detail {

InequalityReport start_report(const CheckConfig& cfg) {
  InequalityReport r;
  r.check_id = cfg.check_id;
  r.config = {
      {"check_id", cfg.check_id},
      {"n", std::to_string(cfg.n)},
      {"box_length", fmt(cfg.box_length)},
      {"j_lo", std::to_string(cfg.j_lo)},
      {"j_hi", std::to_string(cfg.j_hi)},
      {"p", fmt(cfg.p)},
      {"s", fmt(cfg.s)},
      {"t", fmt(cfg.t)},
      {"alpha", fmt(cfg.alpha)},
      {"kappa", fmt(cfg.kappa)},
      {"gamma", fmt(cfg.gamma)},
      {"sigma", fmt(cfg.sigma)},
      {"c", fmt(cfg.c)},
      {"amplitudes", fmt(cfg.amplitudes)},
      {"delta", fmt(cfg.delta)},
      {"beta", fmt(cfg.beta)},
      {"lambda", fmt(cfg.lambda)},
      {"gamma_margin", fmt(cfg.gamma_margin)},
      {"trials", std::to_string(cfg.trials)},
      {"seed", std::to_string(cfg.seed)},
      {"slope_slack", fmt(cfg.slope_slack)},
      {"constant_cap", fmt(cfg.constant_cap)},
      {"max_order", std::to_string(cfg.max_order)},
      {"bump_sharpness", fmt(cfg.bump_sharpness)},
      {"padding", cfg.padding ? "true" : "false"},
      {"allow_boundary", cfg.allow_boundary ? "true" : "false"},
      {"dt", fmt(cfg.dt)},
      {"t_end", fmt(cfg.t_end)},
      {"picard_depth", std::to_string(cfg.picard_depth)},
      {"picard_amplitude", fmt(cfg.picard_amplitude)},
      {"record_every", std::to_string(cfg.record_every)},
      {"initial_kind", cfg.initial_kind},
  };
  r.environment = {
      {"fftw", fftw_version},
#ifdef __VERSION__
      {"compiler", __VERSION__},
#endif
#ifdef _OPENMP
      {"openmp", "enabled"},
#else
      {"openmp", "disabled"},
#endif
  };
  return r;
}

}  // namespace detail

InequalityReport run_check(const CheckConfig& cfg) {
  const std::string& id = cfg.check_id;
  if (id == "bernstein") return check_bernstein(cfg);
  if (id == "positivity") return check_positivity(cfg);
  if (id == "heat_kernel") return check_heat_kernel(cfg);
  if (id == "lin_gevrey") return check_lin_gevrey(cfg);
  if (id == "concavity") return check_concavity(cfg);
  if (id == "r_derivatives") return check_r_derivatives(cfg);
  if (id == "commutator_decay") return check_commutator_decay(cfg);
  if (id == "wellposedness") return check_wellposedness(cfg);
  default_check_config(id);  // throws the usage error
  return {};
}

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string to_json(const InequalityReport& report, const Metadata& echo) {
  nlohmann::ordered_json j;
  j["check_id"] = report.check_id;
  j["verdict"] = to_string(report.verdict);
  j["key_constant"] = {{"name", report.key_name}, {"value", number(report.key_value)}};
  j["residual"] = number(report.residual);
  j["config"] = nlohmann::ordered_json(report.config);
  if (!echo.empty()) j["run_config"] = nlohmann::ordered_json(echo);
  j["environment"] = nlohmann::ordered_json(report.environment);
  auto& fits = j["fits"] = nlohmann::ordered_json::array();
  for (const Fit& f : report.fits)
    fits.push_back({{"name", f.name},
                    {"value", number(f.value)},
                    {"relation", f.relation},
                    {"bound", number(f.bound)},
                    {"r_squared", number(f.r_squared)},
                    {"pass", f.pass}});
  j["notes"] = report.notes;
  j["columns"] = report.columns;
  auto& rows = j["trials"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(number(v));
    rows.push_back(std::move(r));
  }
  return j.dump(1);
}

void write_report_bundle(const std::string& dir, const std::vector<InequalityReport>& reports,
                         const Metadata& echo) {
  std::filesystem::create_directories(dir);
  for (const auto& r : reports) {
    std::ofstream out(std::filesystem::path(dir) / (r.check_id + ".json"));
    if (!out) throw ConfigError("cannot write report into " + dir);
    out << to_json(r, echo) << '\n';
  }
  std::ofstream csv(std::filesystem::path(dir) / "summary.csv");
  if (!csv) throw ConfigError("cannot write summary into " + dir);
  csv.precision(12);
  for (const auto& [k, v] : echo) csv << "# " << k << '=' << v << '\n';
  csv << "check_id,verdict,key_constant,residual\n";
  for (const auto& r : reports) {
    csv << r.check_id << ',' << to_string(r.verdict) << ',';
    if (std::isfinite(r.key_value)) csv << r.key_value;
    csv << ',';
    if (std::isfinite(r.residual)) csv << r.residual;
    csv << '\n';
  }
}

}  // namespace sqg
