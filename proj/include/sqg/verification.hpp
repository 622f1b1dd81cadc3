#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sqg/snapshot.hpp"

namespace sqg {

/// Knobs shared by the inequality checks. Each check reads the fields it
/// needs; default_check_config fills them per check.
struct CheckConfig {
  std::string check_id;
  int n = 128;
  double box_length = 2.0 * std::numbers::pi;
  int j_lo = 0;
  int j_hi = 5;
  std::vector<double> p;
  std::vector<double> s;
  std::vector<double> t;
  std::vector<double> alpha;
  std::vector<double> kappa;
  std::vector<double> gamma;
  std::vector<double> sigma;
  std::vector<double> c;
  std::vector<double> amplitudes;
  double delta = 0.1;
  double beta = 0.3;
  double lambda = 1.0;
  /// G_{-gamma'} test fields use gamma' = gamma + gamma_margin.
  double gamma_margin = 0.05;
  int trials = 100;
  std::uint64_t seed = 1;
  double slope_slack = 0.2;
  double constant_cap = 50.0;
  int max_order = 2;
  double bump_sharpness = 1.0;
  /// Evaluate nonlinear powers on the 2n grid.
  bool padding = false;
  /// Run commutator triples that sit on the edge of hypothesis (ii).
  bool allow_boundary = false;
  // Solver runs (wellposedness).
  double dt = 2e-3;
  double t_end = 0.2;
  int picard_depth = 6;
  double picard_amplitude = 1.0;
  int record_every = 5;
  std::string initial_kind = "white";
};

/// Check ids in their canonical order.
const std::vector<std::string>& check_ids();

/// Defaults for one check; throws ConfigError for an unknown id.
CheckConfig default_check_config(const std::string& check_id);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

/// One fitted quantity compared with its tolerance.
struct Fit {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  /// "<=", ">=" or ">".
  std::string relation = "<=";
  /// Coefficient of determination for regressions, NaN otherwise.
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

struct InequalityReport {
  std::string check_id;
  Metadata config;
  Metadata environment;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Fit> fits;
  std::vector<std::string> notes;
  Verdict verdict = Verdict::inconclusive;
  std::string key_name;
  double key_value = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

/// Adds a fit; regressions with R^2 < 0.9 make the verdict inconclusive
/// unless something else fails.
void add_fit(InequalityReport& report, Fit fit);
/// Sets the verdict from the fits.
void finalize(InequalityReport& report);

InequalityReport check_bernstein(const CheckConfig& cfg);
InequalityReport check_positivity(const CheckConfig& cfg);
InequalityReport check_heat_kernel(const CheckConfig& cfg);
InequalityReport check_lin_gevrey(const CheckConfig& cfg);
InequalityReport check_concavity(const CheckConfig& cfg);
InequalityReport check_r_derivatives(const CheckConfig& cfg);
InequalityReport check_commutator_decay(const CheckConfig& cfg);
InequalityReport check_wellposedness(const CheckConfig& cfg);

/// Dispatch by cfg.check_id.
InequalityReport run_check(const CheckConfig& cfg);

/// Which hypothesis of the commutator theorem (s, t, p, delta) violate:
/// "(i)", "(ii)", "(iii)" in order; empty when all hold.
std::vector<std::string> commutator_hypothesis_violations(double s, double t, double p,
                                                          double delta);

/// Least-squares line y = a + b x with its R^2.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// JSON text of one report; a non-empty `echo` is embedded as run_config.
std::string to_json(const InequalityReport& report, const Metadata& echo = {});

/// Writes <dir>/<check_id>.json for every report and <dir>/summary.csv with
/// columns check_id, verdict, key_constant, residual. `echo` goes into every
/// file.
void write_report_bundle(const std::string& dir, const std::vector<InequalityReport>& reports,
                         const Metadata& echo = {});

}  // namespace sqg
