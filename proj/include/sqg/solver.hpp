#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sqg/errors.hpp"
#include "sqg/field.hpp"
#include "sqg/gevrey.hpp"
#include "sqg/littlewood_paley.hpp"

namespace sqg {

enum class Dealias { two_thirds, none };

Dealias parse_dealias(const std::string& name);
std::string to_string(Dealias rule);

/// Initial data profile.
///
/// zero; mode: amplitude cos(m k0 x1); vortex_pair: Gaussian pair of peak
/// `amplitude`; ring: random phases on the integer shell |m| = mode;
/// white: random phases with unit modulus inside the two-thirds box;
/// random_besov: sum of random dyadic blocks weighted by 2^(-j sigma);
/// snapshot: read from `path`. ring, white and random_besov are scaled so
/// the homogeneous B^sigma_{p,q} norm equals `amplitude`.
struct InitialData {
  std::string kind = "vortex_pair";
  double amplitude = 0.1;
  int mode = 1;
  std::uint64_t seed = 1;
  std::string path;
};

struct SolverConfig {
  Grid grid{64};
  double kappa = 0.8;
  double dt = 1e-3;
  double t_end = 0.1;
  Dealias dealias = Dealias::two_thirds;
  int picard_depth = 0;
  InitialData initial_data;
  int record_every = 10;
  /// Diagnostics: L^p exponent, Besov summation index, Gevrey exponent.
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.4;
  double bump_sharpness = 1.0;

  /// Critical regularity 1 + 2/p - kappa.
  double sigma() const { return 1.0 + 2.0 / p - kappa; }
};

/// Throws ConfigError on dt <= 0, t_end < dt, kappa outside (0, 2],
/// record_every < 1 or negative picard depth.
void validate(const SolverConfig& config);

struct DiagnosticRecord {
  double t = 0.0;
  double l2 = 0.0;
  double lp = 0.0;
  double besov = 0.0;
  double radius = 0.0;
};

struct Trajectory {
  SolverConfig config;
  std::vector<TimeSample> snapshots;
  std::vector<DiagnosticRecord> diagnostics;
  std::vector<std::string> warnings;
};

/// Non-finite state during time stepping. Carries the last finite snapshot.
class BlowUpError : public Error {
 public:
  BlowUpError(double time, std::optional<TimeSample> last, std::vector<std::string> warnings = {});
  double time() const { return time_; }
  const std::optional<TimeSample>& last_snapshot() const { return last_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  double time_;
  std::optional<TimeSample> last_;
  std::vector<std::string> warnings_;
};

/// Build theta_0 on the configured grid (mean zero, dealiased under the
/// two-thirds rule).
SpectralField make_initial_data(const SolverConfig& config);

/// Coefficients of u . grad(theta) with u = (-R2 theta, R1 theta); zero mode
/// removed and the dealias mask applied.
SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias);

struct StepInfo {
  /// dt * k_max * max|u|; above 1 the step is flagged as likely unstable.
  double stability_number = 0.0;
};

/// One integrating-factor Heun step of d/dt theta + u.grad theta + Lambda^kappa theta = 0.
/// Throws BlowUpError (time < 0) when the result is not finite.
SpectralField step(const SpectralField& theta, double dt, const SolverConfig& config,
                   StepInfo* info = nullptr);

/// Time integration to t_end. Throws BlowUpError with the last valid snapshot.
Trajectory solve(const SolverConfig& config);

/// theta^0 (heat flow) through theta^{picard_depth}; iterate n+1 is advected
/// by the velocity of iterate n.
std::vector<Trajectory> picard_solve(const SolverConfig& config);

/// Per iterate pair, the largest B^sigma_{p,q} norm of theta^{n+1} - theta^n
/// over the common snapshot times.
std::vector<double> picard_gaps(const std::vector<Trajectory>& iterates, const DyadicSystem& sys,
                                const BesovParams& bp);

/// CSV with columns t, l2, lp, besov, radius.
void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace sqg
