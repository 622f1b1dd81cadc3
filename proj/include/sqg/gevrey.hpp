#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/littlewood_paley.hpp"

namespace sqg {

/// exp(gamma |k|^alpha) may not exceed exp(kGevreyExponentLimit).
inline constexpr double kGevreyExponentLimit = 700.0;

struct GevreyParams {
  double alpha = 0.4;
  double gamma = 0.0;
  double lambda = 1.0;
  double kappa = 0.8;
  double beta = 0.0;
};

/// Throws ConfigError unless 0 < alpha < kappa <= 1, lambda > 0, gamma >= 0
/// and 0 <= beta < kappa/2.
void validate(const GevreyParams& gp);

/// Largest gamma with gamma |k|^alpha <= 700 on the occupied modes of f
/// (infinity for a field with nothing but the mean).
double max_admissible_gamma(const SpectralField& f, double alpha);

/// Multiplier exp(gamma |k|^alpha). Throws GevreyOverflow past the guard;
/// negative gamma is always admissible.
SpectralField gevrey_multiply(const SpectralField& f, double gamma, double alpha);

/// Multiplier |k|^s with symbol(0) = 0; s = 0 is the identity.
SpectralField fractional_laplacian(const SpectralField& f, double s);

/// Multiplier exp(-t |k|^kappa). Throws DomainError for t < 0 or kappa <= 0.
SpectralField heat_semigroup(const SpectralField& f, double t, double kappa);

/// Riesz transform along axis 0 or 1, symbol -i k_j / |k| (zero at k = 0
/// and on the Nyquist lines).
SpectralField riesz_transform(const SpectralField& f, int axis);

/// SQG velocity u = (-R2 theta, R1 theta).
std::pair<SpectralField, SpectralField> riesz_velocity(const SpectralField& theta);

struct RadiusEstimate {
  double gamma = 0.0;
  /// Fewer than three spectral shells above the noise floor in the fit range.
  bool low_signal = false;
  /// Coefficient of determination of the shell regression.
  double r_squared = 0.0;
  int shells_used = 0;
};

/// Least-squares decay rate of -log|theta_hat| against |k|^alpha over the
/// upper half of the populated spectrum, using per-shell means of log|theta_hat|.
/// Clamped at 0.
RadiusEstimate analyticity_radius_estimate(const SpectralField& theta, double alpha);

struct TimeSample {
  double t = 0.0;
  SpectralField field;
};

struct XTNormSample {
  double t = 0.0;
  double gamma_t = 0.0;
  double besov_norm = 0.0;
  double weighted_norm = 0.0;
  double radius_estimate = 0.0;
};

struct XTNormResult {
  double sup = 0.0;
  std::vector<XTNormSample> samples;
};

/// sup_t t^(beta/kappa) ||G_{lambda t^(alpha/kappa)} theta(t)||_{B^(s+beta)_{p,q}}
/// where s, p, q come from `bp`. Throws DomainError for an empty trajectory
/// or t <= 0, GevreyOverflow (with the sample time) past the guard.
XTNormResult xt_norm(const std::vector<TimeSample>& trajectory, const DyadicSystem& sys,
                     const GevreyParams& gp, const BesovParams& bp);

/// CSV with columns t, gamma_t, besov_norm, weighted_norm, radius_estimate.
void write_xt_csv(std::ostream& out, const XTNormResult& result);

}  // namespace sqg
