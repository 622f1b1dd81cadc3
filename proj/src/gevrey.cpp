#include "sqg/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sqg/errors.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

void validate(const GevreyParams& gp) {
  if (!(gp.alpha > 0.0 && gp.alpha < gp.kappa && gp.kappa <= 1.0))
    throw ConfigError("Gevrey parameters need 0 < alpha < kappa <= 1");
  if (!(gp.lambda > 0.0)) throw ConfigError("Gevrey growth rate lambda must be positive");
  if (!(gp.gamma >= 0.0)) throw ConfigError("Gevrey radius gamma must be nonnegative");
  if (!(gp.beta >= 0.0 && gp.beta < 0.5 * gp.kappa))
    throw ConfigError("time weight needs 0 <= beta < kappa/2");
}

double max_admissible_gamma(const SpectralField& f, double alpha) {
  const Grid& grid = f.grid();
  double kmax = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (f[i] != Complex{}) kmax = std::max(kmax, grid.wavenumber_norm(i));
  if (kmax == 0.0) return std::numeric_limits<double>::infinity();
  return kGevreyExponentLimit / std::pow(kmax, alpha);
}

SpectralField gevrey_multiply(const SpectralField& f, double gamma, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Gevrey exponent alpha must be positive");
  if (gamma == 0.0) return f;
  if (gamma > 0.0) {
    const double limit = max_admissible_gamma(f, alpha);
    if (gamma > limit) throw GevreyOverflow(gamma, limit);
  }
  return apply_multiplier(f, [&](const Wavevector& k) {
    return std::exp(gamma * std::pow(k.norm(), alpha));
  });
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(f, [&](const Wavevector& k) {
    const double r = k.norm();
    return r == 0.0 ? 0.0 : std::pow(r, s);
  });
}

SpectralField heat_semigroup(const SpectralField& f, double t, double kappa) {
  if (!(t >= 0.0)) throw DomainError("heat semigroup needs t >= 0");
  if (!(kappa > 0.0)) throw DomainError("dissipation order kappa must be positive");
  if (t == 0.0) return f;
  return apply_multiplier(f, [&](const Wavevector& k) {
    return std::exp(-t * std::pow(k.norm(), kappa));
  });
}

SpectralField riesz_transform(const SpectralField& f, int axis) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid.on_nyquist(i)) continue;
    const Wavevector k = grid.wavevector(i);
    out[i] = Complex(0.0, -(axis == 0 ? k.x : k.y) / k.norm()) * f[i];
  }
  return SpectralField(grid, std::move(out));
}

std::pair<SpectralField, SpectralField> riesz_velocity(const SpectralField& theta) {
  return {-1.0 * riesz_transform(theta, 1), riesz_transform(theta, 0)};
}

RadiusEstimate analyticity_radius_estimate(const SpectralField& theta, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Gevrey exponent alpha must be positive");
  const Grid& grid = theta.grid();
  RadiusEstimate est;
  const double top = theta.max_abs();
  if (top == 0.0) {
    est.low_signal = true;
    return est;
  }
  const double floor = 1e-13 * top;

  struct Shell {
    int modes = 0;
    int above = 0;
    double log_sum = 0.0;
    double x_sum = 0.0;
  };
  std::map<int, Shell> shells;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid.on_nyquist(i)) continue;
    const double r = grid.wavenumber_norm(i);
    const int shell = static_cast<int>(std::lround(r / grid.k0()));
    Shell& s = shells[shell];
    ++s.modes;
    const double a = std::abs(theta[i]);
    if (a > floor) {
      ++s.above;
      s.log_sum += std::log(a);
      s.x_sum += std::pow(r, alpha);
    }
  }

  const int nyquist_shell = grid.n() / 2;
  int top_shell = 0;
  for (const auto& [k, s] : shells)
    if (k <= nyquist_shell && 2 * s.above >= s.modes) top_shell = std::max(top_shell, k);

  std::vector<double> xs, ys;
  for (const auto& [k, s] : shells) {
    if (k > top_shell || 2 * k < top_shell || 2 * s.above < s.modes || s.above == 0) continue;
    xs.push_back(s.x_sum / s.above);
    ys.push_back(s.log_sum / s.above);
  }
  est.shells_used = static_cast<int>(xs.size());
  if (xs.size() < 3) {
    est.low_signal = true;
    return est;
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    est.low_signal = true;
    return est;
  }
  const double slope = sxy / sxx;
  est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  est.gamma = std::max(0.0, -slope);
  return est;
}

XTNormResult xt_norm(const std::vector<TimeSample>& trajectory, const DyadicSystem& sys,
                     const GevreyParams& gp, const BesovParams& bp) {
  if (trajectory.empty()) throw DomainError("X_T norm of an empty trajectory");
  validate(gp);
  BesovParams shifted = bp;
  shifted.s = bp.s + gp.beta;
  validate(shifted);

  XTNormResult result;
  result.samples.resize(trajectory.size());
  for (const TimeSample& sample : trajectory)
    if (!(sample.t > 0.0)) throw DomainError("X_T samples need t > 0");

  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const TimeSample& sample = trajectory[i];
    XTNormSample& out = result.samples[i];
    out.t = sample.t;
    out.gamma_t = gp.lambda * std::pow(sample.t, gp.alpha / gp.kappa);
    SpectralField weighted(sample.field.grid());
    try {
      weighted = gevrey_multiply(sample.field, out.gamma_t, gp.alpha);
    } catch (const GevreyOverflow& e) {
      throw GevreyOverflow(e.gamma(), e.max_admissible_gamma(), sample.t);
    }
    out.besov_norm = besov_norm(sys, weighted, shifted);
    out.weighted_norm = std::pow(sample.t, gp.beta / gp.kappa) * out.besov_norm;
    out.radius_estimate = analyticity_radius_estimate(sample.field, gp.alpha).gamma;
    result.sup = std::max(result.sup, out.weighted_norm);
  }
  return result;
}

void write_xt_csv(std::ostream& out, const XTNormResult& result) {
  out.precision(17);
  out << "t,gamma_t,besov_norm,weighted_norm,radius_estimate\n";
  for (const XTNormSample& s : result.samples)
    out << s.t << ',' << s.gamma_t << ',' << s.besov_norm << ',' << s.weighted_norm << ','
        << s.radius_estimate << '\n';
}

}  // namespace sqg
