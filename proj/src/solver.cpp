#include "sqg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sqg/kernels.hpp"
#include "sqg/rng.hpp"
#include "sqg/snapshot.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

Dealias parse_dealias(const std::string& name) {
  if (name == "two-thirds" || name == "two_thirds") return Dealias::two_thirds;
  if (name == "none") return Dealias::none;
  throw ConfigError("dealias must be two-thirds or none, got " + name);
}

std::string to_string(Dealias rule) { return rule == Dealias::two_thirds ? "two-thirds" : "none"; }

void validate(const SolverConfig& config) {
  if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(config.t_end >= config.dt)) throw ConfigError("t_end must be at least dt");
  if (!(config.kappa > 0.0 && config.kappa <= 2.0))
    throw ConfigError("kappa must lie in (0, 2]");
  if (config.record_every < 1) throw ConfigError("record_every must be at least 1");
  if (config.picard_depth < 0) throw ConfigError("picard_depth must be nonnegative");
  if (!(config.p >= 1.0) || !(config.q >= 1.0))
    throw ConfigError("diagnostic exponents need p, q >= 1");
  if (!(config.alpha > 0.0)) throw ConfigError("alpha must be positive");
}

BlowUpError::BlowUpError(double time, std::optional<TimeSample> last,
                         std::vector<std::string> warnings)
    : Error(time >= 0.0 ? "solution blew up at t=" + std::to_string(time)
                        : std::string("solution became non-finite")),
      time_(time),
      last_(std::move(last)),
      warnings_(std::move(warnings)) {}

namespace {

BesovParams diagnostic_besov(const SolverConfig& config) {
  return {config.sigma(), config.p, config.q};
}

SpectralField random_phases(const Grid& grid, std::uint64_t seed, auto&& keep) {
  std::mt19937_64 rng(mix_seed(seed));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> coeffs(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::size_t c = grid.conjugate_index(i);
    if (c <= i || grid.on_nyquist(i) || !keep(i)) continue;
    coeffs[i] = std::polar(1.0, angle(rng));
    coeffs[c] = std::conj(coeffs[i]);
  }
  return SpectralField(grid, std::move(coeffs));
}

SpectralField scaled_to_besov(const SpectralField& f, const SolverConfig& config) {
  const DyadicSystem sys(config.grid, config.bump_sharpness);
  const double norm = besov_norm(sys, f, diagnostic_besov(config));
  if (!(norm > 0.0)) throw ConfigError("initial data has zero Besov norm on this grid");
  return (config.initial_data.amplitude / norm) * f;
}

// Periodic distance along one axis.
double wrap(double d, double L) { return d - L * std::round(d / L); }

}  // namespace

SpectralField make_initial_data(const SolverConfig& config) {
  const Grid& grid = config.grid;
  const InitialData& init = config.initial_data;
  const double L = grid.box_length();
  SpectralField theta(grid);

  if (init.kind == "zero") {
    return theta;
  } else if (init.kind == "mode") {
    const double k = grid.k0() * init.mode;
    theta = forward_transform(
        sample(grid, [&](double x, double) { return init.amplitude * std::cos(k * x); }));
  } else if (init.kind == "vortex_pair") {
    const double w = L / 16.0;
    auto bump = [&](double x, double y, double cx, double cy) {
      const double dx = wrap(x - cx, L), dy = wrap(y - cy, L);
      return std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
    };
    theta = forward_transform(sample(grid, [&](double x, double y) {
      return init.amplitude * (bump(x, y, 0.375 * L, 0.5 * L) - bump(x, y, 0.625 * L, 0.5 * L));
    }));
  } else if (init.kind == "ring") {
    theta = scaled_to_besov(random_phases(grid, init.seed,
                                          [&](std::size_t i) {
                                            return std::lround(grid.wavenumber_norm(i) /
                                                               grid.k0()) == init.mode;
                                          }),
                            config);
  } else if (init.kind == "white") {
    theta = scaled_to_besov(
        random_phases(grid, init.seed, [&](std::size_t i) { return grid.inside_two_thirds(i); }),
        config);
  } else if (init.kind == "random_besov") {
    const DyadicSystem sys(grid, config.bump_sharpness);
    const double cutoff = grid.k0() * (grid.n() / 3);
    for (int j = sys.j_min(); j <= sys.j_max() && std::ldexp(1.0, j + 1) <= cutoff; ++j)
      theta = theta + std::pow(2.0, -j * config.sigma()) *
                          random_band_limited(grid, j, trial_seed(init.seed, j - sys.j_min()));
    theta = scaled_to_besov(remove_mean(dealias_two_thirds(theta)), config);
  } else if (init.kind == "snapshot") {
    if (init.path.empty()) throw ConfigError("snapshot initial data needs a path");
    const Snapshot snap = read_snapshot(init.path);
    if (snap.field.grid().box_length() != grid.box_length())
      throw ConfigError("snapshot box length differs from the configured grid");
    theta = resample(snap.field, grid);
  } else {
    throw ConfigError("unknown initial data kind '" + init.kind +
                      "' (valid: zero, mode, vortex_pair, ring, white, random_besov, snapshot)");
  }
  theta = remove_mean(theta);
  if (config.dealias == Dealias::two_thirds) theta = dealias_two_thirds(theta);
  return theta;
}

namespace {

struct Velocity {
  RealField u1;
  RealField u2;
  double umax = 0.0;
};

Velocity velocity_of(const SpectralField& theta) {
  auto [u1, u2] = riesz_velocity(theta);
  Velocity v{inverse_transform(u1), inverse_transform(u2)};
  v.umax = std::max(kernels::max_abs(v.u1.values()), kernels::max_abs(v.u2.values()));
  return v;
}

SpectralField advect(const Velocity& u, const SpectralField& theta, Dealias dealias) {
  const RealField g1 = inverse_transform(derivative(theta, 0));
  const RealField g2 = inverse_transform(derivative(theta, 1));
  std::vector<double> prod(theta.grid().size());
  kernels::dot2(u.u1.values(), g1.values(), u.u2.values(), g2.values(), prod);
  SpectralField out = forward_transform(RealField(theta.grid(), std::move(prod)));
  if (dealias == Dealias::two_thirds) out = dealias_two_thirds(out);
  std::vector<Complex> coeffs = std::move(out).release();
  coeffs[0] = Complex{};
  return SpectralField(theta.grid(), std::move(coeffs));
}

bool finite(const SpectralField& f) {
  for (const Complex& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double stability_number(double dt, const Grid& grid, double umax) {
  return dt * grid.nyquist() * umax;
}

// Integrating-factor Heun step. Frozen velocities (Picard iterates) replace
// the self-consistent one when given.
SpectralField heun(const SpectralField& theta, double dt, const SolverConfig& config,
                   const Velocity* frozen_now, const Velocity* frozen_next, StepInfo* info) {
  try {
    std::optional<Velocity> own;
    if (!frozen_now) own = velocity_of(theta);
    const Velocity& u0 = frozen_now ? *frozen_now : *own;
    const SpectralField n0 = -1.0 * advect(u0, theta, config.dealias);
    const SpectralField predictor = heat_semigroup(theta + dt * n0, dt, config.kappa);
    if (!finite(predictor)) throw BlowUpError(-1.0, std::nullopt);

    std::optional<Velocity> own_next;
    if (!frozen_next) own_next = velocity_of(predictor);
    const Velocity& u1 = frozen_next ? *frozen_next : *own_next;
    const SpectralField n1 = -1.0 * advect(u1, predictor, config.dealias);
    SpectralField next =
        heat_semigroup(theta + (0.5 * dt) * n0, dt, config.kappa) + (0.5 * dt) * n1;
    if (!finite(next)) throw BlowUpError(-1.0, std::nullopt);
    if (info) info->stability_number = stability_number(dt, theta.grid(), u0.umax);
    return next;
  } catch (const DomainError&) {
    // Raised by RealField on NaN/Inf samples.
    throw BlowUpError(-1.0, std::nullopt);
  } catch (const SymmetryError&) {
    throw BlowUpError(-1.0, std::nullopt);
  }
}

std::vector<double> step_times(const SolverConfig& config) {
  std::vector<double> times{0.0};
  for (long k = 1;; ++k) {
    const double t = k * config.dt;
    if (t >= config.t_end * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(config.t_end);
  return times;
}

class Recorder {
 public:
  explicit Recorder(const SolverConfig& config)
      : sys_(config.grid, config.bump_sharpness), bp_(diagnostic_besov(config)) {
    traj_.config = config;
    traj_.warnings.push_back("sign convention: d/dt theta + u.grad theta + Lambda^kappa theta = 0");
  }

  void record(std::size_t k, std::size_t last, double t, const SpectralField& theta) {
    const SolverConfig& config = traj_.config;
    DiagnosticRecord d;
    d.t = t;
    const RealField phys = inverse_transform(theta);
    d.l2 = lp_norm(phys, 2.0);
    d.lp = lp_norm(phys, config.p);
    d.besov = besov_norm(sys_, theta, bp_);
    d.radius = analyticity_radius_estimate(theta, config.alpha).gamma;
    traj_.diagnostics.push_back(d);
    if (k % static_cast<std::size_t>(config.record_every) == 0 || k == last)
      traj_.snapshots.push_back({t, theta});
  }

  void note_stability(double t, double number) {
    if (number <= 1.0 || warned_) return;
    warned_ = true;
    std::ostringstream msg;
    msg << "stability advisory: dt*kmax*max|u| = " << number << " > 1 at t=" << t;
    traj_.warnings.push_back(msg.str());
  }

  std::optional<TimeSample> last_snapshot() const {
    if (traj_.snapshots.empty()) return std::nullopt;
    return traj_.snapshots.back();
  }
  Trajectory& trajectory() { return traj_; }

 private:
  DyadicSystem sys_;
  BesovParams bp_;
  Trajectory traj_;
  bool warned_ = false;
};

}  // namespace

SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias) {
  return advect(velocity_of(theta), theta, dealias);
}

SpectralField step(const SpectralField& theta, double dt, const SolverConfig& config,
                   StepInfo* info) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  return heun(theta, dt, config, nullptr, nullptr, info);
}

Trajectory solve(const SolverConfig& config) {
  validate(config);
  const std::vector<double> times = step_times(config);
  const std::size_t last = times.size() - 1;
  Recorder rec(config);
  SpectralField theta = make_initial_data(config);
  rec.record(0, last, 0.0, theta);
  for (std::size_t k = 1; k <= last; ++k) {
    const double dt = times[k] - times[k - 1];
    StepInfo info;
    try {
      theta = heun(theta, dt, config, nullptr, nullptr, &info);
    } catch (const BlowUpError&) {
      // Prefer the most recent finite state over the last recorded one.
      throw BlowUpError(times[k], TimeSample{times[k - 1], theta}, rec.trajectory().warnings);
    }
    rec.note_stability(times[k - 1], info.stability_number);
    rec.record(k, last, times[k], theta);
  }
  return std::move(rec.trajectory());
}

std::vector<Trajectory> picard_solve(const SolverConfig& config) {
  validate(config);
  const std::vector<double> times = step_times(config);
  const std::size_t last = times.size() - 1;
  const SpectralField theta0 = make_initial_data(config);

  std::vector<Trajectory> iterates;
  std::vector<SpectralField> previous;
  {
    Recorder rec(config);
    for (std::size_t k = 0; k <= last; ++k) {
      previous.push_back(heat_semigroup(theta0, times[k], config.kappa));
      rec.record(k, last, times[k], previous.back());
    }
    iterates.push_back(std::move(rec.trajectory()));
  }

  for (int n = 1; n <= config.picard_depth; ++n) {
    Recorder rec(config);
    std::vector<SpectralField> current{theta0};
    rec.record(0, last, 0.0, theta0);
    Velocity u_now = velocity_of(previous[0]);
    for (std::size_t k = 1; k <= last; ++k) {
      const double dt = times[k] - times[k - 1];
      Velocity u_next = velocity_of(previous[k]);
      StepInfo info;
      try {
        current.push_back(heun(current.back(), dt, config, &u_now, &u_next, &info));
      } catch (const BlowUpError&) {
        throw BlowUpError(times[k], TimeSample{times[k - 1], current.back()},
                          rec.trajectory().warnings);
      }
      rec.note_stability(times[k - 1], info.stability_number);
      rec.record(k, last, times[k], current.back());
      u_now = std::move(u_next);
    }
    iterates.push_back(std::move(rec.trajectory()));
    previous = std::move(current);
  }
  return iterates;
}

std::vector<double> picard_gaps(const std::vector<Trajectory>& iterates, const DyadicSystem& sys,
                                const BesovParams& bp) {
  std::vector<double> gaps;
  for (std::size_t n = 0; n + 1 < iterates.size(); ++n) {
    const auto& a = iterates[n].snapshots;
    const auto& b = iterates[n + 1].snapshots;
    double gap = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
      gap = std::max(gap, besov_norm(sys, b[i].field - a[i].field, bp));
    gaps.push_back(gap);
  }
  return gaps;
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory) {
  out.precision(17);
  out << "t,l2,lp,besov,radius\n";
  for (const DiagnosticRecord& d : trajectory.diagnostics)
    out << d.t << ',' << d.l2 << ',' << d.lp << ',' << d.besov << ',' << d.radius << '\n';
}

}  // namespace sqg
