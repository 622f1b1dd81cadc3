#include "sqg/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

#include "sqg/errors.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

DyadicSystem::DyadicSystem(const Grid& grid, double sharpness)
    : grid_(grid), sharpness_(sharpness) {
  if (!(sharpness > 0.0) || !std::isfinite(sharpness))
    throw ConfigError("bump transition sharpness must be positive");
  j_min_ = static_cast<int>(std::floor(std::log2(grid.k0()) + 1e-12));
  j_max_ = static_cast<int>(std::floor(std::log2(grid.nyquist()) + 1e-12)) - 1;
  if (j_max_ < j_min_)
    throw ConfigError("grid n=" + std::to_string(grid.n()) + " hosts no dyadic block");
}

double DyadicSystem::smooth_step(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-sharpness_ / t);
  const double b = std::exp(-sharpness_ / (1.0 - t));
  return a / (a + b);
}

double DyadicSystem::smooth_step_derivative(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = std::exp(-sharpness_ / t);
  const double b = std::exp(-sharpness_ / (1.0 - t));
  const double da = sharpness_ / (t * t) * a;
  const double db = sharpness_ / ((1.0 - t) * (1.0 - t)) * b;
  const double sum = a + b;
  return (da * b + a * db) / (sum * sum);
}

double DyadicSystem::psi0_derivative(double r) const {
  return -2.0 * smooth_step_derivative(2.0 * (1.0 - r));
}

double DyadicSystem::psi0(double r) const { return smooth_step(2.0 * (1.0 - r)); }

double DyadicSystem::psi(int j, double r) const { return psi0(std::ldexp(r, -j)); }

double DyadicSystem::phi(int j, double r) const { return phi0(std::ldexp(r, -j)); }

double DyadicSystem::phi_tilde(int j, double r) const {
  double s = 0.0;
  for (int l = j - 2; l <= j + 2; ++l) s += phi(l, r);
  return s;
}

double DyadicSystem::s_symbol(int k, double r) const {
  double s = 0.0;
  for (int l = j_min_; l <= std::min(k - 3, j_max_); ++l) s += phi(l, r);
  return s;
}

double DyadicSystem::partition(double r) const {
  double s = 0.0;
  for (int l = j_min_; l <= j_max_; ++l) s += phi(l, r);
  return s;
}

DyadicSystem build_system(const Grid& grid, double transition_sharpness) {
  return DyadicSystem(grid, transition_sharpness);
}

namespace {

void require_resolved(const DyadicSystem& sys, int j) {
  if (!sys.resolved(j))
    throw BandError("dyadic index " + std::to_string(j) + " outside resolved range [" +
                    std::to_string(sys.j_min()) + ", " + std::to_string(sys.j_max()) + "]");
}

void require_grid(const DyadicSystem& sys, const SpectralField& f) {
  if (!(sys.grid() == f.grid())) throw DomainError("field and dyadic system use different grids");
}

}  // namespace

SpectralField delta_j(const DyadicSystem& sys, const SpectralField& f, int j) {
  require_grid(sys, f);
  require_resolved(sys, j);
  return apply_multiplier(f, [&](const Wavevector& k) { return sys.phi(j, k.norm()); });
}

SpectralField tilde_delta_j(const DyadicSystem& sys, const SpectralField& f, int j) {
  require_grid(sys, f);
  require_resolved(sys, j);
  return apply_multiplier(f, [&](const Wavevector& k) { return sys.phi_tilde(j, k.norm()); });
}

SpectralField s_k(const DyadicSystem& sys, const SpectralField& f, int k) {
  require_grid(sys, f);
  return apply_multiplier(f, [&](const Wavevector& kv) { return sys.s_symbol(k, kv.norm()); });
}

void validate(const BesovParams& bp) {
  if (!(bp.p >= 1.0) || !(bp.q >= 1.0))
    throw DomainError("Besov exponents need p, q >= 1");
  if (!std::isfinite(bp.s)) throw DomainError("Besov regularity must be finite");
}

std::vector<double> block_norms(const DyadicSystem& sys, const SpectralField& f, double p) {
  require_grid(sys, f);
  const int count = sys.j_max() - sys.j_min() + 1;
  std::vector<double> norms(count);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i)
    norms[i] = lp_norm(inverse_transform(delta_j(sys, f, sys.j_min() + i)), p);
  return norms;
}

BesovReport besov_report(const DyadicSystem& sys, const SpectralField& f, const BesovParams& bp) {
  validate(bp);
  BesovReport report;
  const std::vector<double> norms = block_norms(sys, f, bp.p);
  const bool sup = std::isinf(bp.q);
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const int j = sys.j_min() + static_cast<int>(i);
    const double w = std::pow(2.0, j * bp.s) * norms[i];
    acc = sup ? std::max(acc, w) : acc + std::pow(w, bp.q);
    report.rows.push_back({j, w, sup ? acc : std::pow(acc, 1.0 / bp.q)});
  }
  report.norm = report.rows.empty() ? 0.0 : report.rows.back().cumulative;

  double total = 0.0, missed = 0.0;
  for (std::size_t i = 0; i < f.grid().size(); ++i) {
    const double e = std::norm(f[i]);
    total += e;
    const double gap = 1.0 - sys.partition(f.grid().wavenumber_norm(i));
    missed += e * gap * gap;
  }
  report.discarded_energy_fraction = total > 0.0 ? missed / total : 0.0;

  const double scale = f.max_abs();
  if (scale > 0.0 && std::abs(f.mean()) > 1e-12 * scale)
    report.warnings.push_back("field has nonzero mean; the homogeneous norm ignores it");
  return report;
}

double besov_norm(const DyadicSystem& sys, const SpectralField& f, const BesovParams& bp) {
  return besov_report(sys, f, bp).norm;
}

void write_besov_csv(std::ostream& out, const BesovReport& report) {
  out.precision(17);
  for (const std::string& w : report.warnings) out << "# warning=" << w << '\n';
  out << "# discarded_energy_fraction=" << report.discarded_energy_fraction << '\n';
  out << "j,weighted_block_norm,cumulative_sum\n";
  for (const BesovRow& row : report.rows)
    out << row.j << ',' << row.weighted << ',' << row.cumulative << '\n';
}

}  // namespace sqg
