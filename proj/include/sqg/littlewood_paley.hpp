#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/grid.hpp"

namespace sqg {

/// Smooth dyadic bump system on a grid.
///
/// psi0(r) = H(2(1 - r)) with H(t) = h(t) / (h(t) + h(1 - t)) and
/// h(t) = exp(-sharpness / t), so psi0 = 1 on r <= 1/2 and 0 on r >= 1.
/// phi0(r) = psi0(r/2) - psi0(r) lives on [1/2, 2] and phi_j(r) = phi0(2^-j r).
/// j_min is the block containing the lowest lattice wavenumber, j_max the
/// largest j with 2^(j+1) <= Nyquist.
class DyadicSystem {
 public:
  DyadicSystem(const Grid& grid, double sharpness = 1.0);

  const Grid& grid() const { return grid_; }
  double sharpness() const { return sharpness_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  bool resolved(int j) const { return j >= j_min_ && j <= j_max_; }

  double psi0(double r) const;
  double phi0(double r) const { return psi0(0.5 * r) - psi0(r); }
  /// Radial derivatives d/dr psi0 and d/dr phi0.
  double psi0_derivative(double r) const;
  double phi0_derivative(double r) const { return 0.5 * psi0_derivative(0.5 * r) - psi0_derivative(r); }
  double psi(int j, double r) const;
  double phi(int j, double r) const;
  /// Sum of phi_l over |l - j| <= 2, not clipped to the resolved range.
  double phi_tilde(int j, double r) const;
  /// Sum of phi_l over j_min <= l <= k - 3.
  double s_symbol(int k, double r) const;
  /// Sum of phi_j over the resolved range.
  double partition(double r) const;

 private:
  double smooth_step(double t) const;
  double smooth_step_derivative(double t) const;

  Grid grid_;
  double sharpness_;
  int j_min_;
  int j_max_;
};

/// Throws ConfigError when the grid hosts no dyadic block or sharpness <= 0.
DyadicSystem build_system(const Grid& grid, double transition_sharpness = 1.0);

/// Block projector; throws BandError for j outside [j_min, j_max].
SpectralField delta_j(const DyadicSystem& sys, const SpectralField& f, int j);
/// Five-block window sum_{|l-j|<=2} Delta_l. Its symbol is 1 on the
/// support of phi_j, also at the ends of the range.
SpectralField tilde_delta_j(const DyadicSystem& sys, const SpectralField& f, int j);
/// Low-frequency cutoff S_k = sum_{l<=k-3} Delta_l; zero for an empty sum.
SpectralField s_k(const DyadicSystem& sys, const SpectralField& f, int k);

struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
};

/// Throws DomainError unless p, q >= 1.
void validate(const BesovParams& bp);

struct BesovRow {
  int j = 0;
  double weighted = 0.0;    // 2^(js) ||Delta_j f||_p
  double cumulative = 0.0;  // running l^q sum (running max for q = inf)
};

struct BesovReport {
  double norm = 0.0;
  std::vector<BesovRow> rows;
  /// Share of the L^2 energy the resolved blocks do not see (mean and modes
  /// outside the resolved annuli).
  double discarded_energy_fraction = 0.0;
  std::vector<std::string> warnings;
};

/// L^p norms of Delta_j f for every resolved j, in order j_min..j_max.
std::vector<double> block_norms(const DyadicSystem& sys, const SpectralField& f, double p);

double besov_norm(const DyadicSystem& sys, const SpectralField& f, const BesovParams& bp);
BesovReport besov_report(const DyadicSystem& sys, const SpectralField& f, const BesovParams& bp);

/// CSV with columns j, weighted_block_norm, cumulative_sum.
void write_besov_csv(std::ostream& out, const BesovReport& report);

}  // namespace sqg
