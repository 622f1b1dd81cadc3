#pragma once

#include <cstdint>
#include <limits>

#include "sqg/errors.hpp"
#include "sqg/field.hpp"
#include "sqg/grid.hpp"
#include "sqg/kernels.hpp"

namespace sqg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discrete Fourier transform with f_hat(k) = n^-2 sum_x f(x) exp(-i k.x).
/// The result is made exactly Hermitian.
SpectralField forward_transform(const RealField& f);

/// Exact inverse of forward_transform. Throws SymmetryError when the
/// coefficients are not Hermitian to within `tolerance` (relative to the
/// largest coefficient).
RealField inverse_transform(const SpectralField& f, double tolerance = 1e-9);

/// coeffs_out(k) = symbol(k) coeffs_in(k). `symbol` maps a Wavevector to a
/// double or Complex. Throws MultiplierOverflow for a non-finite symbol on a
/// nonzero coefficient.
template <class Symbol>
SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol) {
  std::vector<Complex> out(f.coeffs().size());
  const std::size_t bad = kernels::multiply_symbol(f.grid(), f.coeffs(), out, symbol);
  if (bad != kernels::npos) {
    const Wavevector k = f.grid().wavevector(bad);
    throw MultiplierOverflow(k.x, k.y);
  }
  return SpectralField(f.grid(), std::move(out));
}

/// Collocation L^p norm, (sum |f|^p (L/n)^2)^(1/p); the max norm for p = inf.
/// Throws DomainError for p < 1.
double lp_norm(const RealField& f, double p);

/// L^2 norm from the coefficients: L * sqrt(sum |f_hat|^2).
double parseval_l2_norm(const SpectralField& f);

/// Bilinear pairing int f g dx = L^2 sum_k f_hat(k) g_hat(-k). The grids may
/// differ in n but must share the box length.
Complex pairing(const SpectralField& f, const SpectralField& g);

/// Spectral partial derivative along axis 0 (x1) or 1 (x2); Nyquist modes
/// are set to zero so the result stays real.
SpectralField derivative(const SpectralField& f, int axis);

/// Zero every mode outside the two-thirds box.
SpectralField dealias_two_thirds(const SpectralField& f);

/// Zero the mean and the Nyquist row/column.
SpectralField remove_mean(const SpectralField& f);

/// Re-express the same trigonometric polynomial on another grid with the same
/// box length. Padding splits Nyquist coefficients symmetrically; truncation
/// drops unresolved modes and folds the two halves of the new Nyquist line.
SpectralField resample(const SpectralField& f, const Grid& target);

/// Field sampled from a function of the physical coordinates.
template <class Fn>
RealField sample(const Grid& grid, const Fn& fn) {
  std::vector<double> values(grid.size());
  for (int i = 0; i < grid.n(); ++i)
    for (int j = 0; j < grid.n(); ++j)
      values[grid.flat(i, j)] = fn(grid.coordinate(i), grid.coordinate(j));
  return RealField(grid, std::move(values));
}

/// Seeded real random field with spectrum inside the open annulus
/// 2^(j-1) < |k| < 2^(j+1) (smooth radial taper), normalized to unit L^2 norm.
/// Throws BandError when the annulus holds no resolved lattice point.
SpectralField random_band_limited(const Grid& grid, int j, std::uint64_t seed);

/// Seeded real white-noise field (standard normal samples).
RealField white_noise(const Grid& grid, std::uint64_t seed);

}  // namespace sqg
