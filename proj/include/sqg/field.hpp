#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using Complex = std::complex<double>;

/// Samples of a real scalar field on the collocation points of a grid.
class RealField {
 public:
  /// All-zero field.
  explicit RealField(const Grid& grid);
  /// Throws DomainError on size mismatch or non-finite entries.
  RealField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  double at(int i, int j) const { return values_[grid_.flat(i, j)]; }

  /// Moves the samples out; the field is left empty.
  std::vector<double> release() && { return std::move(values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients f_hat(k) of a field on a grid, normalized so that
/// f(x) = sum_k f_hat(k) exp(i k.x).
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  /// Throws DomainError on size mismatch.
  SpectralField(const Grid& grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](std::size_t idx) const { return coeffs_[idx]; }
  Complex at_frequency(int m1, int m2) const { return coeffs_[grid_.flat_of_frequency(m1, m2)]; }
  Complex mean() const { return coeffs_[0]; }

  /// Largest |f_hat(-k) - conj(f_hat(k))| relative to the largest coefficient.
  double hermitian_defect() const;
  /// Largest |f_hat(k)|.
  double max_abs() const;

  std::vector<Complex> release() && { return std::move(coeffs_); }

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double scale, const SpectralField& a);
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double scale, const RealField& a);
/// Pointwise product on the collocation points.
RealField operator*(const RealField& a, const RealField& b);

}  // namespace sqg
