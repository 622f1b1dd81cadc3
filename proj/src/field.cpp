#include "sqg/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqg/errors.hpp"

namespace sqg {

RealField::RealField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DomainError("real field has " + std::to_string(values_.size()) + " samples, grid needs " +
                      std::to_string(grid_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("real field contains a non-finite sample");
}

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw DomainError("spectral field has " + std::to_string(coeffs_.size()) +
                      " coefficients, grid needs " + std::to_string(grid_.size()));
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double d = std::abs(coeffs_[grid_.conjugate_index(i)] - std::conj(coeffs_[i]));
    worst = std::max(worst, d);
  }
  return worst / scale;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DomainError("fields live on different grids");
}

template <class T, class Op>
std::vector<T> combine(std::span<const T> a, std::span<const T> b, Op op) {
  std::vector<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  return {a.grid(), combine(a.coeffs(), b.coeffs(), [](Complex x, Complex y) { return x + y; })};
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  return {a.grid(), combine(a.coeffs(), b.coeffs(), [](Complex x, Complex y) { return x - y; })};
}

SpectralField operator*(double scale, const SpectralField& a) {
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (Complex& c : out) c *= scale;
  return {a.grid(), std::move(out)};
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid());
  return {a.grid(), combine(a.values(), b.values(), [](double x, double y) { return x + y; })};
}

RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid());
  return {a.grid(), combine(a.values(), b.values(), [](double x, double y) { return x - y; })};
}

RealField operator*(double scale, const RealField& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= scale;
  return {a.grid(), std::move(out)};
}

RealField operator*(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid());
  return {a.grid(), combine(a.values(), b.values(), [](double x, double y) { return x * y; })};
}

}  // namespace sqg
