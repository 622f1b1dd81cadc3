#include "sqg/kernels.hpp"

#include <cmath>

namespace sqg::kernels {

namespace {

inline double abs_pow(double v, double p) {
  const double a = std::abs(v);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  return std::pow(a, p);
}

inline double signed_pow(double v, double e, bool signed_power) {
  const double a = std::pow(std::abs(v), e);
  return signed_power && v < 0.0 ? -a : a;
}

}  // namespace

double power_sum(std::span<const double> v, double p, std::size_t rows) {
  if (rows == 0) rows = 1;
  const std::size_t chunk = (v.size() + rows - 1) / rows;
  std::vector<double> partial(rows, 0.0);
  const long long nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < nrows; ++r) {
    const std::size_t begin = static_cast<std::size_t>(r) * chunk;
    const std::size_t end = std::min(v.size(), begin + chunk);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += abs_pow(v[i], p);
    partial[static_cast<std::size_t>(r)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  const long long size = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long long i = 0; i < size; ++i) m = std::max(m, std::abs(v[static_cast<std::size_t>(i)]));
  return m;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const long long size = static_cast<long long>(a.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < size; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = a[k] * b[k];
  }
}

void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out) {
  const long long size = static_cast<long long>(a1.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < size; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = a1[k] * b1[k] + a2[k] * b2[k];
  }
}

void power(std::span<const double> v, double e, bool signed_power, std::span<double> out) {
  const long long size = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < size; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = signed_pow(v[k], e, signed_power);
  }
}

namespace serial {

double power_sum(std::span<const double> v, double p) {
  double total = 0.0;
  for (double x : v) total += abs_pow(x, p);
  return total;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out) {
  for (std::size_t i = 0; i < a1.size(); ++i) out[i] = a1[i] * b1[i] + a2[i] * b2[i];
}

void power(std::span<const double> v, double e, bool signed_power, std::span<double> out) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = signed_pow(v[i], e, signed_power);
}

}  // namespace serial

}  // namespace sqg::kernels
