#pragma once

// Data-parallel inner loops shared by the spectral modules.
//
// Every kernel has an OpenMP version (namespace kernels) and a plain serial
// reference (namespace kernels::serial) kept for testing and benchmarking.
// Reductions in the parallel versions use a fixed row partition followed by
// an ordered serial sum, so results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg::kernels {

using Complex = std::complex<double>;
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

namespace detail {
inline Complex as_complex(double v) { return {v, 0.0}; }
inline Complex as_complex(Complex v) { return v; }
inline bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// out[k] = symbol(k) * in[k]. Non-finite symbols on zero coefficients give
/// zero; on nonzero coefficients the smallest offending index is returned
/// (npos when none).
template <class Symbol>
std::size_t multiply_symbol(const Grid& grid, std::span<const Complex> in, std::span<Complex> out,
                            const Symbol& symbol) {
  const long long size = static_cast<long long>(in.size());
  std::size_t bad = npos;
#pragma omp parallel for schedule(static) reduction(min : bad)
  for (long long idx = 0; idx < size; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    const Complex s = detail::as_complex(symbol(grid.wavevector(i)));
    if (!detail::finite(s)) {
      if (in[i] != Complex{}) bad = std::min(bad, i);
      out[i] = Complex{};
    } else {
      out[i] = s * in[i];
    }
  }
  return bad;
}

/// Sum of |v|^p with a fixed partition into `rows` chunks.
double power_sum(std::span<const double> v, double p, std::size_t rows);
/// Largest |v|.
double max_abs(std::span<const double> v);
/// out = a * b pointwise.
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out = a1 * b1 + a2 * b2 pointwise (transport term u . grad theta).
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out);
/// out = sign(v) |v|^e pointwise when signed, |v|^e otherwise.
void power(std::span<const double> v, double e, bool signed_power, std::span<double> out);

namespace serial {

template <class Symbol>
std::size_t multiply_symbol(const Grid& grid, std::span<const Complex> in, std::span<Complex> out,
                            const Symbol& symbol) {
  std::size_t bad = npos;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Complex s = detail::as_complex(symbol(grid.wavevector(i)));
    if (!detail::finite(s)) {
      if (in[i] != Complex{} && bad == npos) bad = i;
      out[i] = Complex{};
    } else {
      out[i] = s * in[i];
    }
  }
  return bad;
}

double power_sum(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out);
void power(std::span<const double> v, double e, bool signed_power, std::span<double> out);

}  // namespace serial

}  // namespace sqg::kernels
