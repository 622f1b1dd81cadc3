#pragma once

// Independent reference computations for the unit tests. Everything here is
// written from the definitions, with no calls into the spectral code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/grid.hpp"

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline int freq(int index, int n) { return index < n / 2 ? index : index - n; }

/// f_hat(m) = n^-2 sum_x f(x) exp(-i k.x), direct O(n^4) sum.
inline std::vector<Complex> dft(const sqg::RealField& f) {
  const int n = f.grid().n();
  const double k0 = 2.0 * pi / f.grid().box_length();
  const double h = f.grid().box_length() / n;
  std::vector<Complex> out(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex s{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double phase = -k0 * (freq(a, n) * i * h + freq(b, n) * j * h);
          s += f.at(i, j) * Complex(std::cos(phase), std::sin(phase));
        }
      out[static_cast<std::size_t>(a) * n + b] = s / double(n * n);
    }
  return out;
}

/// Value of sum_k F(k) exp(i k.x) at an arbitrary point. A Nyquist index
/// stands for the symmetric pair +-n/2, i.e. a cosine along that axis.
inline double evaluate(const sqg::SpectralField& F, double x1, double x2) {
  const int n = F.grid().n();
  const double k0 = 2.0 * pi / F.grid().box_length();
  auto factor = [&](int m, double x) {
    if (m == -n / 2) return Complex(std::cos(k0 * m * x), 0.0);
    return Complex(std::cos(k0 * m * x), std::sin(k0 * m * x));
  };
  Complex s{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      s += F[static_cast<std::size_t>(a) * n + b] * factor(freq(a, n), x1) * factor(freq(b, n), x2);
  return s.real();
}

/// Real field with iid normal samples.
inline sqg::RealField random_real(const sqg::Grid& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(grid.size());
  for (double& x : v) x = nd(rng);
  return sqg::RealField(grid, v);
}

/// Hermitian coefficients with random Gaussian values on |m| <= band
/// (non-Nyquist, nonzero m), zero elsewhere.
inline sqg::SpectralField random_spectrum(const sqg::Grid& grid, unsigned seed, double band = 1e300,
                                          bool with_mean = false) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  const int n = grid.n();
  std::vector<Complex> c(grid.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int m1 = freq(a, n), m2 = freq(b, n);
      if (m1 == -n / 2 || m2 == -n / 2) continue;
      if (std::hypot(m1, m2) > band) continue;
      const std::size_t i = static_cast<std::size_t>(a) * n + b;
      const std::size_t j = grid.flat_of_frequency(-m1, -m2);
      if (j < i) continue;
      if (i == j) {
        c[i] = (m1 == 0 && m2 == 0 && !with_mean) ? 0.0 : nd(rng);
      } else {
        c[i] = {nd(rng), nd(rng)};
        c[j] = std::conj(c[i]);
      }
    }
  return sqg::SpectralField(grid, c);
}

/// The smooth-step bump written out from its formula.
inline double psi0(double r, double sharp = 1.0) {
  auto h = [sharp](double t) { return t <= 0.0 ? 0.0 : std::exp(-sharp / t); };
  const double t = 2.0 * (1.0 - r);
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return h(t) / (h(t) + h(1.0 - t));
}
inline double phi0(double r, double sharp = 1.0) { return psi0(0.5 * r, sharp) - psi0(r, sharp); }

using Symbol2 = std::function<Complex(double, double, double, double)>;

/// T_m(f, g) by brute force over every non-Nyquist mode pair, output
/// coefficients on the (2n)^2 lattice.
inline std::vector<Complex> bilinear(const Symbol2& m, const sqg::SpectralField& f,
                                     const sqg::SpectralField& g) {
  const int n = f.grid().n(), N = 2 * n;
  const double k0 = 2.0 * pi / f.grid().box_length();
  std::vector<Complex> out(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const int x1 = freq(a, n), x2 = freq(b, n), y1 = freq(c, n), y2 = freq(d, n);
          if (x1 == -n / 2 || x2 == -n / 2 || y1 == -n / 2 || y2 == -n / 2) continue;
          const Complex fc = f[static_cast<std::size_t>(a) * n + b];
          const Complex gc = g[static_cast<std::size_t>(c) * n + d];
          if (fc == Complex{} || gc == Complex{}) continue;
          const int s1 = x1 + y1, s2 = x2 + y2;
          const std::size_t o = static_cast<std::size_t>((s1 + N) % N) * N + (s2 + N) % N;
          out[o] += m(k0 * x1, k0 * x2, k0 * y1, k0 * y2) * fc * gc;
        }
  return out;
}

/// L^2 inner product of two coefficient arrays on the same lattice, box L.
inline Complex pair(const std::vector<Complex>& a, const std::vector<Complex>& b, int n, double L) {
  Complex s{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += a[static_cast<std::size_t>(i) * n + j] *
           b[static_cast<std::size_t>((n - i) % n) * n + (n - j) % n];
  return s * L * L;
}

}  // namespace oracle
