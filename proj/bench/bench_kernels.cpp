// Times the OpenMP kernels against their serial references.
//
// usage: bench_kernels [n] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sqg/kernels.hpp"
#include "sqg/solver.hpp"
#include "sqg/spectral.hpp"

using namespace sqg;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  fn();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() / repeats;
}

void row(const char* name, double parallel, double serial) {
  std::printf("%-16s %10.3f %10.3f %8.2fx\n", name, parallel, serial, serial / parallel);
}

volatile double sink = 0.0;

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 512;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 20;
  const Grid grid(n);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  std::vector<double> a(grid.size()), b(grid.size()), c(grid.size()), d(grid.size()), out(grid.size());
  for (auto* v : {&a, &b, &c, &d})
    for (double& x : *v) x = nd(rng);
  std::vector<Complex> ca(grid.size()), cout(grid.size());
  for (Complex& x : ca) x = {nd(rng), nd(rng)};
  const auto symbol = [](const Wavevector& k) { return std::exp(-0.1 * std::pow(k.norm(), 0.8)); };

#ifdef _OPENMP
  std::printf("n=%d repeats=%d threads=%d\n", n, repeats, omp_get_max_threads());
#else
  std::printf("n=%d repeats=%d (built without OpenMP)\n", n, repeats);
#endif
  std::printf("%-16s %10s %10s %9s\n", "kernel", "omp ms", "serial ms", "speedup");
  const auto rows = static_cast<std::size_t>(n);
  row("power_sum",
      time_ms([&] { sink = kernels::power_sum(a, 3.0, rows); }, repeats),
      time_ms([&] { sink = kernels::serial::power_sum(a, 3.0); }, repeats));
  row("max_abs", time_ms([&] { sink = kernels::max_abs(a); }, repeats),
      time_ms([&] { sink = kernels::serial::max_abs(a); }, repeats));
  row("multiply", time_ms([&] { kernels::multiply(a, b, out); }, repeats),
      time_ms([&] { kernels::serial::multiply(a, b, out); }, repeats));
  row("dot2", time_ms([&] { kernels::dot2(a, b, c, d, out); }, repeats),
      time_ms([&] { kernels::serial::dot2(a, b, c, d, out); }, repeats));
  row("power", time_ms([&] { kernels::power(a, 1.5, true, out); }, repeats),
      time_ms([&] { kernels::serial::power(a, 1.5, true, out); }, repeats));
  row("multiply_symbol",
      time_ms([&] { sink = double(kernels::multiply_symbol(grid, ca, cout, symbol)); }, repeats),
      time_ms([&] { sink = double(kernels::serial::multiply_symbol(grid, ca, cout, symbol)); }, repeats));

  // End-to-end pieces that use the kernels.
  const RealField f(grid, a);
  const SpectralField F = forward_transform(f);
  std::printf("%-16s %10.3f\n", "forward_fft",
              time_ms([&] { sink = forward_transform(f).max_abs(); }, repeats));
  std::printf("%-16s %10.3f\n", "nonlinear_term",
              time_ms([&] { sink = nonlinear_term(F, Dealias::two_thirds).max_abs(); }, repeats));
  return 0;
}
