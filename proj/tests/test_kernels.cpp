// Parallel kernels against their serial references.

#include <cmath>
#include <functional>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "sqg/kernels.hpp"

using namespace sqg;
using kernels::Complex;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  return v;
}

void with_threads(int n, const std::function<void()>& fn) {
#ifdef _OPENMP
  const int old = omp_get_max_threads();
  omp_set_num_threads(n);
  fn();
  omp_set_num_threads(old);
#else
  (void)n;
  fn();
#endif
}

}  // namespace

TEST_CASE("kernels match the serial reference for any thread count") {
  const std::size_t n = 64 * 64;
  const auto a = noise(n, 1), b = noise(n, 2), c = noise(n, 3), d = noise(n, 4);
  for (int threads : {1, 3, 8}) {
    with_threads(threads, [&] {
      for (double p : {1.0, 2.0, 3.3})
        CHECK(kernels::power_sum(a, p, 64) ==
              doctest::Approx(kernels::serial::power_sum(a, p)).epsilon(1e-13));
      CHECK(kernels::max_abs(a) == kernels::serial::max_abs(a));

      std::vector<double> o1(n), o2(n);
      kernels::multiply(a, b, o1);
      kernels::serial::multiply(a, b, o2);
      CHECK(o1 == o2);
      kernels::dot2(a, b, c, d, o1);
      kernels::serial::dot2(a, b, c, d, o2);
      CHECK(o1 == o2);
      for (bool sign : {false, true}) {
        kernels::power(a, 1.5, sign, o1);
        kernels::serial::power(a, 1.5, sign, o2);
        CHECK(o1 == o2);
      }
    });
  }
}

TEST_CASE("power_sum is bitwise independent of the thread count") {
  const auto a = noise(128 * 128, 9);
  double ref = 0.0;
  with_threads(1, [&] { ref = kernels::power_sum(a, 2.5, 128); });
  for (int threads : {2, 5, 16})
    with_threads(threads, [&] { CHECK(kernels::power_sum(a, 2.5, 128) == ref); });
}

TEST_CASE("multiply_symbol flags the first bad occupied index") {
  const Grid g(8);
  std::vector<Complex> in(g.size(), Complex(1.0)), o1(g.size()), o2(g.size());
  in[5] = Complex{};
  auto symbol = [&](const Wavevector& k) {
    return (k.x == g.wavevector(5).x && k.y == g.wavevector(5).y) || k.x == g.wavevector(9).x
               ? std::nan("")
               : k.x;
  };
  const std::size_t b1 = kernels::multiply_symbol(g, in, o1, symbol);
  const std::size_t b2 = kernels::serial::multiply_symbol(g, in, o2, symbol);
  CHECK(b1 == b2);
  CHECK(b1 != kernels::npos);
  CHECK(o1 == o2);
}

TEST_CASE("signed and unsigned powers") {
  const std::vector<double> v = {-8.0, 0.0, 4.0};
  std::vector<double> out(3);
  kernels::power(v, 1.0 / 3.0, true, out);
  CHECK(out[0] == doctest::Approx(-2.0));
  CHECK(out[1] == 0.0);
  kernels::power(v, 0.5, false, out);
  CHECK(out[0] == doctest::Approx(std::sqrt(8.0)));
  CHECK(out[2] == doctest::Approx(2.0));
}
