#include "sqg/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "sqg/rng.hpp"

namespace sqg {

namespace {

// FFTW plans are created once per size under a lock; executing a plan on new
// arrays (fftw_execute_dft) is thread-safe.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  Plans get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> a(static_cast<std::size_t>(n) * n), b(a.size());
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p;
    p.forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

void execute(fftw_plan plan, std::vector<Complex>& in, std::vector<Complex>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> in(grid.size()), out(grid.size());
  const auto values = f.values();
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = {values[i], 0.0};
  execute(PlanCache::instance().get(grid.n()).forward, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  // Exact Hermitian symmetrization; removes roundoff asymmetry of the FFT.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t c = grid.conjugate_index(i);
    if (c < i) continue;
    const Complex sym = 0.5 * (out[i] + std::conj(out[c])) * scale;
    in[i] = sym;
    in[c] = std::conj(sym);
  }
  return SpectralField(grid, std::move(in));
}

RealField inverse_transform(const SpectralField& f, double tolerance) {
  const double defect = f.hermitian_defect();
  if (defect > tolerance)
    throw SymmetryError("coefficients are not Hermitian (relative defect " +
                        std::to_string(defect) + ")");
  const Grid& grid = f.grid();
  std::vector<Complex> in(f.coeffs().begin(), f.coeffs().end()), out(grid.size());
  execute(PlanCache::instance().get(grid.n()).backward, in, out);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = out[i].real();
  return RealField(grid, std::move(values));
}

double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p norm needs p >= 1, got " + std::to_string(p));
  if (std::isinf(p)) return kernels::max_abs(f.values());
  const double sum = kernels::power_sum(f.values(), p, static_cast<std::size_t>(f.grid().n()));
  return std::pow(sum * f.grid().cell_area(), 1.0 / p);
}

double parseval_l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const Complex& c : f.coeffs()) s += std::norm(c);
  return f.grid().box_length() * std::sqrt(s);
}

Complex pairing(const SpectralField& f, const SpectralField& g) {
  if (f.grid().box_length() != g.grid().box_length())
    throw DomainError("pairing needs fields on the same box");
  const Grid& big = f.grid().n() >= g.grid().n() ? f.grid() : g.grid();
  const SpectralField a = resample(f, big);
  const SpectralField b = resample(g, big);
  Complex s{};
  for (std::size_t i = 0; i < big.size(); ++i) s += a[i] * b[big.conjugate_index(i)];
  return s * (big.box_length() * big.box_length());
}

SpectralField derivative(const SpectralField& f, int axis) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (grid.on_nyquist(i)) continue;
    const Wavevector k = grid.wavevector(i);
    out[i] = Complex(0.0, axis == 0 ? k.x : k.y) * f[i];
  }
  return SpectralField(grid, std::move(out));
}

SpectralField dealias_two_thirds(const SpectralField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!grid.inside_two_thirds(i)) out[i] = Complex{};
  return SpectralField(grid, std::move(out));
}

SpectralField remove_mean(const SpectralField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  out[0] = Complex{};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (grid.on_nyquist(i)) out[i] = Complex{};
  return SpectralField(grid, std::move(out));
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  const Grid& src = f.grid();
  if (src.box_length() != target.box_length())
    throw DomainError("resample needs the same box length");
  if (src.n() == target.n()) return f;
  std::vector<Complex> out(target.size());
  const int half_src = src.n() / 2;
  const int half_dst = target.n() / 2;
  const bool padding = target.n() > src.n();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Complex c = f[i];
    if (c == Complex{}) continue;
    const int m1 = src.frequency(static_cast<int>(i / src.n()));
    const int m2 = src.frequency(static_cast<int>(i % src.n()));
    if (padding) {
      // A source Nyquist frequency -n/2 stands for the symmetric pair +-n/2.
      const int c1 = m1 == -half_src ? 2 : 1;
      const int c2 = m2 == -half_src ? 2 : 1;
      const double w = 1.0 / (c1 * c2);
      for (int a = 0; a < c1; ++a)
        for (int b = 0; b < c2; ++b) {
          const int t1 = a == 0 ? m1 : -m1;
          const int t2 = b == 0 ? m2 : -m2;
          out[target.flat_of_frequency(t1, t2)] += w * c;
        }
    } else {
      if (std::abs(m1) > half_dst || std::abs(m2) > half_dst) continue;
      // +-n'/2 share one slot on the target grid.
      out[target.flat(target.index_of_frequency(m1) % target.n(),
                      target.index_of_frequency(m2) % target.n())] += c;
    }
  }
  return SpectralField(target, std::move(out));
}

RealField white_noise(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(grid.size());
  for (double& v : values) v = normal(rng);
  return RealField(grid, std::move(values));
}

SpectralField random_band_limited(const Grid& grid, int j, std::uint64_t seed) {
  const double lo = std::ldexp(1.0, j - 1);
  const double hi = std::ldexp(1.0, j + 1);
  std::size_t occupied = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double r = grid.wavenumber_norm(i);
    if (r > lo && r < hi && !grid.on_nyquist(i)) ++occupied;
  }
  if (occupied == 0)
    throw BandError("dyadic band j=" + std::to_string(j) + " holds no lattice point on an n=" +
                    std::to_string(grid.n()) + " grid");
  const SpectralField noise = forward_transform(white_noise(grid, seed));
  const SpectralField band = apply_multiplier(noise, [&](const Wavevector& k) {
    const double r = k.norm();
    if (!(r > lo && r < hi)) return 0.0;
    const double s = std::sin(0.5 * std::numbers::pi * (std::log2(r) - (j - 1)));
    return s * s;
  });
  const SpectralField clean = remove_mean(band);
  const double norm = parseval_l2_norm(clean);
  if (norm == 0.0) throw BandError("dyadic band j=" + std::to_string(j) + " produced a zero field");
  return (1.0 / norm) * clean;
}

}  // namespace sqg
