#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace sqg {

/// Wavevector on the spectral lattice.
struct Wavevector {
  double x = 0.0;
  double y = 0.0;
  double norm() const { return std::hypot(x, y); }
};

/// Uniform n x n collocation grid on the periodic box [0, L)^2.
///
/// Storage is row-major with the first index along x1. Integer frequencies
/// follow the FFT ordering m = 0, 1, ..., n/2-1, -n/2, ..., -1 and the
/// physical wavenumber is k = (2 pi / L) m.
class Grid {
 public:
  /// Throws ConfigError unless n >= 8 is a power of two and L > 0.
  explicit Grid(int n, double box_length = 2.0 * std::numbers::pi);

  int n() const { return n_; }
  double box_length() const { return box_length_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  /// Lattice spacing 2 pi / L.
  double k0() const { return k0_; }
  /// |k| of the Nyquist frequency along one axis.
  double nyquist() const { return k0_ * (n_ / 2); }
  /// Collocation cell area (L/n)^2.
  double cell_area() const { return (box_length_ / n_) * (box_length_ / n_); }
  double spacing() const { return box_length_ / n_; }

  int frequency(int index) const { return index < n_ / 2 ? index : index - n_; }
  int index_of_frequency(int m) const { return m >= 0 ? m : m + n_; }
  std::size_t flat(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  std::size_t flat_of_frequency(int m1, int m2) const {
    return flat(index_of_frequency(m1), index_of_frequency(m2));
  }
  /// Flat index of -k (modular), the Hermitian partner of mode idx.
  std::size_t conjugate_index(std::size_t idx) const {
    const int i = static_cast<int>(idx / n_);
    const int j = static_cast<int>(idx % n_);
    return flat((n_ - i) % n_, (n_ - j) % n_);
  }

  Wavevector wavevector(std::size_t idx) const {
    return {k0_ * frequency(static_cast<int>(idx / n_)),
            k0_ * frequency(static_cast<int>(idx % n_))};
  }
  double wavenumber_norm(std::size_t idx) const { return wavevector(idx).norm(); }
  /// True when either integer frequency equals -n/2.
  bool on_nyquist(std::size_t idx) const {
    return static_cast<int>(idx / n_) == n_ / 2 || static_cast<int>(idx % n_) == n_ / 2;
  }
  /// Two-thirds rule: keep the mode iff 3|m| < n on both axes.
  bool inside_two_thirds(std::size_t idx) const {
    const int m1 = frequency(static_cast<int>(idx / n_));
    const int m2 = frequency(static_cast<int>(idx % n_));
    return 3 * std::abs(m1) < n_ && 3 * std::abs(m2) < n_;
  }

  double coordinate(int index) const { return spacing() * index; }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && box_length_ == other.box_length_;
  }

 private:
  int n_;
  double box_length_;
  double k0_;
};

}  // namespace sqg
