#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, parameter set, or configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (p < 1, t < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Spectral coefficients that do not describe a real function.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A dyadic index outside the range resolved by the grid.
class BandError : public Error {
 public:
  using Error::Error;
};

/// A multiplier symbol evaluated to NaN/Inf on an occupied mode.
class MultiplierOverflow : public Error {
 public:
  MultiplierOverflow(double kx, double ky)
      : Error("multiplier symbol is not finite at k=(" + std::to_string(kx) + ", " +
              std::to_string(ky) + ")"),
        kx_(kx),
        ky_(ky) {}
  double kx() const { return kx_; }
  double ky() const { return ky_; }

 private:
  double kx_;
  double ky_;
};

/// exp(gamma |k|^alpha) would leave double range on the occupied spectrum.
class GevreyOverflow : public Error {
 public:
  GevreyOverflow(double gamma, double max_gamma, double time = -1.0)
      : Error(make_message(gamma, max_gamma, time)),
        gamma_(gamma),
        max_gamma_(max_gamma),
        time_(time) {}
  double gamma() const { return gamma_; }
  double max_admissible_gamma() const { return max_gamma_; }
  /// Sample time for trajectory norms; negative when not applicable.
  double time() const { return time_; }

 private:
  static std::string make_message(double gamma, double max_gamma, double time) {
    std::string msg = "Gevrey multiplier overflow: gamma=" + std::to_string(gamma) +
                      " exceeds max admissible " + std::to_string(max_gamma);
    if (time >= 0.0) msg += " at t=" + std::to_string(time);
    return msg;
  }
  double gamma_;
  double max_gamma_;
  double time_;
};

/// Direct bilinear evaluation would exceed the work guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqg
