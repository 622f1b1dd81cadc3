#pragma once

// Helpers shared by the check implementations (not installed).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "sqg/littlewood_paley.hpp"
#include "sqg/spectral.hpp"
#include "sqg/verification.hpp"

namespace sqg::detail {

/// Shortest text that round-trips.
inline std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ",") + fmt(x);
  return out;
}

/// Report skeleton with config echo and environment filled in.
InequalityReport start_report(const CheckConfig& cfg);

/// Delta_j of a seeded random band-limited field.
inline SpectralField band_field(const DyadicSystem& sys, int j, std::uint64_t seed) {
  return delta_j(sys, random_band_limited(sys.grid(), j, seed), j);
}

/// Physical samples of f, on the 2n grid when `padded`.
inline RealField physical(const SpectralField& f, bool padded) {
  if (!padded) return inverse_transform(f);
  return inverse_transform(resample(f, Grid(2 * f.grid().n(), f.grid().box_length())));
}

/// |v|^e (or sign(v)|v|^e) pointwise.
inline RealField power_field(const RealField& v, double e, bool signed_power) {
  std::vector<double> out(v.grid().size());
  kernels::power(v.values(), e, signed_power, out);
  return RealField(v.grid(), std::move(out));
}

/// Integral of a b by collocation.
inline double integral_product(const RealField& a, const RealField& b) {
  std::vector<double> prod(a.grid().size());
  kernels::multiply(a.values(), b.values(), prod);
  double s = 0.0;
  for (double x : prod) s += x;
  return s * a.grid().cell_area();
}

inline double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}
inline double min_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

inline Fit upper(std::string name, double value, double bound) {
  return {std::move(name), value, bound, "<=", std::nan(""), value <= bound};
}
inline Fit lower(std::string name, double value, double bound) {
  return {std::move(name), value, bound, ">=", std::nan(""), value >= bound};
}
inline Fit positive(std::string name, double value) {
  return {std::move(name), value, 0.0, ">", std::nan(""), value > 0.0};
}

}  // namespace sqg::detail
