#include "sqg/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sqg/errors.hpp"
#include "sqg/gevrey.hpp"
#include "sqg/rng.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

namespace {

struct Mode {
  Wavevector k;
  int m1 = 0;
  int m2 = 0;
  Complex c;
};

std::vector<Mode> occupied_modes(const SpectralField& f, const std::optional<Annulus>& hint) {
  const Grid& grid = f.grid();
  std::vector<Mode> modes;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f[i] == Complex{} || grid.on_nyquist(i)) continue;
    const Wavevector k = grid.wavevector(i);
    if (hint && !hint->contains(k.norm())) continue;
    modes.push_back({k, grid.frequency(static_cast<int>(i / grid.n())),
                     grid.frequency(static_cast<int>(i % grid.n())), f[i]});
  }
  return modes;
}

SpectralField drop_nyquist(const SpectralField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (grid.on_nyquist(i)) out[i] = Complex{};
  return SpectralField(grid, std::move(out));
}

}  // namespace

SpectralField apply_bilinear(const BilinearSymbol& m, const SpectralField& f,
                             const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw DomainError("bilinear operands live on different grids");
  const Grid& grid = f.grid();
  const Grid out_grid(2 * grid.n(), grid.box_length());
  const std::vector<Mode> fm = occupied_modes(f, m.xi_hint);
  const std::vector<Mode> gm = occupied_modes(g, m.eta_hint);
  const double pairs = static_cast<double>(fm.size()) * static_cast<double>(gm.size());
  if (pairs > kBilinearPairLimit)
    throw SizeError("bilinear sum over " + std::to_string(fm.size()) + " x " +
                    std::to_string(gm.size()) +
                    " occupied modes exceeds the work guard; use sparser or band-limited inputs");
  if (fm.empty() || gm.empty()) return SpectralField(out_grid);

  // Fixed chunking of the outer sum keeps the summation order independent of
  // the thread count.
  const int chunks = static_cast<int>(std::min<std::size_t>(16, fm.size()));
  std::vector<std::vector<Complex>> partial(chunks, std::vector<Complex>(out_grid.size()));
#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < chunks; ++c) {
    const std::size_t begin = fm.size() * c / chunks;
    const std::size_t end = fm.size() * (c + 1) / chunks;
    std::vector<Complex>& acc = partial[c];
    for (std::size_t a = begin; a < end; ++a)
      for (const Mode& b : gm) {
        const Complex w = m.eval(fm[a].k, b.k);
        if (w == Complex{}) continue;
        acc[out_grid.flat_of_frequency(fm[a].m1 + b.m1, fm[a].m2 + b.m2)] += w * fm[a].c * b.c;
      }
  }
  std::vector<Complex> out(out_grid.size());
  for (const auto& acc : partial)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += acc[i];
  return SpectralField(out_grid, std::move(out));
}

BilinearSymbol rotation_dual(const BilinearSymbol& m) {
  BilinearSymbol out;
  out.id = "dual(" + m.id + ")";
  out.eval = [e = m.eval](const Wavevector& xi, const Wavevector& eta) {
    return e(xi, {-xi.x - eta.x, -xi.y - eta.y});
  };
  out.xi_hint = m.xi_hint;
  return out;
}

BilinearSymbol rotation_dual_first(const BilinearSymbol& m) {
  BilinearSymbol out;
  out.id = "dual1(" + m.id + ")";
  out.eval = [e = m.eval](const Wavevector& xi, const Wavevector& eta) {
    return e({-xi.x - eta.x, -xi.y - eta.y}, eta);
  };
  out.eta_hint = m.eta_hint;
  return out;
}

BilinearSymbol dilate(const BilinearSymbol& m, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("dilation factor must be positive");
  BilinearSymbol out;
  out.id = m.id;
  out.eval = [e = m.eval, lambda](const Wavevector& xi, const Wavevector& eta) {
    return e({lambda * xi.x, lambda * xi.y}, {lambda * eta.x, lambda * eta.y});
  };
  auto shrink = [lambda](const std::optional<Annulus>& a) -> std::optional<Annulus> {
    if (!a) return std::nullopt;
    return Annulus{a->inner / lambda, a->outer / lambda};
  };
  out.xi_hint = shrink(m.xi_hint);
  out.eta_hint = shrink(m.eta_hint);
  return out;
}

ProbeSpec default_probes(const BilinearSymbol& m) {
  auto radii = [](const std::optional<Annulus>& hint) {
    std::vector<double> r;
    if (!hint) {
      for (int e = -4; e <= 4; ++e) r.push_back(std::ldexp(1.0, e));
      return r;
    }
    const double lo = hint->inner > 0.0 ? hint->inner : hint->outer / 16.0;
    const double ratio = hint->outer / lo;
    for (int i = 0; i < 5; ++i) r.push_back(lo * std::pow(ratio, (i + 0.5) / 5.0));
    return r;
  };
  ProbeSpec spec;
  spec.xi_radii = radii(m.xi_hint);
  spec.eta_radii = radii(m.eta_hint);
  return spec;
}

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;
};

Stencil central_stencil(int order) {
  switch (order) {
    case 0: return {{0}, {1.0}};
    case 1: return {{-1, 1}, {-0.5, 0.5}};
    case 2: return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
    case 3: return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    case 4: return {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
    default: throw DomainError("finite differences support orders up to 4 per variable");
  }
}

}  // namespace

Complex finite_difference(const BilinearSymbol& m, const Wavevector& xi, const Wavevector& eta,
                          std::array<int, 2> beta_xi, std::array<int, 2> beta_eta, double h_xi,
                          double h_eta) {
  const Stencil s0 = central_stencil(beta_xi[0]);
  const Stencil s1 = central_stencil(beta_xi[1]);
  const Stencil s2 = central_stencil(beta_eta[0]);
  const Stencil s3 = central_stencil(beta_eta[1]);
  Complex sum{};
  for (std::size_t a = 0; a < s0.offsets.size(); ++a)
    for (std::size_t b = 0; b < s1.offsets.size(); ++b)
      for (std::size_t c = 0; c < s2.offsets.size(); ++c)
        for (std::size_t d = 0; d < s3.offsets.size(); ++d) {
          const Wavevector x{xi.x + s0.offsets[a] * h_xi, xi.y + s1.offsets[b] * h_xi};
          const Wavevector y{eta.x + s2.offsets[c] * h_eta, eta.y + s3.offsets[d] * h_eta};
          sum += s0.weights[a] * s1.weights[b] * s2.weights[c] * s3.weights[d] * m.eval(x, y);
        }
  const int oxi = beta_xi[0] + beta_xi[1];
  const int oeta = beta_eta[0] + beta_eta[1];
  return sum / (std::pow(h_xi, oxi) * std::pow(h_eta, oeta));
}

double MarcinkiewiczReport::max_entry(int min_order) const {
  double best = 0.0;
  for (const auto& e : entries) {
    const int order = e.beta_xi[0] + e.beta_xi[1] + e.beta_eta[0] + e.beta_eta[1];
    if (order >= min_order) best = std::max(best, e.max_weighted);
  }
  return best;
}

const MarcinkiewiczEntry* MarcinkiewiczReport::find(std::array<int, 2> beta_xi,
                                                    std::array<int, 2> beta_eta) const {
  for (const auto& e : entries)
    if (e.beta_xi == beta_xi && e.beta_eta == beta_eta) return &e;
  return nullptr;
}

MarcinkiewiczReport marcinkiewicz_check(const BilinearSymbol& m, int max_order,
                                        const ProbeSpec& probes) {
  if (max_order < 0 || max_order > 4) throw DomainError("max_order must lie in [0, 4]");
  if (probes.angles < 1) throw DomainError("probe set needs at least one angle");
  for (double r : probes.xi_radii)
    if (!(r > 0.0)) throw DomainError("probe radii must avoid xi = 0");
  for (double r : probes.eta_radii)
    if (!(r > 0.0)) throw DomainError("probe radii must avoid eta = 0");

  MarcinkiewiczReport report;
  report.max_order = max_order;
  for (double a : probes.xi_radii)
    for (double b : probes.eta_radii) report.scales.emplace_back(a, b);

  for (int a1 = 0; a1 <= max_order; ++a1)
    for (int a2 = 0; a1 + a2 <= max_order; ++a2)
      for (int b1 = 0; a1 + a2 + b1 <= max_order; ++b1)
        for (int b2 = 0; a1 + a2 + b1 + b2 <= max_order; ++b2) {
          MarcinkiewiczEntry e;
          e.beta_xi = {a1, a2};
          e.beta_eta = {b1, b2};
          e.per_scale.assign(report.scales.size(), 0.0);
          report.entries.push_back(std::move(e));
        }

  const int angles = probes.angles;
  const long long scale_count = static_cast<long long>(report.scales.size());
  std::vector<std::vector<char>> bad(report.entries.size(), std::vector<char>(scale_count, 0));
#pragma omp parallel for schedule(dynamic)
  for (long long s = 0; s < scale_count; ++s) {
    const auto [ra, rb] = report.scales[s];
    for (int u = 0; u < angles; ++u)
      for (int v = 0; v < angles; ++v) {
        // Offset angles so that xi and eta are never exactly (anti)parallel.
        const double tu = 2.0 * std::numbers::pi * (u + 0.5) / angles;
        const double tv = 2.0 * std::numbers::pi * (v + 0.3) / angles;
        const Wavevector xi{ra * std::cos(tu), ra * std::sin(tu)};
        const Wavevector eta{rb * std::cos(tv), rb * std::sin(tv)};
        for (std::size_t i = 0; i < report.entries.size(); ++i) {
          MarcinkiewiczEntry& e = report.entries[i];
          const Complex d = finite_difference(m, xi, eta, e.beta_xi, e.beta_eta,
                                              probes.relative_step * ra, probes.relative_step * rb);
          const double w = std::abs(d) * std::pow(ra, e.beta_xi[0] + e.beta_xi[1]) *
                           std::pow(rb, e.beta_eta[0] + e.beta_eta[1]);
          if (!std::isfinite(w)) {
            bad[i][s] = 1;
            continue;
          }
          e.per_scale[s] = std::max(e.per_scale[s], w);
        }
      }
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    MarcinkiewiczEntry& e = report.entries[i];
    for (double v : e.per_scale) e.max_weighted = std::max(e.max_weighted, v);
    e.non_finite = std::any_of(bad[i].begin(), bad[i].end(), [](char c) { return c != 0; });
  }
  return report;
}

namespace {

// Random real field with Gaussian coefficients on the lattice points of an
// annulus (Nyquist lines and the mean excluded).
SpectralField random_annulus_field(const Grid& grid, const Annulus& band, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> coeffs(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::size_t c = grid.conjugate_index(i);
    if (c <= i || grid.on_nyquist(i) || !band.contains(grid.wavenumber_norm(i))) continue;
    const double re = normal(rng);
    coeffs[i] = {re, normal(rng)};
    coeffs[c] = std::conj(coeffs[i]);
  }
  return SpectralField(grid, std::move(coeffs));
}

double padded_norm(const SpectralField& f, const Grid& padded, double p) {
  return lp_norm(inverse_transform(resample(f, padded)), p);
}

// L^p norm of |h| for a possibly complex-valued h: odd symbols give
// non-Hermitian coefficients, so h = a + i b is split into real parts first.
double modulus_norm(const SpectralField& h, double p) {
  const Grid& grid = h.grid();
  std::vector<Complex> a(grid.size()), b(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex c = std::conj(h[grid.conjugate_index(i)]);
    a[i] = 0.5 * (h[i] + c);
    b[i] = Complex(0.0, -0.5) * (h[i] - c);
  }
  const RealField ra = inverse_transform(SpectralField(grid, std::move(a)));
  const RealField rb = inverse_transform(SpectralField(grid, std::move(b)));
  std::vector<double> mod(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) mod[i] = std::hypot(ra[i], rb[i]);
  return lp_norm(RealField(grid, std::move(mod)), p);
}

}  // namespace

NormEstimate estimate_operator_norm(const BilinearSymbol& m, const Grid& grid, double p, double q,
                                    int trials, std::uint64_t seed) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("operator norm needs p, q >= 1");
  const double inv_r = 1.0 / p + 1.0 / q;
  if (inv_r > 1.0 + 1e-15)
    throw DomainError("exponent triple needs 1/p + 1/q <= 1 so that r >= 1");
  if (trials < 1) throw DomainError("operator norm estimate needs at least one trial");

  NormEstimate est;
  est.r = inv_r == 0.0 ? kInfinity : 1.0 / inv_r;
  est.in_theorem_range = p > 1.0 && std::isfinite(p) && q >= 1.0;

  const Annulus broad{grid.k0(), grid.nyquist() / 2.0};
  const Annulus xi_band = m.xi_hint.value_or(broad);
  const Annulus eta_band = m.eta_hint.value_or(broad);
  const bool same_band = xi_band.inner == eta_band.inner && xi_band.outer == eta_band.outer;
  const Grid padded(2 * grid.n(), grid.box_length());

  for (int t = 0; t < trials; ++t) {
    const SpectralField f = random_annulus_field(grid, xi_band, trial_seed(seed, 2 * t));
    const SpectralField g = (t == 0 && same_band)
                                ? f
                                : random_annulus_field(grid, eta_band, trial_seed(seed, 2 * t + 1));
    const double nf = padded_norm(f, padded, p);
    const double ng = padded_norm(g, padded, q);
    if (nf == 0.0 || ng == 0.0) {
      est.trial_ratios.push_back(0.0);
      continue;
    }
    const double nt = modulus_norm(apply_bilinear(m, f, g), est.r);
    est.trial_ratios.push_back(nt / (nf * ng));
    est.estimate = std::max(est.estimate, est.trial_ratios.back());
  }
  return est;
}

BilinearSymbol commutator_symbol(const DyadicSystem& sys, int j, double gamma, double alpha) {
  BilinearSymbol m;
  m.id = "commutator";
  m.eval = [sys, j, gamma, alpha](const Wavevector& xi, const Wavevector& eta) -> Complex {
    const double s = std::hypot(xi.x + eta.x, xi.y + eta.y);
    const double e = eta.norm();
    return std::exp(gamma * std::pow(s, alpha)) * sys.phi(j, s) -
           std::exp(gamma * std::pow(e, alpha)) * sys.phi(j, e);
  };
  return m;
}

RealField gevrey_commutator(const DyadicSystem& sys, const SpectralField& f,
                            const SpectralField& g, int j, double gamma, double alpha) {
  if (!(f.grid() == g.grid())) throw DomainError("commutator operands live on different grids");
  if (!(sys.grid() == f.grid())) throw DomainError("dyadic system uses a different grid");
  if (!sys.resolved(j))
    throw BandError("dyadic index " + std::to_string(j) + " outside resolved range");
  if (!(alpha > 0.0)) throw DomainError("Gevrey exponent alpha must be positive");
  const double reach = std::ldexp(1.0, j + 1);
  if (gamma > 0.0 && gamma * std::pow(reach, alpha) > kGevreyExponentLimit)
    throw GevreyOverflow(gamma, kGevreyExponentLimit / std::pow(reach, alpha));

  auto block = [&](const SpectralField& h) {
    return apply_multiplier(h, [&](const Wavevector& k) {
      const double r = k.norm();
      const double w = sys.phi(j, r);
      return w == 0.0 ? 0.0 : std::exp(gamma * std::pow(r, alpha)) * w;
    });
  };
  const Grid padded(2 * f.grid().n(), f.grid().box_length());
  const RealField fp = inverse_transform(resample(drop_nyquist(f), padded));
  const RealField gp = inverse_transform(resample(drop_nyquist(g), padded));
  const RealField first = inverse_transform(block(forward_transform(fp * gp)));
  const RealField second = fp * inverse_transform(block(forward_transform(gp)));
  return first - second;
}

const std::vector<SymbolInfo>& symbol_registry() {
  static const double nan = std::numeric_limits<double>::quiet_NaN();
  static const std::vector<SymbolInfo> registry = {
      {"constant", {"c"}, {1.0}, "m = c"},
      {"riesz-pair", {"a", "b"}, {1.0, 1.0}, "m = h_a(xi) h_b(eta), h_a = -i xi_a/|xi|"},
      {"commutator",
       {"j", "gamma", "alpha", "k"},
       {1.0, 0.5, 0.5, nan},
       "G(xi+eta) phi_j(xi+eta) - G(eta) phi_j(eta); with k, times psi0(2^(2-k)|xi|) phi_k(eta)"},
      {"kgtrj",
       {"gamma", "alpha", "j", "k"},
       {0.5, 0.5, 1.0, 4.0},
       "exp(gamma R(xi,eta)) phi_j(xi+eta) phi~_k(xi) phi_k(eta), "
       "R = |xi+eta|^a - |xi|^a - |eta|^a"},
      {"ksimj",
       {"gamma", "alpha", "j", "k"},
       {0.5, 0.5, 2.0, 2.0},
       "exp(gamma R(xi,eta)) phi_j(xi+eta) phi_k(xi) phi_k(eta)"},
      {"mA",
       {"i", "j", "k", "l", "sigma", "gamma", "alpha"},
       {1.0, 4.0, 4.0, 1.0, 0.5, 0.5, 0.5},
       "alpha gamma exp(gamma R_s) |s xi+eta|^(alpha-2) (s xi_i+eta_i) phi_j(s xi+eta) "
       "phi_l(xi) phi_k(eta), R_s = |s xi+eta|^a - |xi|^a - |eta|^a"},
      {"mB",
       {"i", "j", "k", "l", "sigma", "gamma", "alpha"},
       {1.0, 4.0, 4.0, 1.0, 0.5, 0.5, 0.5},
       "exp(gamma R_s) (d_i phi0)(2^-j (s xi+eta)) 2^-j phi_l(xi) phi_k(eta)"},
  };
  return registry;
}

namespace {

int as_index(double v, const std::string& name) {
  if (v != std::round(v) || std::abs(v) > 64)
    throw ConfigError("symbol parameter " + name + " must be a small integer");
  return static_cast<int>(v);
}

Annulus band(int j) { return {std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 1)}; }

double gevrey_exponent(const Wavevector& a, const Wavevector& b, const Wavevector& sum,
                       double alpha) {
  return std::pow(sum.norm(), alpha) - std::pow(a.norm(), alpha) - std::pow(b.norm(), alpha);
}

}  // namespace

BilinearSymbol make_symbol(const std::string& id, const std::vector<double>& params,
                           double bump_sharpness) {
  const auto& registry = symbol_registry();
  const auto it = std::find_if(registry.begin(), registry.end(),
                               [&](const SymbolInfo& s) { return s.id == id; });
  if (it == registry.end()) {
    std::string valid;
    for (const auto& s : registry) valid += (valid.empty() ? "" : ", ") + s.id;
    throw ConfigError("unknown symbol '" + id + "' (valid: " + valid + ")");
  }
  if (params.size() > it->params.size())
    throw ConfigError("symbol " + id + " takes at most " + std::to_string(it->params.size()) +
                      " parameters");
  std::vector<double> v = it->defaults;
  std::copy(params.begin(), params.end(), v.begin());

  const DyadicSystem sys(Grid(8), bump_sharpness);
  BilinearSymbol m;
  m.id = id;

  if (id == "constant") {
    const double c = v[0];
    m.eval = [c](const Wavevector&, const Wavevector&) { return Complex(c, 0.0); };
  } else if (id == "riesz-pair") {
    const int a = as_index(v[0], "a"), b = as_index(v[1], "b");
    if ((a != 1 && a != 2) || (b != 1 && b != 2)) throw ConfigError("riesz axes must be 1 or 2");
    auto h = [](const Wavevector& k, int axis) {
      const double r = k.norm();
      return r == 0.0 ? Complex{} : Complex(0.0, -(axis == 1 ? k.x : k.y) / r);
    };
    m.eval = [h, a, b](const Wavevector& xi, const Wavevector& eta) { return h(xi, a) * h(eta, b); };
  } else if (id == "commutator") {
    const int j = as_index(v[0], "j");
    const double gamma = v[1], alpha = v[2];
    BilinearSymbol base = commutator_symbol(sys, j, gamma, alpha);
    if (std::isnan(v[3])) {
      m.eval = base.eval;
    } else {
      const int k = as_index(v[3], "k");
      m.eval = [sys, base, k](const Wavevector& xi, const Wavevector& eta) {
        const double w = sys.psi0(std::ldexp(xi.norm(), 2 - k)) * sys.phi(k, eta.norm());
        return w == 0.0 ? Complex{} : w * base.eval(xi, eta);
      };
      m.xi_hint = Annulus{0.0, std::ldexp(1.0, k - 2)};
      m.eta_hint = band(k);
    }
  } else if (id == "kgtrj" || id == "ksimj") {
    const double gamma = v[0], alpha = v[1];
    const int j = as_index(v[2], "j"), k = as_index(v[3], "k");
    const bool tilde = id == "kgtrj";
    m.eval = [sys, gamma, alpha, j, k, tilde](const Wavevector& xi, const Wavevector& eta) {
      const Wavevector s{xi.x + eta.x, xi.y + eta.y};
      double w = sys.phi(j, s.norm()) * sys.phi(k, eta.norm());
      if (w == 0.0) return Complex{};
      double wx = 0.0;
      if (tilde)
        for (int l = k - 2; l <= k + 2; ++l) wx += sys.phi(l, xi.norm());
      else
        wx = sys.phi(k, xi.norm());
      w *= wx;
      if (w == 0.0) return Complex{};
      return Complex(std::exp(gamma * gevrey_exponent(xi, eta, s, alpha)) * w, 0.0);
    };
    if (tilde) {
      // xi = (xi + eta) - eta with xi + eta in band j and eta in band k.
      const double inner = std::max(std::ldexp(1.0, k - 3), std::ldexp(1.0, k - 1) - std::ldexp(1.0, j + 1));
      const double outer = std::min(std::ldexp(1.0, k + 3), std::ldexp(1.0, k + 1) + std::ldexp(1.0, j + 1));
      m.xi_hint = Annulus{inner, outer};
    } else {
      m.xi_hint = band(k);
    }
    m.eta_hint = band(k);
  } else {  // mA, mB
    const int i = as_index(v[0], "i"), j = as_index(v[1], "j"), k = as_index(v[2], "k"),
              l = as_index(v[3], "l");
    if (i != 1 && i != 2) throw ConfigError("component index i must be 1 or 2");
    const double sigma = v[4], gamma = v[5], alpha = v[6];
    const bool part_a = id == "mA";
    m.eval = [=](const Wavevector& xi, const Wavevector& eta) -> Complex {
      const Wavevector s{sigma * xi.x + eta.x, sigma * xi.y + eta.y};
      const double rs = s.norm();
      const double loc = sys.phi(l, xi.norm()) * sys.phi(k, eta.norm());
      if (loc == 0.0 || rs == 0.0) return Complex{};
      const double e = std::exp(gamma * gevrey_exponent(xi, eta, s, alpha));
      const double si = i == 1 ? s.x : s.y;
      if (part_a)
        return alpha * gamma * e * std::pow(rs, alpha - 2.0) * si * sys.phi(j, rs) * loc;
      const double scaled = std::ldexp(rs, -j);
      // Gradient of the radial profile phi0 at 2^-j s, component i.
      const double grad = sys.phi0_derivative(scaled) * si / rs;
      return e * grad * std::ldexp(1.0, -j) * loc;
    };
    m.xi_hint = band(l);
    m.eta_hint = band(k);
  }
  return m;
}

}  // namespace sqg
