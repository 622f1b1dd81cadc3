#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/littlewood_paley.hpp"

namespace sqg {

/// Closed annulus inner <= |k| <= outer.
struct Annulus {
  double inner = 0.0;
  double outer = 0.0;
  bool contains(double r) const { return r >= inner && r <= outer; }
};

/// Symbol m(xi, eta) of a bilinear Fourier multiplier
/// T_m(f, g)(x) = sum_{xi, eta} m(xi, eta) f_hat(xi) g_hat(eta) exp(i x.(xi + eta)).
/// When a hint is set the symbol vanishes for arguments outside it.
struct BilinearSymbol {
  std::function<Complex(const Wavevector& xi, const Wavevector& eta)> eval;
  std::string id;
  std::optional<Annulus> xi_hint;
  std::optional<Annulus> eta_hint;

  Complex operator()(const Wavevector& xi, const Wavevector& eta) const { return eval(xi, eta); }
};

/// Work guard for apply_bilinear: occupied(f) * occupied(g).
inline constexpr double kBilinearPairLimit = 1e8;

/// Exact evaluation by direct double sum over the occupied modes of f and g
/// (Nyquist modes are ignored). The result lives on the 2n grid with the same
/// box, which holds every sum frequency without aliasing. Throws SizeError
/// past the work guard, DomainError when the grids differ.
SpectralField apply_bilinear(const BilinearSymbol& m, const SpectralField& f,
                             const SpectralField& g);

/// m~(xi, eta) = m(xi, -xi - eta); pairs as <T_m(f, g), h> = <T_m~(f, h), g>.
BilinearSymbol rotation_dual(const BilinearSymbol& m);
/// m'(xi, eta) = m(-xi - eta, eta); pairs as <T_m(f, g), h> = <T_m'(h, g), f>.
BilinearSymbol rotation_dual_first(const BilinearSymbol& m);

/// m_lambda(xi, eta) = m(lambda xi, lambda eta); hints shrink by 1/lambda.
/// Throws DomainError for lambda <= 0.
BilinearSymbol dilate(const BilinearSymbol& m, double lambda);

struct ProbeSpec {
  std::vector<double> xi_radii;
  std::vector<double> eta_radii;
  int angles = 6;
  double relative_step = 1e-3;
};

/// Radii 2^-4 .. 2^4, or five log-spaced radii inside a hint annulus.
ProbeSpec default_probes(const BilinearSymbol& m);

struct MarcinkiewiczEntry {
  std::array<int, 2> beta_xi{};
  std::array<int, 2> beta_eta{};
  /// max |d^beta m| |xi|^|beta_xi| |eta|^|beta_eta| over all probes.
  double max_weighted = 0.0;
  /// Same maximum restricted to each (xi radius, eta radius) pair.
  std::vector<double> per_scale;
  bool non_finite = false;
};

struct MarcinkiewiczReport {
  int max_order = 0;
  std::vector<std::pair<double, double>> scales;
  std::vector<MarcinkiewiczEntry> entries;

  /// Largest entry among multi-indices of total order >= min_order.
  double max_entry(int min_order = 0) const;
  const MarcinkiewiczEntry* find(std::array<int, 2> beta_xi, std::array<int, 2> beta_eta) const;
};

/// Weighted mixed derivatives up to total order max_order (at most 4) by
/// tensor central differences with step relative_step * |xi| (resp. |eta|).
/// Throws DomainError when a probe radius is not positive.
MarcinkiewiczReport marcinkiewicz_check(const BilinearSymbol& m, int max_order,
                                        const ProbeSpec& probes);

/// Mixed partial derivative by central differences; `h_xi`, `h_eta` are steps.
Complex finite_difference(const BilinearSymbol& m, const Wavevector& xi, const Wavevector& eta,
                          std::array<int, 2> beta_xi, std::array<int, 2> beta_eta, double h_xi,
                          double h_eta);

struct NormEstimate {
  /// Largest observed ||T_m(f,g)||_r / (||f||_p ||g||_q): a lower bound.
  double estimate = 0.0;
  double r = 0.0;
  /// 1 < p < inf, 1 <= q <= inf.
  bool in_theorem_range = false;
  std::vector<double> trial_ratios;
};

/// Randomized probe of the operator norm L^p x L^q -> L^r, 1/r = 1/p + 1/q.
/// Probe fields are random band-limited; they are confined to the symbol's
/// hints when present. Trial 0 uses g = f where the hints allow it. Throws
/// DomainError unless p, q >= 1, 1/p + 1/q <= 1 and trials >= 1.
NormEstimate estimate_operator_norm(const BilinearSymbol& m, const Grid& grid, double p, double q,
                                    int trials, std::uint64_t seed);

/// [G_gamma Delta_j, f] g = G_gamma Delta_j (f g) - f G_gamma Delta_j g, from
/// physical products on the 2n grid (Nyquist modes of f and g ignored).
/// Throws BandError for unresolved j, GevreyOverflow past the guard.
RealField gevrey_commutator(const DyadicSystem& sys, const SpectralField& f,
                            const SpectralField& g, int j, double gamma, double alpha);

/// Symbol of the commutator above: G(xi+eta) phi_j(xi+eta) - G(eta) phi_j(eta).
BilinearSymbol commutator_symbol(const DyadicSystem& sys, int j, double gamma, double alpha);

struct SymbolInfo {
  std::string id;
  std::vector<std::string> params;
  std::vector<double> defaults;
  std::string description;
};

/// Built-in symbols selectable by id.
const std::vector<SymbolInfo>& symbol_registry();

/// Builds a registered symbol; missing trailing parameters take defaults.
/// Throws ConfigError for an unknown id or too many parameters.
BilinearSymbol make_symbol(const std::string& id, const std::vector<double>& params,
                           double bump_sharpness = 1.0);

}  // namespace sqg
