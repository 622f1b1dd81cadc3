// Symbol-level checks: concavity lower bound and derivative bounds of
// R(xi, eta) = |xi + sigma eta|^alpha - |xi|^alpha - |eta|^alpha.

#include <cmath>
#include <numbers>
#include <random>

#include "check_util.hpp"
#include "sqg/bilinear.hpp"
#include "sqg/errors.hpp"
#include "sqg/rng.hpp"

namespace sqg {

using namespace detail;

namespace {

double concavity_f(const Wavevector& xi, const Wavevector& eta, double alpha) {
  const Wavevector sum{xi.x + eta.x, xi.y + eta.y};
  return std::pow(xi.norm(), alpha) + std::pow(eta.norm(), alpha) - std::pow(sum.norm(), alpha);
}

double concavity_g(double x, double alpha) {
  return std::pow(std::abs(x), alpha) + 1.0 - std::pow(std::abs(x + 1.0), alpha);
}

BilinearSymbol r_symbol(double alpha, double sigma) {
  BilinearSymbol m;
  m.id = "R";
  m.eval = [alpha, sigma](const Wavevector& xi, const Wavevector& eta) {
    const Wavevector a{xi.x + sigma * eta.x, xi.y + sigma * eta.y};
    return Complex(std::pow(a.norm(), alpha) - std::pow(xi.norm(), alpha) -
                   std::pow(eta.norm(), alpha));
  };
  return m;
}

// R_{alpha,1}(xi, -xi-eta) = |eta|^alpha - |xi|^alpha - |xi+eta|^alpha.
BilinearSymbol r_symbol_high(double alpha) {
  BilinearSymbol m;
  m.id = "R_high";
  m.eval = [alpha](const Wavevector& xi, const Wavevector& eta) {
    const Wavevector a{xi.x + eta.x, xi.y + eta.y};
    return Complex(std::pow(eta.norm(), alpha) - std::pow(xi.norm(), alpha) -
                   std::pow(a.norm(), alpha));
  };
  return m;
}

std::vector<double> around(double r) { return {0.5 * r, r, 2.0 * r}; }

}  // namespace

InequalityReport check_concavity(const CheckConfig& cfg) {
  InequalityReport report = start_report(cfg);
  report.columns = {"alpha", "c", "eps_2d", "argmin_ratio", "argmin_angle", "min_1d", "g_c", "g_minus_c"};
  for (double a : cfg.alpha)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("concavity needs 0 < alpha < 1");
  for (double c : cfg.c)
    if (!(c > 0.0)) throw ConfigError("concavity needs c > 0");

  constexpr int radii = 400, angles = 720, line = 20000;
  const std::size_t nc = cfg.c.size();
  std::vector<std::vector<double>> rows(cfg.alpha.size() * nc);
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < static_cast<long long>(rows.size()); ++idx) {
    const double alpha = cfg.alpha[idx / nc], c = cfg.c[idx % nc];
    // By homogeneity and rotation invariance eta = e1; |xi| >= c.
    const double top = 1e3 * std::max(c, 1.0);
    const Wavevector eta{1.0, 0.0};
    double eps = std::numeric_limits<double>::infinity(), arg_x = 0.0, arg_th = 0.0;
    for (int a = 0; a < radii; ++a) {
      const double x = c * std::pow(top / c, double(a) / (radii - 1));
      for (int b = 0; b < angles; ++b) {
        const double th = 2.0 * std::numbers::pi * b / angles;
        const double v = concavity_f({x * std::cos(th), x * std::sin(th)}, eta, alpha);
        if (v < eps) {
          eps = v;
          arg_x = x;
          arg_th = th;
        }
      }
    }
    double m1 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < line; ++a) {
      const double x = c * std::pow(top / c, double(a) / (line - 1));
      m1 = std::min({m1, concavity_g(x, alpha), concavity_g(-x, alpha)});
    }
    rows[idx] = {alpha, c, eps, arg_x, arg_th, m1, concavity_g(c, alpha), concavity_g(-c, alpha)};
  }
  report.rows = rows;

  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    const std::string tag = "alpha=" + fmt(r[0]) + ",c=" + fmt(r[1]);
    const double floor = std::min(r[6], r[7]);
    add_fit(report, positive("eps[" + tag + "]", r[2]));
    add_fit(report, lower("eps_vs_1d_bound[" + tag + "]", r[2], floor - 1e-12));
    add_fit(report, lower("min_1d_vs_bound[" + tag + "]", r[5], floor - 1e-12));
    smallest = std::min(smallest, r[2]);
  }
  for (double alpha : cfg.alpha)
    if (alpha == 0.5)
      add_fit(report, upper("g(1)_minus_(2-sqrt2)", std::abs(concavity_g(1.0, 0.5) - (2.0 - std::sqrt(2.0))),
                            1e-12));

  // Rotation invariance spot check.
  std::mt19937_64 rng(mix_seed(cfg.seed));
  std::uniform_real_distribution<double> u(-4.0, 4.0), ang(0.0, 2.0 * std::numbers::pi);
  double worst_rot = 0.0;
  for (double alpha : cfg.alpha)
    for (int i = 0; i < 10; ++i) {
      const Wavevector xi{u(rng), u(rng)}, eta{u(rng), u(rng)};
      const double th = ang(rng), cs = std::cos(th), sn = std::sin(th);
      auto rot = [&](const Wavevector& v) { return Wavevector{cs * v.x - sn * v.y, sn * v.x + cs * v.y}; };
      const double a = concavity_f(xi, eta, alpha), b = concavity_f(rot(xi), rot(eta), alpha);
      worst_rot = std::max(worst_rot, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  add_fit(report, upper("rotation_defect", worst_rot, 1e-12));

  report.key_name = "eps";
  report.key_value = smallest;
  report.notes.push_back("eps = min of (|xi|^alpha + |eta|^alpha - |xi+eta|^alpha)/|eta|^alpha over "
                         "|xi|/|eta| in [c, 1000 max(c,1)], 720 angles; eta fixed to e1");
  finalize(report);
  return report;
}

InequalityReport check_r_derivatives(const CheckConfig& cfg) {
  InequalityReport report = start_report(cfg);
  report.columns = {"variant", "alpha", "sigma", "gap", "order", "max_weighted_over_scale"};
  if (cfg.j_lo < 3) throw ConfigError("r_derivatives needs a separation of at least 3 (j_lo >= 3)");
  if (cfg.max_order < 0 || cfg.max_order > 4) throw ConfigError("max_order must lie in [0, 4]");

  // eta ~ 2^l with l = 0, xi ~ 2^(l + gap); weights 2^(l alpha) for R and
  // 2^(k alpha) for the high-frequency variant.
  double worst = 0.0;
  for (double alpha : cfg.alpha) {
    for (double sigma : cfg.sigma) {
      std::vector<double> per_gap;
      for (int gap = cfg.j_lo; gap <= cfg.j_hi; ++gap) {
        ProbeSpec probes;
        probes.xi_radii = around(std::ldexp(1.0, gap));
        probes.eta_radii = around(1.0);
        const MarcinkiewiczReport mr = marcinkiewicz_check(r_symbol(alpha, sigma), cfg.max_order, probes);
        double gap_max = 0.0;
        for (int order = 0; order <= cfg.max_order; ++order) {
          double v = 0.0;
          for (const auto& e : mr.entries) {
            if (e.beta_xi[0] + e.beta_xi[1] + e.beta_eta[0] + e.beta_eta[1] != order) continue;
            if (e.non_finite) v = std::numeric_limits<double>::infinity();
            v = std::max(v, e.max_weighted);
          }
          report.rows.push_back({0.0, alpha, sigma, double(gap), double(order), v});
          gap_max = std::max(gap_max, v);
        }
        per_gap.push_back(gap_max);
      }
      const std::string tag = "alpha=" + fmt(alpha) + ",sigma=" + fmt(sigma);
      add_fit(report, upper("max_weighted[" + tag + "]", max_of(per_gap), cfg.constant_cap));
      worst = std::max(worst, max_of(per_gap));
      if (min_of(per_gap) > 0.0)
        report.notes.push_back(tag + ": max/min of the per-gap constant = " +
                               fmt(max_of(per_gap) / min_of(per_gap)));
    }
    std::vector<double> per_gap;
    for (int gap = cfg.j_lo; gap <= cfg.j_hi; ++gap) {
      ProbeSpec probes;
      const double k = std::ldexp(1.0, gap);
      probes.xi_radii = around(k);
      probes.eta_radii = around(1.0);
      const MarcinkiewiczReport mr = marcinkiewicz_check(r_symbol_high(alpha), cfg.max_order, probes);
      const double scale = std::pow(k, alpha);
      double gap_max = 0.0;
      for (int order = 0; order <= cfg.max_order; ++order) {
        double v = 0.0;
        for (const auto& e : mr.entries) {
          if (e.beta_xi[0] + e.beta_xi[1] + e.beta_eta[0] + e.beta_eta[1] != order) continue;
          if (e.non_finite) v = std::numeric_limits<double>::infinity();
          v = std::max(v, e.max_weighted / scale);
        }
        report.rows.push_back({1.0, alpha, 1.0, double(gap), double(order), v});
        gap_max = std::max(gap_max, v);
      }
      per_gap.push_back(gap_max);
    }
    add_fit(report, upper("max_weighted_high[alpha=" + fmt(alpha) + "]", max_of(per_gap),
                          cfg.constant_cap));
    worst = std::max(worst, max_of(per_gap));
  }
  report.key_name = "max weighted derivative constant";
  report.key_value = worst;
  report.notes.push_back(
      "variant 0: |d^b R(xi,eta)| |xi|^|b1| |eta|^|b2| / 2^(l alpha), |eta| ~ 1, |xi| ~ 2^gap; "
      "variant 1: R_(alpha,1)(xi,-xi-eta) weighted by 2^(k alpha) with |xi| ~ 2^k, |eta| ~ 1");
  finalize(report);
  return report;
}

}  // namespace sqg
