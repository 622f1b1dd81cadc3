// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// usage: sqg_acceptance [criterion number ...]   (no arguments runs all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sqg/bilinear.hpp"
#include "sqg/gevrey.hpp"
#include "sqg/solver.hpp"
#include "sqg/spectral.hpp"
#include "sqg/verification.hpp"

using namespace sqg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Verdict of a library check plus its key constant.
Outcome from_check(const std::string& id) {
  const InequalityReport r = run_check(default_check_config(id));
  Outcome o;
  o.pass = r.verdict == Verdict::pass;
  o.detail = to_string(r.verdict) + ", " + r.key_name + "=" + num(r.key_value);
  for (const Fit& f : r.fits)
    if (!f.pass) {
      o.detail += "; failed " + f.name + "=" + num(f.value) + " " + f.relation + " " + num(f.bound);
      break;
    }
  return o;
}

Outcome transforms() {
  double worst_trip = 0.0, worst_parseval = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g(n);
    for (unsigned trial = 0; trial < 100; ++trial) {
      const RealField f = oracle::random_real(g, 1000 * n + trial);
      const SpectralField F = forward_transform(f);
      const RealField back = inverse_transform(F);
      const double scale = kernels::max_abs(f.values());
      worst_trip = std::max(worst_trip, kernels::max_abs((back - f).values()) / scale);
      const double l2 = lp_norm(f, 2.0);
      worst_parseval = std::max(worst_parseval, std::abs(parseval_l2_norm(F) - l2) / l2);
    }
  }
  return {worst_trip <= 1e-12 && worst_parseval <= 1e-12,
          "round trip " + num(worst_trip) + ", Parseval " + num(worst_parseval)};
}

Outcome partition() {
  double worst = 0.0;
  for (int n : {64, 256}) {
    const DyadicSystem sys{Grid(n)};
    const double lo = std::ldexp(1.0, sys.j_min()), hi = std::ldexp(1.0, sys.j_max());
    for (std::size_t i = 0; i < sys.grid().size(); ++i) {
      const double r = sys.grid().wavenumber_norm(i);
      if (r < lo || r > hi) continue;
      double s = 0.0;
      for (int j = sys.j_min(); j <= sys.j_max(); ++j) s += sys.phi(j, r);
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  return {worst <= 1e-10, "max |sum phi_j - 1| = " + num(worst)};
}

Outcome bilinear() {
  // Duality over 50 random triples on a 16^2 grid.
  const Grid g(16);
  const BilinearSymbol m = make_symbol("kgtrj", {0.5, 0.5, 1.0, 2.0});
  const BilinearSymbol dual = rotation_dual(m), first = rotation_dual_first(m);
  double worst_dual = 0.0;
  for (unsigned t = 0; t < 50; ++t) {
    const SpectralField f = oracle::random_spectrum(g, 7000 + 3 * t);
    const SpectralField h = oracle::random_spectrum(g, 7001 + 3 * t);
    const SpectralField w = oracle::random_spectrum(g, 7002 + 3 * t);
    const Complex lhs = pairing(apply_bilinear(m, f, h), w);
    const double scale = std::max(std::abs(lhs), 1e-6 * parseval_l2_norm(f) * parseval_l2_norm(h) *
                                                     parseval_l2_norm(w));
    worst_dual = std::max(worst_dual, std::abs(lhs - pairing(apply_bilinear(dual, f, w), h)) / scale);
    worst_dual = std::max(worst_dual, std::abs(lhs - pairing(apply_bilinear(first, w, h), f)) / scale);
  }

  // Dilation: m_lambda on a box of length lambda L.
  const BilinearSymbol ks = make_symbol("ksimj", {0.5, 0.5, 2.0, 2.0});
  const double base = estimate_operator_norm(ks, g, 2.0, 4.0, 10, 11).estimate;
  double worst_dil = 0.0;
  for (double lam : {0.25, 4.0}) {
    const double e = estimate_operator_norm(dilate(ks, lam), Grid(16, lam * g.box_length()), 2.0, 4.0, 10, 11).estimate;
    worst_dil = std::max(worst_dil, std::abs(e / base - 1.0));
  }

  // Registered symbols, n = 16 against n = 32.
  struct Case {
    const char* id;
    std::vector<double> params;
  };
  const std::vector<Case> cases = {{"kgtrj", {0.5, 0.5, 1.0, 2.0}},
                                   {"ksimj", {0.5, 0.5, 2.0, 2.0}},
                                   {"mA", {1.0, 2.0, 2.0, 0.0, 0.5, 0.5, 0.5}},
                                   {"mB", {1.0, 2.0, 2.0, 0.0, 0.5, 0.5, 0.5}}};
  double worst_ratio = 1.0;
  std::string ratios;
  for (const Case& c : cases) {
    const BilinearSymbol s = make_symbol(c.id, c.params);
    const double a = estimate_operator_norm(s, Grid(16), 2.0, 4.0, 10, 5).estimate;
    const double b = estimate_operator_norm(s, Grid(32), 2.0, 4.0, 10, 5).estimate;
    const double ratio = (a > 0.0 && b > 0.0) ? std::max(a / b, b / a) : INFINITY;
    worst_ratio = std::max(worst_ratio, ratio);
    ratios += std::string(ratios.empty() ? "" : " ") + c.id + ":" + num(ratio);
  }
  return {worst_dual <= 1e-10 && worst_dil <= 0.1 && worst_ratio <= 2.0,
          "duality " + num(worst_dual) + ", dilation spread " + num(worst_dil) + ", n16/n32 ratios " + ratios};
}

Outcome solver() {
  SolverConfig c;
  c.grid = Grid(128);
  c.kappa = 0.8;

  // Heat limit: a single mode has no transport, tiny white data almost none.
  double heat_err = 0.0;
  for (const char* kind : {"mode", "white"}) {
    SolverConfig h = c;
    h.initial_data.kind = kind;
    h.initial_data.mode = 3;
    h.initial_data.amplitude = std::string(kind) == "mode" ? 1.0 : 1e-9;
    h.dt = 1e-2;
    h.t_end = 0.2;
    const SpectralField th0 = make_initial_data(h);
    for (const auto& s : solve(h).snapshots) {
      const SpectralField d = s.field - heat_semigroup(th0, s.t, h.kappa);
      heat_err = std::max(heat_err, d.max_abs() / th0.max_abs());
    }
  }

  // L2 growth per unit time on a nonlinear run.
  SolverConfig e = c;
  e.initial_data.kind = "vortex_pair";
  e.initial_data.amplitude = 1.0;
  e.dt = 2e-3;
  e.t_end = 0.5;
  e.record_every = 50;
  const Trajectory tr = solve(e);
  double growth = -INFINITY;
  for (std::size_t i = 1; i < tr.diagnostics.size(); ++i) {
    const auto& a = tr.diagnostics[i - 1];
    const auto& b = tr.diagnostics[i];
    growth = std::max(growth, (b.l2 - a.l2) / (b.t - a.t));
  }

  // Richardson order on a smooth run.
  SolverConfig r = c;
  r.initial_data.kind = "vortex_pair";
  r.initial_data.amplitude = 2.0;
  r.t_end = 0.2;
  r.record_every = 1000;
  auto final_state = [&](double dt) {
    SolverConfig x = r;
    x.dt = dt;
    return solve(x).snapshots.back().field;
  };
  const SpectralField a = final_state(0.02), b = final_state(0.01), d = final_state(0.005);
  const double order = std::log2(parseval_l2_norm(a - b) / parseval_l2_norm(b - d));

  return {heat_err <= 1e-10 && growth <= 1e-8 && std::abs(order - 2.0) <= 0.3,
          "heat-limit error " + num(heat_err) + ", max dL2/dt " + num(growth) + ", order " + num(order)};
}

struct Criterion {
  int number;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "transform round trip and Parseval", 10, transforms},
      {2, "partition of unity", 5, partition},
      {3, "Bernstein and generalized Bernstein", 120, [] { return from_check("bernstein"); }},
      {4, "positivity", 60, [] { return from_check("positivity"); }},
      {5, "heat kernel", 60, [] { return from_check("heat_kernel"); }},
      {6, "linear Gevrey", 60, [] { return from_check("lin_gevrey"); }},
      {7, "concavity", 30, [] { return from_check("concavity"); }},
      {8, "R symbol derivatives", 120, [] { return from_check("r_derivatives"); }},
      {9, "commutator decay", 300, [] { return from_check("commutator_decay"); }},
      {10, "bilinear multiplier", 600, bilinear},
      {11, "solver", 300, solver},
      {12, "Picard scheme and well-posedness", 900, [] { return from_check("wellposedness"); }},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s' (1..%zu)\n", argv[i], criteria.size());
      return 2;
    }
    selected.push_back(k);
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end())
      continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %s: %s [%.1f s of %.0f s%s]\n", c.number, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
