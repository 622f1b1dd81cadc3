#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/errors.hpp"
#include "sqg/solver.hpp"
#include "sqg/spectral.hpp"

using namespace sqg;

namespace {

double max_diff(const SpectralField& a, const SpectralField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

SolverConfig small_config(int n = 32) {
  SolverConfig c;
  c.grid = Grid(n);
  c.dt = 0.01;
  c.t_end = 0.1;
  c.record_every = 2;
  return c;
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c = small_config();
  CHECK_NOTHROW(validate(c));
  c.dt = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small_config();
  c.t_end = 0.001;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small_config();
  c.kappa = 2.5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small_config();
  c.record_every = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK(parse_dealias("none") == Dealias::none);
  CHECK(parse_dealias("two-thirds") == Dealias::two_thirds);
  CHECK(to_string(Dealias::two_thirds) == "two-thirds");
  CHECK_THROWS_AS(parse_dealias("half"), ConfigError);
}

TEST_CASE("initial data kinds") {
  SolverConfig c = small_config();
  for (const char* kind : {"zero", "mode", "vortex_pair", "ring", "white", "random_besov"}) {
    c.initial_data.kind = kind;
    const SpectralField th = make_initial_data(c);
    CHECK(std::abs(th.mean()) < 1e-15);
    CHECK(th.hermitian_defect() < 1e-12);
    for (std::size_t i = 0; i < c.grid.size(); ++i)
      if (!c.grid.inside_two_thirds(i)) CHECK(th[i] == Complex{});
  }
  c.initial_data.kind = "white";
  c.initial_data.amplitude = 0.37;
  const DyadicSystem sys(c.grid);
  CHECK(besov_norm(sys, make_initial_data(c), {c.sigma(), c.p, c.q}) == doctest::Approx(0.37).epsilon(1e-12));
  c.initial_data.kind = "spiral";
  CHECK_THROWS_AS(make_initial_data(c), ConfigError);
  c.initial_data.kind = "snapshot";
  CHECK_THROWS_AS(make_initial_data(c), ConfigError);
}

TEST_CASE("nonlinear term vanishes for zero and for cos(x1)") {
  const Grid g(32);
  CHECK(nonlinear_term(SpectralField(g), Dealias::two_thirds).max_abs() == 0.0);
  const SpectralField c = forward_transform(sample(g, [](double x, double) { return std::cos(x); }));
  CHECK(nonlinear_term(c, Dealias::two_thirds).max_abs() < 1e-15);
}

TEST_CASE("transport term is orthogonal to theta") {
  const Grid g(64);
  const SpectralField th = oracle::random_spectrum(g, 5, g.n() / 3.0 - 1.0);
  const SpectralField nl = nonlinear_term(th, Dealias::two_thirds);
  const double scale = std::pow(parseval_l2_norm(th), 3) * g.nyquist();
  CHECK(std::abs(pairing(th, nl)) < 1e-10 * scale);
  CHECK(nl.mean() == Complex{});
}

TEST_CASE("linear flow steps are exact") {
  const SolverConfig c = small_config();
  const SpectralField th = forward_transform(sample(c.grid, [](double x, double) { return std::cos(x); }));
  CHECK(max_diff(step(th, 0.05, c), heat_semigroup(th, 0.05, c.kappa)) < 1e-12);
  CHECK_THROWS_AS(step(th, 0.0, c), DomainError);

  SolverConfig m = c;
  m.initial_data.kind = "mode";
  m.initial_data.mode = 2;
  const Trajectory tr = solve(m);
  const SpectralField th0 = make_initial_data(m);
  for (const auto& s : tr.snapshots) CHECK(max_diff(s.field, heat_semigroup(th0, s.t, m.kappa)) < 1e-10);
}

TEST_CASE("trajectory bookkeeping") {
  SolverConfig c = small_config();
  c.t_end = 0.105;  // final partial step
  const Trajectory tr = solve(c);
  CHECK(tr.diagnostics.size() == 12);
  CHECK(tr.diagnostics.back().t == doctest::Approx(0.105));
  CHECK(tr.snapshots.back().t == doctest::Approx(0.105));
  for (std::size_t i = 1; i < tr.snapshots.size(); ++i) CHECK(tr.snapshots[i].t > tr.snapshots[i - 1].t);
  for (const auto& s : tr.snapshots) CHECK(std::abs(s.field.mean()) < 1e-12);
  CHECK(!tr.warnings.empty());
  std::ostringstream csv;
  write_diagnostics_csv(csv, tr);
  CHECK(csv.str().rfind("t,l2,lp,besov,radius\n", 0) == 0);
}

TEST_CASE("zero data stays zero") {
  SolverConfig c = small_config();
  c.initial_data.kind = "zero";
  const Trajectory tr = solve(c);
  for (const auto& d : tr.diagnostics) {
    CHECK(d.l2 == 0.0);
    CHECK(d.besov == 0.0);
  }
}

TEST_CASE("L2 norm does not increase for small smooth data") {
  SolverConfig c = small_config(64);
  c.initial_data.kind = "vortex_pair";
  c.initial_data.amplitude = 0.5;
  c.dt = 0.005;
  c.t_end = 0.3;
  const Trajectory tr = solve(c);
  for (std::size_t i = 1; i < tr.diagnostics.size(); ++i) {
    const double dt = tr.diagnostics[i].t - tr.diagnostics[i - 1].t;
    CHECK(tr.diagnostics[i].l2 <= tr.diagnostics[i - 1].l2 + 1e-8 * dt);
  }
}

TEST_CASE("second order in time") {
  SolverConfig c = small_config(32);
  c.initial_data.kind = "vortex_pair";
  c.initial_data.amplitude = 2.0;
  c.t_end = 0.2;
  auto final_state = [&](double dt) {
    SolverConfig r = c;
    r.dt = dt;
    return solve(r).snapshots.back().field;
  };
  const SpectralField a = final_state(0.02), b = final_state(0.01), d = final_state(0.005);
  const double order = std::log2(parseval_l2_norm(a - b) / parseval_l2_norm(b - d));
  CHECK(order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("huge time steps are flagged") {
  SolverConfig c = small_config(32);
  c.initial_data.kind = "vortex_pair";
  c.initial_data.amplitude = 50.0;
  c.dt = 0.5;
  c.t_end = 20.0;
  c.kappa = 0.2;
  bool flagged = false;
  try {
    const Trajectory tr = solve(c);
    for (const auto& w : tr.warnings) flagged = flagged || w.find("stability advisory") != std::string::npos;
  } catch (const BlowUpError& e) {
    flagged = true;
    CHECK(e.last_snapshot().has_value());
    for (const auto& w : e.warnings()) CHECK(!w.empty());
  }
  CHECK(flagged);
}

TEST_CASE("picard iterates") {
  SolverConfig c = small_config(32);
  c.initial_data.kind = "vortex_pair";
  c.initial_data.amplitude = 1.0;
  c.picard_depth = 0;
  const auto heat = picard_solve(c);
  REQUIRE(heat.size() == 1);
  const SpectralField th0 = make_initial_data(c);
  for (const auto& s : heat[0].snapshots) CHECK(max_diff(s.field, heat_semigroup(th0, s.t, c.kappa)) < 1e-13);

  c.picard_depth = 4;
  const auto it = picard_solve(c);
  REQUIRE(it.size() == 5);
  const DyadicSystem sys(c.grid);
  const auto gaps = picard_gaps(it, sys, {c.sigma(), c.p, c.q});
  REQUIRE(gaps.size() == 4);
  for (std::size_t n = 1; n < gaps.size(); ++n) CHECK(gaps[n] < gaps[n - 1]);

  const Trajectory full = solve(c);
  const SpectralField diff = it.back().snapshots.back().field - full.snapshots.back().field;
  const SpectralField gap = it[2].snapshots.back().field - it[1].snapshots.back().field;
  CHECK(parseval_l2_norm(diff) < parseval_l2_norm(gap));
}
