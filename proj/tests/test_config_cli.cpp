#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/cli.hpp"
#include "sqg/config.hpp"
#include "sqg/errors.hpp"
#include "sqg/gevrey.hpp"
#include "sqg/snapshot.hpp"

using namespace sqg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sqg_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

// quantity -> value from analysis.csv
std::map<std::string, double> read_quantities(const fs::path& p) {
  std::map<std::string, double> q;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "quantity,value") continue;
    const auto comma = line.find(',');
    q[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  return q;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cmd(Command c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const fs::path dir = scratch("empty");
  std::ofstream(dir / "run.cfg").close();
  const Config c = parse_config((dir / "run.cfg").string(), {}, {});
  for (const auto& k : config_keys()) CHECK(c.raw(k.key) == k.default_value);
  CHECK(c.integer("n") == 64);
  CHECK(c.real("kappa") == 0.8);
  CHECK(!c.is_set("verify.n"));
  const SolverConfig s = solver_config(c);
  CHECK(s.grid.n() == 64);
  CHECK(s.dealias == Dealias::two_thirds);
  fs::remove_all(dir);
}

TEST_CASE("precedence and echo") {
  const fs::path dir = scratch("prec");
  std::ofstream(dir / "run.cfg") << "# comment\n\nkappa = 0.5\nn=32  # trailing\ndt=0.002\n";
  const std::string path = (dir / "run.cfg").string();

  Config c = parse_config(path, {}, {});
  CHECK(c.real("kappa") == 0.5);
  CHECK(c.integer("n") == 32);

  c = parse_config(path, {}, {{"kappa", "0.6"}, {"verify.trials", "7"}});
  CHECK(c.real("kappa") == 0.6);
  CHECK(check_config(c, "bernstein").trials == 7);

  c = parse_config(path, {"kappa=0.8", "verify.p=2,4"}, {{"kappa", "0.6"}});
  CHECK(c.real("kappa") == 0.8);
  CHECK(c.echo().at("kappa") == "0.8");
  CHECK(check_config(c, "bernstein").p == std::vector<double>{2.0, 4.0});
  CHECK(c.echo().size() == config_keys().size());

  CHECK_THROWS_AS(parse_config((dir / "missing.cfg").string(), {}, {}), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("environment variables") {
  setenv("SQG_KAPPA", "0.7", 1);
  setenv("SQG_Verify_Trials", "9", 1);  // key part is case-insensitive
  auto env = environment_overrides();
  unsetenv("SQG_KAPPA");
  unsetenv("SQG_Verify_Trials");
  std::map<std::string, std::string> m(env.begin(), env.end());
  CHECK(m.at("kappa") == "0.7");
  CHECK(m.at("verify.trials") == "9");

  setenv("SQG_BOGUS", "1", 1);
  CHECK_THROWS_AS(environment_overrides(), ConfigError);
  unsetenv("SQG_BOGUS");
}

TEST_CASE("config errors name the problem") {
  Config c;
  const std::string malformed = error_of([&] { apply_config_text(c, "n=32\nkappa 0.5\n", "run.cfg"); });
  CHECK(malformed.find("run.cfg:2") != std::string::npos);

  const std::string unknown = error_of([&] { apply_config_text(c, "kapa=0.5\n", "run.cfg"); });
  CHECK(unknown.find("kapa") != std::string::npos);
  CHECK(unknown.find("kappa") != std::string::npos);  // listed among the valid keys
  CHECK(unknown.find("verify.trials") != std::string::npos);

  const std::string type = error_of([&] { c.set("n", "3.5"); });
  CHECK(type.find("integer") != std::string::npos);
  CHECK(error_of([&] { c.set("kappa", "fast"); }).find("number") != std::string::npos);
  CHECK(error_of([&] { c.set("verify.padding", "maybe"); }).find("boolean") != std::string::npos);
  CHECK(error_of([&] { c.set("verify.p", "2,x"); }).find("comma-separated") != std::string::npos);
  CHECK_THROWS_AS(parse_config(std::nullopt, {"kappa"}, {}), ConfigError);
  CHECK_THROWS_AS(solver_config(parse_config(std::nullopt, {"n=12"}, {})), ConfigError);
}

TEST_CASE("usage errors exit 2") {
  Command c;
  c.verb = "fly";
  CHECK(run_cmd(c).code == kExitUsage);
  c.verb = "verify";
  c.checks = {"nope"};
  c.output_dir = scratch("usage").string();
  const Result r = run_cmd(c);
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("concavity") != std::string::npos);
  c = Command{};
  c.verb = "simulate";
  c.overrides = {"kappa=abc"};
  CHECK(run_cmd(c).code == kExitUsage);
  c.overrides = {"kappa=3"};
  CHECK(run_cmd(c).code == kExitUsage);
  c = Command{};
  c.verb = "analyze";
  c.output_dir = scratch("usage2").string();
  CHECK(run_cmd(c).code == kExitUsage);  // no input
}

TEST_CASE("simulate with zero data") {
  const fs::path dir = scratch("zero");
  Command c;
  c.verb = "simulate";
  c.output_dir = dir.string();
  c.overrides = {"initial=zero", "n=16", "dt=0.01", "t_end=0.05", "record_every=1", "kappa=0.8"};
  const Result r = run_cmd(c);
  CHECK(r.code == kExitOk);
  const std::string csv = slurp(dir / "diagnostics.csv");
  CHECK(csv.find("# kappa=0.8\n") != std::string::npos);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    for (int k = 0; k < 4; ++k) {
      std::getline(fields, cell, ',');
      CHECK(std::stod(cell) == 0.0);
    }
  }
  CHECK(rows == 6);
  int snaps = 0;
  for (const auto& e : fs::directory_iterator(dir / "snapshots")) {
    ++snaps;
    const Snapshot s = read_snapshot(e.path().string());
    CHECK(s.field.max_abs() == 0.0);
    CHECK(s.metadata.at("kappa") == "0.8");
  }
  CHECK(snaps == 6);
  fs::remove_all(dir);
}

TEST_CASE("simulate reports blow-up with exit 3") {
  const fs::path dir = scratch("blowup");
  Command c;
  c.verb = "simulate";
  c.output_dir = dir.string();
  c.overrides = {"n=32", "amplitude=1e6", "dt=1", "t_end=200", "kappa=0.1"};
  const Result r = run_cmd(c);
  CHECK(r.code == kExitBlowUp);
  CHECK(fs::exists(dir / "last_snapshot.snap"));
  fs::remove_all(dir);
}

TEST_CASE("analyze recovers the heat-flow radius") {
  const fs::path dir = scratch("analyze");
  const Grid g(128);
  std::vector<Complex> w(g.size());
  const SpectralField rnd = oracle::random_spectrum(g, 4);
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::abs(rnd[i]) > 0.0 ? rnd[i] / std::abs(rnd[i]) : 0.0;
  const double t = 0.1, kappa = 0.8;
  write_snapshot((dir / "heat.snap").string(), heat_semigroup(SpectralField(g, w), t, kappa), t);

  Command c;
  c.verb = "analyze";
  c.output_dir = (dir / "out").string();
  c.overrides = {"input=" + (dir / "heat.snap").string(), "alpha=0.8", "kappa=0.8"};
  const Result r = run_cmd(c);
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  const auto q = read_quantities(dir / "out" / "analysis.csv");
  CHECK(q.at("time") == doctest::Approx(t));
  CHECK(q.at("radius_estimate") == doctest::Approx(t).epsilon(0.02));
  CHECK(q.at("radius_low_signal") == 0.0);
  CHECK(fs::exists(dir / "out" / "besov.csv"));
  fs::remove_all(dir);
}

TEST_CASE("picard writes iterates and a convergence table") {
  const fs::path dir = scratch("picard");
  Command c;
  c.verb = "picard";
  c.output_dir = dir.string();
  c.overrides = {"n=16", "dt=0.01", "t_end=0.05", "picard_depth=2"};
  REQUIRE(run_cmd(c).code == kExitOk);
  for (int n = 0; n <= 2; ++n) CHECK(fs::is_directory(dir / ("iterate_" + std::to_string(n))));
  CHECK(slurp(dir / "convergence.csv").find("n,gap_to_next,ratio_to_previous_gap,xt_norm\n") !=
        std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("verify concavity prints a summary row") {
  const fs::path dir = scratch("verify");
  Command c;
  c.verb = "verify";
  c.output_dir = dir.string();
  c.checks = {"concavity"};
  c.overrides = {"kappa=0.8"};
  const Result r = run_cmd(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("concavity, pass, eps≈") != std::string::npos);
  CHECK(slurp(dir / "concavity.json").find("\"kappa\": \"0.8\"") != std::string::npos);
  CHECK(slurp(dir / "summary.csv").find("\nconcavity,pass,") != std::string::npos);

  c.overrides = {"verify.slope_slack=-5", "verify.trials=3", "verify.n=64", "verify.j_hi=4"};
  c.checks = {"bernstein"};
  CHECK(run_cmd(c).code == kExitCheckFailed);
  fs::remove_all(dir);
}

TEST_CASE("symbols verb") {
  const fs::path dir = scratch("symbols");
  Command c;
  c.verb = "symbols";
  c.output_dir = dir.string();
  Result r = run_cmd(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("riesz-pair") != std::string::npos);
  c.overrides = {"symbol=riesz-pair", "symbol_params=1,2", "n=16", "symbol_trials=3"};
  r = run_cmd(c);
  CHECK(r.code == kExitOk);
  CHECK(slurp(dir / "symbol.csv").find("beta_xi1,beta_xi2,beta_eta1,beta_eta2,max_weighted,non_finite\n") !=
        std::string::npos);
  c.overrides = {"symbol=hilbert"};
  CHECK(run_cmd(c).code == kExitUsage);
  fs::remove_all(dir);
}
