// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wstar/verify.hpp"

using namespace wstar;
namespace fs = std::filesystem;

namespace {

FluxPtr burgers() { return std::make_shared<Burgers>(); }

const Window W(-2.0, 2.0);

std::vector<double> grid_times() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((i + 0.5) / 10);
  return t;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Scenario {
  std::string name;
  RiemannSolution sol;
  Window window;
};

std::vector<Scenario> scenarios() {
  return {{"burgers_shock", riemann_solve(burgers(), {1.0}, {0.0}), W},
          {"burgers_rarefaction", riemann_solve(burgers(), {0.0}, {1.0}), W},
          {"psystem_shock", riemann_solve(std::make_shared<PSystem>(1.0, 1.0), {1.0, 0.0}, {0.5, -std::sqrt(2.0) / 2}),
           Window(-3.0, 3.0)}};
}

Outcome c1() {
  const RiemannSolution s = riemann_solve(burgers(), {1.0}, {0.0});
  const bool one = s.waves().size() == 1 && s.waves()[0].kind == WaveKind::Shock;
  const double err = one ? std::abs(s.waves()[0].speed - 0.5) : 1.0;
  const bool lax = one && lax_check(s.waves()[0], s.flux()).pass;
  const RiemannSolution r = riemann_solve(burgers(), {0.0}, {1.0});
  bool no_shock = !r.waves().empty();
  for (const Wave& w : r.waves()) no_shock = no_shock && w.kind == WaveKind::Rarefaction;
  return {one && err <= 1e-12 && lax && no_shock,
          fmt("speed error %.3g, lax %g, reversed data rarefaction %g", err, lax, no_shock)};
}

Outcome c2() {
  double worst = 0.0;
  for (const Scenario& sc : scenarios()) {
    const MeasureCurve u = solution_curve(sc.sol, sc.window, 1.0);
    for (const TestFunction& phi : seeded_family(sc.window, 10, 42)) {
      const TestVector v(sc.sol.flux().size(), phi);
      for (double t : grid_times()) worst = std::max(worst, weakstar_residual(u, sc.sol.flux(), v, t));
    }
  }
  return {worst <= 1e-6, fmt("max weak* residual %.3g over 3 scenarios x 10 bumps x 10 times", worst)};
}

Outcome c3() {
  double worst = 0.0;
  for (const Scenario& sc : scenarios()) {
    const MeasureCurve u = solution_curve(sc.sol, sc.window, 1.0);
    for (const TestFunction& phi : seeded_family(sc.window, 10, 42)) {
      const TestVector v(sc.sol.flux().size(), phi);
      worst = std::max(worst, gelfand_form_residual(u, sc.sol.flux_ptr(), v, 0.05, 0.95));
    }
  }
  const TestVector peak{standard_bump(0.0, 0.5)};
  const double frozen = gelfand_form_residual(frozen_curve(scenarios()[0].sol, W, 1.0), burgers(), peak, 0.0, 1.0);
  const double gap = std::abs(frozen - 0.5 * peak[0](0.0));
  return {worst <= 1e-8 && gap <= 1e-8, fmt("max residual %.3g, frozen residual %.12g (gap %.3g)", worst, frozen, gap)};
}

Outcome c4() {
  const EntropyReport a = entropy_check(riemann_solve(burgers(), {1.0}, {0.0}), 1.0, W);
  const EntropyReport b = entropy_check(RiemannSolution::single_jump(burgers(), {0.0}, {1.0}, 0.5), 1.0, W);
  const bool ok = std::abs(a.max_atom + 1.0 / 12) <= 1e-10 && a.pass && std::abs(b.max_atom - 1.0 / 12) <= 1e-10 && !b.pass;
  return {ok, fmt("admissible atom %.15g, reversed atom %.15g", a.max_atom, b.max_atom)};
}

Outcome c5() {
  const Window unit(0.0, 1.0);
  const PiecewiseBV q = PiecewiseBV::from_monomials(unit, {}, {{0.0, -1.0, 1.0}});
  const double tv = total_variation(q);
  const double brute = support::partition_variation([&](double x) { return q(x); }, unit, 100000);
  const PiecewiseBV c(unit, {}, {ChebPoly::constant(unit, 0.0)}, CantorComponent{unit, 1.0});
  const SignedMeasure dc = dderiv(c);
  double mass = 0.0;
  for (const CantorPart& p : dc.cantor_parts()) mass += p.mass;
  const double first = pair(dc, poly_over(unit, 0.1, {0.0, 1.0}));
  const bool ok = std::abs(tv - 0.5) <= 1e-12 && std::abs(tv - brute) <= 1e-6 && dc.atoms().empty() && !dc.has_density() &&
                  std::abs(mass - 1.0) <= 1e-15 && std::abs(first - 0.5) <= 1e-6;
  return {ok, fmt("TV %.15g vs partition %.15g, Cantor mass %.3g", tv, brute, mass) + fmt(", int x dC = %.15g", first)};
}

Outcome c6() {
  const MeasureCurve psi(1.0, [](double t) { return MeasureVector({SignedMeasure::dirac(W, 0.0, t)}); },
                         [](double) { return MeasureVector({SignedMeasure::dirac(W, 0.0)}); });
  const TestCurve f{{[](double t) { return 1.0 - t; }, [](double) { return -1.0; }, {standard_bump(0.0, 0.5)}}};
  const IBPReport r = ibp_check(psi, f, 100);
  const bool ok = std::abs(r.lhs - 0.5) <= 1e-9 && std::abs(r.rhs - 0.5) <= 1e-9 && r.max_product_rule_residual <= 1e-6 &&
                  r.samples == 100;
  return {ok, fmt("lhs %.15g, rhs %.15g, product rule residual %.3g", r.lhs, r.rhs, r.max_product_rule_residual)};
}

Outcome c7() {
  const MeasureCurve u = solution_curve(riemann_solve(burgers(), {1.0}, {0.0}), W, 1.0);
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0}) worst = std::max(worst, std::abs(tv_function(u, t, 1e-8).value - t / 2));
  const MeasureCurve moving(1.0, [](double t) { return MeasureVector({SignedMeasure::dirac(W, t)}); });
  const bool flag = tv_function(moving, 1.0, 1e-8).divergence_flag;
  return {worst <= 1e-6 && flag, fmt("max |V(t) - t/2| %.3g, moving atom divergence flag %g", worst, flag)};
}

Outcome c8() {
  const MeasureCurve u = solution_curve(riemann_solve(burgers(), {1.0}, {0.0}), W, 1.0);
  const HolderReport h = holder_check(u, std::numeric_limits<double>::infinity());
  const bool g1 = variation_bound_check(u, [](double) { return 1.0; }, grid_times()).pass;
  const bool g05 = variation_bound_check(u, [](double) { return 0.5; }, grid_times()).pass;
  return {std::abs(h.constant - 0.5) <= 1e-6 && g1 && !g05,
          fmt("Lipschitz constant %.12g, g=1 pass %g, g=0.5 pass %g", h.constant, g1, g05)};
}

Outcome c9() {
  const TestFunction alpha = plateau_over(Window(-0.5, 1.5), 0.4);
  const TestFunction beta = plateau_over(Window(-0.25, 0.875), 0.25);
  const double exact = distributional_residual(riemann_solve(burgers(), {1.0}, {0.0}), alpha, beta);
  const double forced =
      distributional_residual(RiemannSolution::single_jump(burgers(), {1.0}, {0.0}, 0.6), alpha, beta);
  return {exact <= 1e-6 && std::abs(forced - 0.1) <= 1e-3, fmt("exact %.3g, speed 0.6 gives %.12g", exact, forced)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + WSTAR_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome c10() {
  const fs::path root = fs::temp_directory_path() / "wstar_acceptance";
  fs::remove_all(root);
  struct Expect {
    const char* config;
    int code;
  };
  const Expect cases[] = {{"burgers_shock.json", 0}, {"reversed_shock.json", 1}, {"frozen.json", 1}};
  bool identical = true, codes = true;
  for (const Expect& e : cases) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = root / (std::string(e.config) + std::to_string(run));
      fs::create_directories(out);
      const int code = run_cli(std::string("verify --seed 42 --config \"") + WSTAR_CONFIG_DIR + "/" + e.config +
                               "\" --out-dir \"" + out.string() + "\"");
      codes = codes && code == e.code;
      const std::string bytes = slurp(out / "verify_report.json") + slurp(out / "solution_samples.csv");
      if (run == 0) first = bytes;
      identical = identical && !bytes.empty() && bytes == first;
    }
  }
  fs::create_directories(root / "bad");
  std::ofstream(root / "bad" / "config.json") << R"({"schema_version": 1, "flux": {"name": "fooflux"}})";
  const int bad = run_cli("verify --config \"" + (root / "bad" / "config.json").string() + "\" --out-dir \"" +
                          (root / "bad").string() + "\"");
  codes = codes && bad == 2;
  fs::remove_all(root);
  return {identical && codes, fmt("byte-identical reports %g, exit codes 0/1/1 and config error %g", identical, bad)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"rankine_hugoniot_lax", c1},    {"weakstar_residual", c2}, {"gelfand_form", c3},
      {"entropy_measure", c4},         {"bv_calculus", c5},       {"integration_by_parts", c6},
      {"total_variation_function", c7}, {"growth_estimate", c8},  {"distributional_residual", c9},
      {"determinism_cli_contract", c10}};
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
