#include "wstar/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace wstar {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) config_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) config_error(std::string("'") + what + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error(std::string("'") + what + "' must be finite");
  return v;
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), key) : fallback;
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) config_error(std::string("'") + what + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& x : j) out.push_back(number(x, what));
  return out;
}

Window window_of(const json& j, const char* what) {
  const std::vector<double> v = numbers(j, what);
  if (v.size() != 2 || !(v[0] < v[1])) config_error(std::string("'") + what + "' must be [a, b] with a < b");
  return {v[0], v[1]};
}

int integer(const json& j, const char* what, int lo) {
  if (!j.is_number_integer()) config_error(std::string("'") + what + "' must be an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > 1000000) config_error(std::string("'") + what + "' out of range");
  return static_cast<int>(v);
}

FluxSpec parse_flux(const json& j) {
  if (!j.is_object()) config_error("'flux' must be an object");
  FluxSpec f;
  const json& name = require(j, "name");
  if (!name.is_string()) config_error("'flux.name' must be a string");
  f.name = name.get<std::string>();
  f.a = number_or(j, "a", f.a);
  f.K = number_or(j, "K", f.K);
  f.gamma = number_or(j, "gamma", f.gamma);
  if (j.contains("closed_form")) {
    if (!j.at("closed_form").is_boolean()) config_error("'flux.closed_form' must be a boolean");
    f.closed_form = j.at("closed_form").get<bool>();
  }
  if (f.name != "burgers" && f.name != "linear_advection" && f.name != "p_system") {
    config_error("unknown flux '" + f.name + "'");
  }
  if (f.name == "p_system" && (!(f.K > 0.0) || !(f.gamma >= 1.0))) config_error("p_system needs K > 0, gamma >= 1");
  return f;
}

ToleranceConfig parse_tolerances(const json& j) {
  if (!j.is_object()) config_error("'tolerances' must be an object");
  ToleranceConfig t;
  t.pairing = number_or(j, "pairing", t.pairing);
  t.fd_step = number_or(j, "fd_step", t.fd_step);
  t.quadrature = number_or(j, "quadrature", t.quadrature);
  t.rh = number_or(j, "rh", t.rh);
  t.entropy = number_or(j, "entropy", t.entropy);
  t.lax_margin = number_or(j, "lax_margin", t.lax_margin);
  t.distributional = number_or(j, "distributional", t.distributional);
  t.holder_stability = number_or(j, "holder_stability", t.holder_stability);
  if (j.contains("holder_samples")) t.holder_samples = integer(j.at("holder_samples"), "holder_samples", 2);
  try {
    t.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return t;
}

BVSpec parse_function(const json& j) {
  if (!j.is_object()) config_error("'function' must be an object");
  BVSpec f;
  f.window = window_of(require(j, "window"), "function.window");
  if (j.contains("breakpoints")) f.breakpoints = numbers(j.at("breakpoints"), "function.breakpoints");
  const json& pieces = require(j, "pieces");
  if (!pieces.is_array()) config_error("'function.pieces' must be an array");
  for (const json& p : pieces) f.pieces.push_back(numbers(p, "function.pieces"));
  if (j.contains("cantor")) {
    const json& c = j.at("cantor");
    if (!c.is_object()) config_error("'function.cantor' must be an object");
    f.cantor = CantorComponent{window_of(require(c, "carrier"), "cantor.carrier"), number(require(c, "amplitude"), "amplitude")};
  }
  return f;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json state_json(const State& s) { return json(s); }

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json flux_json(const FluxSpec& f) {
  json j{{"name", f.name}};
  if (f.name == "linear_advection") j["a"] = f.a;
  if (f.name == "p_system") {
    j["K"] = f.K;
    j["gamma"] = f.gamma;
    j["closed_form"] = f.closed_form;
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const FluxSpec& need_flux(const ScenarioConfig& c) {
  if (!c.flux) config_error("missing field 'flux'");
  if (c.left.empty()) config_error("missing field 'left'");
  if (c.right.empty()) config_error("missing field 'right'");
  return *c.flux;
}

std::vector<double> default_times(double horizon) {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back(horizon * (i + 0.5) / 10.0);
  return t;
}

}  // namespace

FluxPtr make_flux(const FluxSpec& spec) {
  if (spec.name == "burgers") return std::make_shared<Burgers>();
  if (spec.name == "linear_advection") return std::make_shared<LinearAdvection>(spec.a);
  if (spec.name == "p_system") return std::make_shared<PSystem>(spec.K, spec.gamma, spec.closed_form);
  config_error("unknown flux '" + spec.name + "'");
}

ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  const json& version = require(j, "schema_version");
  if (!version.is_number_integer() || version.get<long long>() != kSchemaVersion) {
    config_error("unsupported schema_version");
  }
  ScenarioConfig c;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) config_error("'label' must be a string");
    c.label = j.at("label").get<std::string>();
  }
  if (j.contains("function")) c.function = parse_function(j.at("function"));
  if (j.contains("flux")) c.flux = parse_flux(j.at("flux"));
  if (j.contains("left")) c.left = numbers(j.at("left"), "left");
  if (j.contains("right")) c.right = numbers(j.at("right"), "right");
  if (c.flux) {
    const std::size_t n = c.flux->name == "p_system" ? 2 : 1;
    if (c.left.size() != n || c.right.size() != n) config_error("states must have " + std::to_string(n) + " entries");
    if (n == 2 && !(c.left[0] > 0.0 && c.right[0] > 0.0)) config_error("p_system states need v > 0");
  }
  if (j.contains("window")) c.window = window_of(j.at("window"), "window");
  c.horizon = number_or(j, "horizon", c.horizon);
  if (!(c.horizon > 0.0)) config_error("'horizon' must be positive");
  if (j.contains("q")) {
    const json& q = j.at("q");
    if (q.is_string() && (q.get<std::string>() == "inf" || q.get<std::string>() == "infinity")) {
      c.q = std::numeric_limits<double>::infinity();
    } else {
      c.q = number(q, "q");
      if (!(c.q >= 1.0)) config_error("'q' must lie in [1, inf]");
    }
  }
  if (j.contains("solution")) {
    const json& s = j.at("solution");
    if (!s.is_object()) config_error("'solution' must be an object");
    const json& kind = require(s, "kind");
    const std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "riemann") {
      c.solution = SolutionKind::Riemann;
    } else if (k == "forced_jump") {
      c.solution = SolutionKind::ForcedJump;
      c.forced_speed = number(require(s, "speed"), "solution.speed");
    } else if (k == "frozen") {
      c.solution = SolutionKind::Frozen;
    } else {
      config_error("unknown solution kind");
    }
  }
  if (j.contains("test_family")) {
    const json& f = j.at("test_family");
    if (!f.is_object()) config_error("'test_family' must be an object");
    if (f.contains("count")) c.family_count = integer(f.at("count"), "test_family.count", 1);
    if (f.contains("seed")) {
      if (!f.at("seed").is_number_unsigned() && !f.at("seed").is_number_integer()) config_error("'seed' must be an integer");
      c.seed = f.at("seed").get<std::uint64_t>();
    }
  }
  if (j.contains("times")) {
    c.times = numbers(j.at("times"), "times");
    for (double t : c.times) {
      if (!(t > 0.0 && t < c.horizon)) config_error("'times' must lie in (0, horizon)");
    }
    std::sort(c.times.begin(), c.times.end());
  } else {
    c.times = default_times(c.horizon);
  }
  if (j.contains("tolerances")) c.tolerances = parse_tolerances(j.at("tolerances"));
  if (j.contains("checks")) {
    const json& checks = j.at("checks");
    if (!checks.is_array()) config_error("'checks' must be an array");
    for (const json& name : checks) {
      if (!name.is_string()) config_error("check names must be strings");
      const std::string s = name.get<std::string>();
      const auto& known = check_names();
      if (std::find(known.begin(), known.end(), s) == known.end()) config_error("unknown check '" + s + "'");
      c.checks.insert(s);
    }
  }
  if (j.contains("variation_bound")) c.variation_bound = number(j.at("variation_bound"), "variation_bound");
  if (j.contains("dominating_bound")) c.dominating_bound = number(j.at("dominating_bound"), "dominating_bound");
  if (j.contains("sample_times")) {
    c.sample_times = numbers(j.at("sample_times"), "sample_times");
    for (double t : c.sample_times) {
      if (!(t >= 0.0 && t <= c.horizon)) config_error("'sample_times' must lie in [0, horizon]");
    }
  } else {
    c.sample_times = {c.horizon};
  }
  if (j.contains("samples")) c.samples = integer(j.at("samples"), "samples", 2);
  if (j.contains("cheb_degree")) c.cheb_degree = integer(j.at("cheb_degree"), "cheb_degree", 1);
  if (c.cheb_degree > kMaxDegree) config_error("'cheb_degree' above 64");
  if (!c.function && !c.flux) config_error("config needs 'flux' or 'function'");
  return c;
}

RunResult run_riemann(const ScenarioConfig& c) {
  const FluxSpec& spec = need_flux(c);
  const FluxPtr flux = make_flux(spec);
  const RiemannSolution sol = riemann_solve(flux, c.left, c.right);
  json waves = json::array();
  for (const Wave& w : sol.waves()) {
    json jw{{"kind", to_string(w.kind)}, {"family", w.family + 1}, {"left", state_json(w.left)}, {"right", state_json(w.right)}};
    if (w.is_jump()) {
      jw["speed"] = w.speed;
    } else {
      jw["speed_interval"] = {w.speed_lo, w.speed_hi};
    }
    waves.push_back(std::move(jw));
  }
  json states = json::array();
  for (const State& s : sol.states()) states.push_back(state_json(s));
  json report{{"schema_version", kSchemaVersion},
              {"command", "riemann"},
              {"label", c.label},
              {"flux", flux_json(spec)},
              {"left", state_json(c.left)},
              {"right", state_json(c.right)},
              {"states", states},
              {"waves", waves}};
  return {{"riemann_report.json", dump(report)}, {}, true};
}

RunResult run_verify(const ScenarioConfig& c) {
  const FluxSpec& spec = need_flux(c);
  if (!c.window) config_error("missing field 'window'");
  const Window window = *c.window;
  const FluxPtr flux = make_flux(spec);

  std::optional<RiemannSolution> sol;
  if (c.solution == SolutionKind::Riemann) {
    sol = riemann_solve(flux, c.left, c.right);
  } else {
    sol = RiemannSolution::single_jump(flux, c.left, c.right, c.forced_speed.value_or(0.0));
  }
  const bool frozen = c.solution == SolutionKind::Frozen;
  Candidate cand{c.label,
                 flux,
                 frozen ? frozen_curve(*sol, window, c.horizon) : solution_curve(*sol, window, c.horizon, c.cheb_degree),
                 frozen ? std::nullopt : sol,
                 window,
                 seeded_family(window, c.family_count, c.seed),
                 c.times,
                 c.seed,
                 c.q,
                 c.variation_bound,
                 c.dominating_bound,
                 c.checks};
  const CertificationReport rep = certify(cand, c.tolerances);

  json records = json::array();
  for (const CheckRecord& r : rep.records) {
    json jr{{"name", r.name}, {"digest", r.digest}, {"residual", nullable(r.residual)}, {"tolerance", r.tolerance}, {"pass", r.pass}};
    if (!r.detail.empty()) jr["detail"] = r.detail;
    records.push_back(std::move(jr));
  }
  json family = json::array();
  for (const TestFunction& phi : cand.family) {
    const BumpSpec& s = phi.spec();
    family.push_back({{"center", s.center}, {"radius", s.radius}, {"plateau_half_width", s.plateau_half_width}});
  }
  const char* kind = c.solution == SolutionKind::Riemann ? "riemann" : c.solution == SolutionKind::ForcedJump ? "forced_jump" : "frozen";
  json report{{"schema_version", kSchemaVersion},
              {"command", "verify"},
              {"label", c.label},
              {"flux", flux_json(spec)},
              {"left", state_json(c.left)},
              {"right", state_json(c.right)},
              {"window", {window.a(), window.b()}},
              {"horizon", c.horizon},
              {"q", nullable(c.q)},
              {"solution", kind},
              {"seed", c.seed},
              {"test_family", family},
              {"times", c.times},
              {"overall_pass", rep.overall_pass},
              {"failing", rep.failing()},
              {"records", records}};

  const int n = flux->size();
  std::string csv = "t,x";
  for (int i = 1; i <= n; ++i) csv += ",u_" + std::to_string(i);
  csv += "\n";
  for (double t : c.sample_times) {
    for (int i = 0; i < c.samples; ++i) {
      const double x = window.a() + window.length() * i / (c.samples - 1);
      const State u = frozen ? sol->sample(x, 0.0) : sol->sample(x, t);
      csv += fmt(t) + "," + fmt(x);
      for (double v : u) csv += "," + fmt(v);
      csv += "\n";
    }
  }
  return {{"verify_report.json", dump(report)}, {{"solution_samples.csv", csv}}, rep.overall_pass};
}

RunResult run_decompose(const ScenarioConfig& c) {
  if (!c.function) config_error("missing field 'function'");
  const BVSpec& spec = *c.function;
  PiecewiseBV f = [&] {
    try {
      return PiecewiseBV::from_monomials(spec.window, spec.breakpoints, spec.pieces, spec.cantor);
    } catch (const Error& e) {
      config_error(e.what());
    }
  }();
  const BVDecomposition d = decompose(f);
  json jumps = json::array();
  for (const Atom& a : f.jumps()) jumps.push_back({{"x", a.x}, {"jump", a.weight}});
  const SignedMeasure df = dderiv(f);
  double singular = 0.0;
  for (const CantorPart& p : df.cantor_parts()) singular += p.mass;
  double atom_mass = 0.0;
  for (const Atom& a : df.atoms()) atom_mass += std::abs(a.weight);
  double ac_variation = 0.0;
  for (const ChebPoly& p : f.pieces()) ac_variation += p.variation();
  json report{{"schema_version", kSchemaVersion},
              {"command", "decompose"},
              {"label", c.label},
              {"window", {spec.window.a(), spec.window.b()}},
              {"tv", total_variation(f)},
              {"jumps", jumps},
              {"absolutely_continuous_variation", ac_variation},
              {"jump_variation", atom_mass},
              {"singular_mass", singular},
              {"tv_norm_of_derivative", tv_norm(df)}};

  std::string csv = "x,f,f_c,f_j,f_s\n";
  const Window& w = spec.window;
  for (int i = 0; i < c.samples; ++i) {
    const double x = w.a() + w.length() * i / (c.samples - 1);
    csv += fmt(x) + "," + fmt(f(x)) + "," + fmt(d.absolutely_continuous(x)) + "," + fmt(d.jump(x)) + "," +
           fmt(d.singular(x)) + "\n";
  }
  return {{"decompose_report.json", dump(report)}, {{"decompose_samples.csv", csv}}, true};
}

}  // namespace wstar
