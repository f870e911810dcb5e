#include "geokin/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "geokin/error.hpp"
#include "geokin/identities.hpp"
#include "geokin/kinetics.hpp"
#include "geokin/random.hpp"

namespace geokin {

using nlohmann::json;

std::string to_string(Task task) {
  switch (task) {
    case Task::Simulate: return "simulate";
    case Task::IdentityCheck: return "identity-check";
    case Task::KineticParticle: return "kinetic-particle";
    case Task::KineticGrid: return "kinetic-grid";
    case Task::MomentumCheck: return "momentum-check";
  }
  return "?";
}

Task task_from_string(std::string_view name) {
  for (Task t : {Task::Simulate, Task::IdentityCheck, Task::KineticParticle, Task::KineticGrid,
                 Task::MomentumCheck}) {
    if (name == to_string(t)) return t;
  }
  throw ConfigError("unknown task '" + std::string(name) +
                    "' (expected simulate, identity-check, kinetic-particle, kinetic-grid or "
                    "momentum-check)");
}

namespace {

// A json node together with its path, for error messages.
struct Node {
  const json& value;
  std::string path;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config " + (path.empty() ? std::string("/") : path) + ": " + msg);
  }

  bool has(const char* key) const { return value.is_object() && value.contains(key); }

  Node at(const char* key) const {
    if (!has(key)) fail(std::string("missing required key '") + key + "'");
    return Node{value.at(key), path + "/" + key};
  }

  Node at(std::size_t i) const { return Node{value.at(i), path + "/" + std::to_string(i)}; }

  std::optional<Node> find(const char* key) const {
    if (!has(key)) return std::nullopt;
    return Node{value.at(key), path + "/" + key};
  }

  std::string str() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }

  double num() const {
    if (!value.is_number()) fail("expected a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  double positive() const {
    const double v = num();
    if (!(v > 0.0)) fail("expected a positive number");
    return v;
  }

  std::uint64_t uint() const {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<long long>() >= 0) {
      return static_cast<std::uint64_t>(value.get<long long>());
    }
    fail("expected a non-negative integer");
  }

  std::vector<double> nums() const {
    if (!value.is_array()) fail("expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(at(i).num());
    return out;
  }

  const json& array() const {
    if (!value.is_array()) fail("expected an array");
    return value;
  }
};

// Replaces whole-word parameter names by their parenthesized values.
std::string substitute(const std::string& text, const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out = text;
  for (const auto& [name, value] : params) {
    out = std::regex_replace(out, std::regex("\\b" + name + "\\b"), "(" + value + ")");
  }
  return out;
}

std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ExpressionContext {
  const Chart& chart;
  std::vector<std::pair<std::string, std::string>> params;

  Poly parse(const Node& node) const {
    const std::string raw = node.str();
    const std::string text = substitute(raw, params);
    try {
      return chart.parse(text);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (text != raw) msg += " in '" + text + "' after parameter substitution";
      node.fail(msg);
    }
  }
};

ExpressionContext expression_context(const Chart& chart, const Node& root) {
  ExpressionContext ctx{chart, {}};
  if (auto params = root.find("parameters")) {
    if (!params->value.is_object()) params->fail("expected an object of name: value");
    for (const auto& [name, value] : params->value.items()) {
      Node p{value, params->path + "/" + name};
      if (!std::regex_match(name, std::regex("[A-Za-z_][A-Za-z0-9_]*"))) p.fail("bad parameter name");
      for (const auto& v : chart.variable_names()) {
        if (v == name) p.fail("parameter '" + name + "' shadows a chart variable");
      }
      if (value.is_string()) {
        ctx.params.emplace_back(name, value.get<std::string>());
      } else {
        ctx.params.emplace_back(name, number_text(p.num()));
      }
    }
  }
  return ctx;
}

Chart parse_chart(const Node& node) {
  const std::string kind = node.at("kind").str();
  const Node n = node.at("n");
  if (!n.value.is_number_integer() || n.value.get<long long>() < 1) n.fail("expected an integer >= 1");
  try {
    return Chart(chart_kind_from_string(kind), static_cast<int>(n.value.get<long long>()));
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

IntegratorConfig parse_integrator(const Node& root) {
  IntegratorConfig c;
  if (auto v = root.find("dt")) c.step = v->positive();
  if (auto v = root.find("method")) {
    try {
      c.method = integrator_from_string(v->str());
    } catch (const Error& e) {
      v->fail(e.what());
    }
  }
  if (auto v = root.find("rel_tol")) c.rel_tol = v->positive();
  if (auto v = root.find("abs_tol")) c.abs_tol = v->positive();
  return c;
}

std::vector<Axis> parse_axes(const Chart& chart, const Node& grid) {
  const Node axes = grid.at("axes");
  const std::size_t expected = chart.dim() - (chart.has_time() ? 1 : 0);
  if (axes.array().size() != expected) {
    axes.fail("expected " + std::to_string(expected) + " axes (every coordinate except t)");
  }
  std::vector<Axis> out;
  for (std::size_t i = 0; i < expected; ++i) {
    const Node a = axes.at(i);
    Axis ax;
    ax.lo = a.at("lo").num();
    ax.hi = a.at("hi").num();
    if (!(ax.hi > ax.lo)) a.fail("hi must exceed lo");
    const Node size = a.at("size");
    if (!size.value.is_number_integer() || size.value.get<long long>() < 1) {
      size.fail("expected an integer >= 1");
    }
    ax.size = size.value.get<std::size_t>();
    if (auto b = a.find("boundary")) {
      try {
        ax.boundary = boundary_from_string(b->str());
      } catch (const Error& e) {
        b->fail(e.what());
      }
    }
    out.push_back(ax);
  }
  return out;
}

DensitySpec parse_density(const ExpressionContext& ctx, std::size_t axis_count, const Node& node) {
  DensitySpec d;
  const std::string type = node.at("type").str();
  if (type == "gaussian") {
    d.type = DensityType::Gaussian;
    d.center = node.at("center").nums();
    if (d.center.size() != axis_count) {
      node.at("center").fail("expected " + std::to_string(axis_count) + " entries");
    }
    const Node sigma = node.at("sigma");
    if (sigma.value.is_number()) {
      d.sigma.assign(axis_count, sigma.positive());
    } else {
      d.sigma = sigma.nums();
      if (d.sigma.size() != axis_count) sigma.fail("expected " + std::to_string(axis_count) + " entries");
      for (std::size_t i = 0; i < axis_count; ++i) sigma.at(i).positive();
    }
    if (auto a = node.find("amplitude")) d.amplitude = a->num();
  } else if (type == "expression") {
    d.type = DensityType::Expression;
    d.expression = ctx.parse(node.at("expr"));
  } else {
    node.at("type").fail("unknown density type '" + type + "' (expected gaussian or expression)");
  }
  return d;
}

OneFormExpr parse_momentum(const ExpressionContext& ctx, const Node& node) {
  const Chart& chart = ctx.chart;
  if (node.array().size() != chart.dim()) {
    node.fail("expected " + std::to_string(chart.dim()) + " one-form components");
  }
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < chart.dim(); ++i) comps.push_back(ctx.parse(node.at(i)));
  return OneFormExpr(chart, comps);
}

std::string default_output(Task task) {
  switch (task) {
    case Task::Simulate: return "trajectory.csv";
    case Task::IdentityCheck: return "identity_report.json";
    case Task::MomentumCheck: return "momentum_report.json";
    case Task::KineticParticle: return "kinetic_particle";
    case Task::KineticGrid: return "kinetic_grid";
  }
  return "out";
}

}  // namespace

ScenarioConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  const Node root{doc, ""};
  if (!doc.is_object()) root.fail("expected a JSON object");
  ScenarioConfig c;
  c.base_dir = base_dir;
  {
    const Node task = root.at("task");
    try {
      c.task = task_from_string(task.str());
    } catch (const ConfigError& e) {
      task.fail(e.what());
    }
  }
  c.chart = parse_chart(root.at("chart"));
  if (auto s = root.find("seed")) c.seed = s->uint();
  c.output = root.has("output") ? root.at("output").str() : default_output(c.task);

  const ExpressionContext ctx = expression_context(c.chart, root);
  const bool needs_h = c.task == Task::Simulate || c.task == Task::KineticParticle ||
                       c.task == Task::KineticGrid;
  if (needs_h || root.has("hamiltonian")) c.hamiltonian = ctx.parse(root.at("hamiltonian"));

  c.field = FieldSpec{c.chart};
  if (auto f = root.find("field")) {
    try {
      if (auto fam = f->find("family")) c.field.family = field_family_from_string(fam->str());
      if (auto g = f->find("gauge")) c.field.gauge = gauge_from_string(g->str());
      c.field.validate();
    } catch (const Error& e) {
      f->fail(e.what());
    }
  }

  if (auto s = root.find("samples")) {
    const std::uint64_t v = s->uint();
    if (v < 1 || v > 1'000'000) s->fail("expected an integer in [1, 1000000]");
    c.samples = static_cast<int>(v);
  } else if (c.task == Task::MomentumCheck) {
    c.samples = 50;
  }

  switch (c.task) {
    case Task::Simulate: {
      const Node x0 = root.at("initial_point");
      c.initial_point = x0.nums();
      if (c.initial_point.size() != c.chart.dim()) {
        x0.fail("expected " + std::to_string(c.chart.dim()) + " coordinates (" +
                [&] {
                  std::string s;
                  for (const auto& v : c.chart.variable_names()) s += (s.empty() ? "" : ",") + v;
                  return s;
                }() +
                ")");
      }
      if (auto t = root.find("t_start")) c.t_start = t->num();
      c.t_final = root.at("t_final").num();
      if (!(c.t_final > c.t_start)) root.at("t_final").fail("t_final must exceed t_start");
      c.integrator = parse_integrator(root);
      if (c.field.family == FieldFamily::Strict && c.chart.has_action() &&
          c.hamiltonian->depends_on(c.chart.z_index())) {
        root.at("hamiltonian").fail("strict fields need a Hamiltonian independent of z");
      }
      break;
    }
    case Task::KineticParticle:
    case Task::KineticGrid: {
      const Node grid = root.at("grid");
      c.axes = parse_axes(c.chart, grid);
      if (auto t = grid.find("time")) c.grid_time = t->num();
      c.density = parse_density(ctx, c.axes.size(), root.at("density"));
      c.kinetic.t_final = root.at("t_final").positive();
      c.kinetic.dt = root.at("dt").positive();
      if (auto s = root.find("snapshots")) {
        c.kinetic.snapshots = s->nums();
        for (std::size_t i = 0; i < c.kinetic.snapshots.size(); ++i) {
          const double v = c.kinetic.snapshots[i];
          if (!(v > 0.0 && v <= c.kinetic.t_final)) s->at(i).fail("snapshot times must lie in (0, t_final]");
        }
      }
      if (auto p = root.find("particles")) {
        const std::uint64_t v = p->uint();
        if (v < 1) p->fail("expected at least one particle");
        c.kinetic.particle_count = v;
      }
      if (auto s = root.find("seeding")) {
        const std::string v = s->str();
        if (v == "lattice") {
          c.kinetic.seeding = Seeding::Lattice;
        } else if (v == "random") {
          c.kinetic.seeding = Seeding::Random;
        } else {
          s->fail("unknown seeding '" + v + "' (expected lattice or random)");
        }
      }
      if (auto m = root.find("max_courant")) c.kinetic.max_courant = m->positive();
      c.kinetic.seed = c.seed;
      break;
    }
    case Task::MomentumCheck:
      if (auto m = root.find("momentum")) c.momentum = parse_momentum(ctx, *m);
      break;
    case Task::IdentityCheck:
      break;
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::string& task_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config '" + path.string() + "' is not valid JSON: " + e.what(), e.byte);
  }
  if (!task_override.empty() && doc.is_object()) doc["task"] = task_override;
  ScenarioConfig c = parse_config(doc, path.parent_path());
  std::filesystem::path out(c.output);
  if (!out.is_absolute()) out = c.base_dir / out;
  std::error_code ec;
  if (std::filesystem::equivalent(out, path, ec)) {
    throw ConfigError("config /output: '" + c.output + "' would overwrite the config file");
  }
  return c;
}

json describe(const ScenarioConfig& c) {
  json out;
  out["task"] = to_string(c.task);
  out["chart"] = {{"kind", to_string(c.chart.kind())}, {"n", c.chart.n()}};
  out["seed"] = c.seed;
  out["output"] = c.output;
  if (c.hamiltonian) out["hamiltonian"] = c.chart.print(*c.hamiltonian);
  out["field"] = {{"family", to_string(c.field.family)}, {"gauge", to_string(c.field.gauge)}};
  switch (c.task) {
    case Task::Simulate:
      out["initial_point"] = c.initial_point;
      out["t_start"] = c.t_start;
      out["t_final"] = c.t_final;
      out["dt"] = c.integrator.step;
      out["method"] = to_string(c.integrator.method);
      if (c.integrator.method == Integrator::RK45) {
        out["rel_tol"] = c.integrator.rel_tol;
        out["abs_tol"] = c.integrator.abs_tol;
      }
      break;
    case Task::KineticParticle:
    case Task::KineticGrid: {
      json axes = json::array();
      const auto& names = c.chart.variable_names();
      std::size_t k = 0;
      for (std::size_t i = 0; i < c.chart.dim(); ++i) {
        if (c.chart.has_time() && i == c.chart.t_index()) continue;
        const Axis& a = c.axes[k++];
        axes.push_back({{"coordinate", names[i]},
                        {"lo", a.lo},
                        {"hi", a.hi},
                        {"size", a.size},
                        {"boundary", to_string(a.boundary)}});
      }
      out["grid"] = {{"axes", axes}, {"time", c.grid_time}};
      if (c.density.type == DensityType::Gaussian) {
        out["density"] = {{"type", "gaussian"},
                          {"center", c.density.center},
                          {"sigma", c.density.sigma},
                          {"amplitude", c.density.amplitude}};
      } else {
        out["density"] = {{"type", "expression"}, {"expr", c.chart.print(*c.density.expression)}};
      }
      out["t_final"] = c.kinetic.t_final;
      out["dt"] = c.kinetic.dt;
      out["snapshots"] = c.kinetic.snapshots;
      if (c.task == Task::KineticParticle) {
        out["particles"] = c.kinetic.particle_count;
        out["seeding"] = c.kinetic.seeding == Seeding::Lattice ? "lattice" : "random";
      }
      break;
    }
    case Task::MomentumCheck:
      out["samples"] = c.samples;
      if (c.momentum) {
        json comps = json::array();
        for (const auto& p : c.momentum->components()) comps.push_back(c.chart.print(p));
        out["momentum"] = comps;
      }
      break;
    case Task::IdentityCheck:
      out["samples"] = c.samples;
      break;
  }
  return out;
}

DensityFunction make_density(const ScenarioConfig& c) {
  if (c.density.type == DensityType::Expression) {
    // Expression densities see the full chart state, with t fixed at the
    // grid time.
    auto compiled = std::make_shared<CompiledPoly>(*c.density.expression);
    const Chart chart = c.chart;
    const double t = c.grid_time;
    return [compiled, chart, t](std::span<const double> x) {
      std::vector<double> full(chart.dim());
      std::size_t k = 0;
      for (std::size_t i = 0; i < chart.dim(); ++i) {
        full[i] = (chart.has_time() && i == chart.t_index()) ? t : x[k++];
      }
      return (*compiled)(full);
    };
  }
  std::vector<std::size_t> active;
  double norm = c.density.amplitude;
  for (std::size_t a = 0; a < c.axes.size(); ++a) {
    if (!c.axes[a].active()) continue;
    active.push_back(a);
    norm /= std::sqrt(2.0 * std::numbers::pi) * c.density.sigma[a];
  }
  const std::vector<double> center = c.density.center;
  const std::vector<double> sigma = c.density.sigma;
  return [active, norm, center, sigma](std::span<const double> x) {
    double e = 0.0;
    for (std::size_t a : active) {
      const double u = (x[a] - center[a]) / sigma[a];
      e += u * u;
    }
    return norm * std::exp(-0.5 * e);
  };
}

namespace {

std::filesystem::path resolve(const ScenarioConfig& c, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : c.base_dir / path;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

RunOutcome run_simulate(const ScenarioConfig& c) {
  const Trajectory traj =
      integrate(c.field, *c.hamiltonian, c.initial_point, c.t_start, c.t_final, c.integrator);
  RunOutcome r;
  const auto path = resolve(c, c.output);
  {
    auto out = open_output(path);
    write_csv(out, traj);
  }
  r.artifacts.push_back(path);
  r.summary = {{"task", "simulate"},
               {"samples", traj.size()},
               {"final_state", traj.states.back()},
               {"energy_rate_residual", traj.size() >= 3 ? monitored_energy_rate(traj) : 0.0},
               {"output", path.string()}};
  return r;
}

RunOutcome run_identity(const ScenarioConfig& c) {
  const json report = identity_report_json(c.chart, c.seed, c.samples);
  const auto path = resolve(c, c.output);
  write_json(path, report);
  RunOutcome r;
  r.passed = report.at("status") == "PASS";
  r.artifacts.push_back(path);
  r.summary = {{"task", "identity-check"},
               {"status", report.at("status")},
               {"laws", report.at("laws").size()},
               {"field_rows", report.at("field_rows").size()},
               {"output", path.string()}};
  return r;
}

RunOutcome run_momentum(const ScenarioConfig& c) {
  const DensityCoefficients k = density_coefficients(c.chart);
  json report;
  report["chart"] = {{"kind", to_string(c.chart.kind())}, {"n", c.chart.n()}};
  report["seed"] = c.seed;
  report["coefficients"] = {{"a", k.a.get_str()}, {"b", k.b.get_str()}, {"c", k.c.get_str()}};

  std::string residual = "0";
  int cases = 0;
  auto check = [&](const Poly& h, const OneFormExpr& pi) {
    ++cases;
    const Poly res = intertwine_residual(c.chart, h, pi);
    if (!res.is_zero() && residual == "0") {
      residual = c.chart.print(res);
      report["witness"] = {{"hamiltonian", c.chart.print(h)}, {"momentum", to_string(pi)}};
    }
  };
  if (c.momentum && c.hamiltonian) {
    check(*c.hamiltonian, *c.momentum);
  } else {
    // Whatever the config leaves open is drawn from the seeded corpus.
    PolyGenerator gen(c.seed);
    PolyGenerator::Options opts;
    opts.max_degree = 2;
    for (int i = 0; i < c.samples; ++i) {
      const Poly h = c.hamiltonian ? *c.hamiltonian : gen.poly(c.chart, opts);
      if (c.momentum) {
        check(h, *c.momentum);
        continue;
      }
      std::vector<Poly> comps;
      for (std::size_t j = 0; j < c.chart.dim(); ++j) comps.push_back(gen.poly(c.chart, opts));
      check(h, OneFormExpr(c.chart, comps));
    }
  }
  report["cases"] = cases;
  report["residual"] = residual;
  report["status"] = residual == "0" ? "PASS" : "FAIL";

  const auto path = resolve(c, c.output);
  write_json(path, report);
  RunOutcome r;
  r.passed = residual == "0";
  r.artifacts.push_back(path);
  r.summary = {{"task", "momentum-check"},
               {"status", report["status"]},
               {"cases", cases},
               {"residual", residual},
               {"output", path.string()}};
  return r;
}

RunOutcome run_kinetic(const ScenarioConfig& c) {
  const DensityFunction f0 = make_density(c);
  const GridDensity initial = GridDensity::sample(c.chart, c.axes, f0, c.grid_time);
  const std::filesystem::path dir = resolve(c, c.output);
  std::filesystem::create_directories(dir);

  RunOutcome r;
  json summary;
  summary["task"] = to_string(c.task);
  summary["seed"] = c.seed;
  summary["initial_mass"] = initial.mass();

  std::vector<GridDensity> snaps;
  if (c.task == Task::KineticParticle) {
    ParticleResult res = solve_density_particle(c.chart, *c.hamiltonian, f0, initial, c.kinetic);
    snaps = std::move(res.snapshots);
    summary["particles"] = res.final_ensemble.states.size();
    summary["particle_initial_mass"] = res.initial_mass;
    summary["escaped_mass"] = res.escaped_by_snapshot;
    const auto csv = dir / "particles.csv";
    auto out = open_output(csv);
    res.final_ensemble.write_csv(out);
    r.artifacts.push_back(csv);
  } else {
    GridResult res = solve_density_grid(c.chart, *c.hamiltonian, initial, c.kinetic);
    snaps = std::move(res.snapshots);
    summary["steps"] = res.steps;
  }
  {
    const auto path = dir / "initial.grid";
    auto out = open_output(path);
    initial.write(out);
    r.artifacts.push_back(path);
  }
  json times = json::array(), masses = json::array(), files = json::array();
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    char name[48];
    std::snprintf(name, sizeof name, "snapshot_%03zu.grid", i);
    const auto path = dir / name;
    auto out = open_output(path);
    snaps[i].write(out);
    r.artifacts.push_back(path);
    times.push_back(snaps[i].time());
    masses.push_back(snaps[i].mass());
    files.push_back(name);
  }
  summary["times"] = times;
  summary["mass"] = masses;
  summary["snapshots"] = files;
  const auto spath = dir / "summary.json";
  write_json(spath, summary);
  r.artifacts.push_back(spath);
  summary["output"] = dir.string();
  r.summary = summary;
  return r;
}

}  // namespace

json identity_report_json(const Chart& chart, std::uint64_t seed, int samples) {
  const IdentityReport rep = run_identity_suite(chart, seed, samples);
  json laws = json::array();
  for (const auto& l : rep.laws) {
    json j = {{"law", l.law}, {"status", l.passed ? "PASS" : "FAIL"}, {"cases", l.cases}};
    if (!l.witness.empty()) j["witness"] = l.witness;
    laws.push_back(j);
  }
  json rows = json::array();
  auto flag = [](bool b) { return b ? "PASS" : "FAIL"; };
  for (const auto& row : rep.rows) {
    json j = {{"family", to_string(row.spec.family)},
              {"gauge", to_string(row.spec.gauge)},
              {"contractions", flag(row.contractions)},
              {"divergence", flag(row.divergence)},
              {"energy_rate", flag(row.energy_rate)},
              {"conformal", flag(row.conformal)},
              {"cases", row.cases},
              {"status", flag(row.passed())}};
    if (!row.witness.empty()) j["witness"] = row.witness;
    rows.push_back(j);
  }
  return {{"chart", {{"kind", to_string(chart.kind())}, {"n", chart.n()}}},
          {"seed", seed},
          {"samples", samples},
          {"status", rep.passed() ? "PASS" : "FAIL"},
          {"laws", laws},
          {"field_rows", rows}};
}

RunOutcome run(const ScenarioConfig& config) {
  switch (config.task) {
    case Task::Simulate: return run_simulate(config);
    case Task::IdentityCheck: return run_identity(config);
    case Task::MomentumCheck: return run_momentum(config);
    case Task::KineticParticle:
    case Task::KineticGrid: return run_kinetic(config);
  }
  throw ConfigError("unknown task");
}

}  // namespace geokin
