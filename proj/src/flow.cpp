#include "geokin/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "geokin/error.hpp"

namespace geokin {

std::string to_string(Integrator method) {
  return method == Integrator::RK4 ? "rk4" : "rk45";
}

Integrator integrator_from_string(std::string_view name) {
  if (name == "rk4") return Integrator::RK4;
  if (name == "rk45") return Integrator::RK45;
  throw Error("unknown integrator '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Evaluators

PolyFieldEvaluator::PolyFieldEvaluator(const FieldSpec& spec, const Poly& h) : spec_(spec) {
  const VectorFieldExpr x = make_field(spec, h);
  const FieldDiagnostics d = diagnostics(spec, h);
  for (const auto& c : x.components()) components_.emplace_back(c);
  h_ = CompiledPoly(h);
  rate_ = CompiledPoly(d.dH_along_flow);
  div_ = CompiledPoly(d.divergence);
}

void PolyFieldEvaluator::field(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](x);
}

NumericFieldEvaluator::NumericFieldEvaluator(const FieldSpec& spec, NumericHamiltonian h)
    : spec_(spec), h_(std::move(h)) {
  spec_.validate();
  if (!h_.value || !h_.gradient) throw Error("numeric Hamiltonian needs value and gradient");
}

void NumericFieldEvaluator::field(std::span<const double> x, std::span<double> out) const {
  const Chart& c = spec_.chart;
  std::vector<double> g(c.dim());
  h_.gradient(x, g);
  const double hz = c.has_action() ? g[c.z_index()] : 0.0;
  // sharp(Full, dH)
  double z_component = hz;
  for (int i = 1; i <= c.n(); ++i) {
    const std::size_t qi = c.q_index(i);
    const std::size_t pi = c.p_index(i);
    out[qi] = g[pi];
    out[pi] = -(g[qi] + (c.has_action() ? x[pi] * hz : 0.0));
    z_component += g[pi] * x[pi];
  }
  if (c.has_time()) {
    const double ht = g[c.t_index()];
    out[c.t_index()] = spec_.gauge == Gauge::Zero ? 0.0 : spec_.gauge == Gauge::One ? 1.0 : ht;
  }
  if (c.has_action()) {
    double coeff = 0.0;
    switch (spec_.family) {
      case FieldFamily::Hamiltonian: coeff = hz + h_.value(x); break;
      case FieldFamily::Energy: coeff = hz; break;
      case FieldFamily::Strict: coeff = h_.value(x); break;
    }
    out[c.z_index()] = z_component - coeff;
  }
}

double NumericFieldEvaluator::predicted_rate(std::span<const double> x) const {
  const Chart& c = spec_.chart;
  std::vector<double> g(c.dim());
  h_.gradient(x, g);
  double rate = 0.0;
  if (c.has_action() && spec_.family == FieldFamily::Hamiltonian) {
    rate -= g[c.z_index()] * h_.value(x);
  }
  if (c.has_time()) {
    const double ht = g[c.t_index()];
    if (spec_.gauge == Gauge::One) rate += ht;
    if (spec_.gauge == Gauge::GradH) rate += ht * ht;
  }
  return rate;
}

double NumericFieldEvaluator::divergence(std::span<const double> x) const {
  const Chart& c = spec_.chart;
  if (c.has_time() && spec_.gauge == Gauge::GradH) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (!c.has_action()) return 0.0;
  std::vector<double> g(c.dim());
  h_.gradient(x, g);
  const double hz = g[c.z_index()];
  switch (spec_.family) {
    case FieldFamily::Hamiltonian: return -(c.n() + 1) * hz;
    case FieldFamily::Energy: return -c.n() * hz;
    case FieldFamily::Strict: return 0.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Integration

namespace {

void check_state(std::span<const double> x, const IntegratorConfig& config, double last_good) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw IntegrationError("non-finite state after flow time " + std::to_string(last_good),
                             last_good);
    }
    if (std::abs(v) > config.blowup_norm) {
      throw IntegrationError("state norm exceeded " + std::to_string(config.blowup_norm) +
                                 " after flow time " + std::to_string(last_good),
                             last_good);
    }
  }
}

void record(Trajectory& traj, const FieldEvaluator& field, double s, std::span<const double> x) {
  traj.times.push_back(s);
  traj.states.emplace_back(x.begin(), x.end());
  traj.hamiltonian.push_back(field.hamiltonian(x));
  traj.predicted_rate.push_back(field.predicted_rate(x));
  traj.divergence.push_back(field.divergence(x));
}

void finish_channels(Trajectory& traj) {
  const std::size_t n = traj.size();
  traj.log_volume.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    traj.log_volume[i] = traj.log_volume[i - 1] + 0.5 * (traj.times[i] - traj.times[i - 1]) *
                                                      (traj.divergence[i] + traj.divergence[i - 1]);
  }
  traj.measured_rate.assign(n, std::numeric_limits<double>::quiet_NaN());
  const auto& t = traj.times;
  const auto& f = traj.hamiltonian;
  if (n == 2) {
    const double d = (f[1] - f[0]) / (t[1] - t[0]);
    traj.measured_rate = {d, d};
    return;
  }
  if (n < 3) return;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    traj.measured_rate[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] +
                            h1 / (h2 * (h1 + h2)) * f[i + 1];
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    traj.measured_rate[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] +
                            (h1 + h2) / (h1 * h2) * f[1] - h1 / (h2 * (h1 + h2)) * f[2];
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    traj.measured_rate[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] -
                                (h1 + h2) / (h1 * h2) * f[n - 2] +
                                (2 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
  }
}

void integrate_rk4(Trajectory& traj, const FieldEvaluator& field, std::vector<double> x,
                   double s0, double s1, const IntegratorConfig& config) {
  if (!(config.step > 0)) throw Error("RK4 step must be positive");
  const double span = s1 - s0;
  const auto steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / config.step - 1e-9)));
  if (steps > config.max_steps) throw Error("RK4 step count exceeds max_steps");
  const double h = span / static_cast<double>(steps);
  std::vector<double> next(x.size());
  std::vector<double> scratch(5 * x.size());
  auto f = [&field](std::span<const double> y, std::span<double> dy) { field.field(y, dy); };
  for (std::size_t k = 0; k < steps; ++k) {
    const double s = s0 + h * static_cast<double>(k);
    rk4_step(f, x, h, next, scratch);
    check_state(next, config, s);
    x.swap(next);
    const double s_new = k + 1 == steps ? s1 : s0 + h * static_cast<double>(k + 1);
    record(traj, field, s_new, x);
  }
}

// Dormand-Prince 5(4), elementary step-size controller.
void integrate_rk45(Trajectory& traj, const FieldEvaluator& field, std::vector<double> x,
                    double s0, double s1, const IntegratorConfig& config) {
  static constexpr double a[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  };
  static constexpr double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                                   11.0 / 84, 0};
  static constexpr double b4[7] = {5179.0 / 57600, 0,          7571.0 / 16695, 393.0 / 640,
                                   -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  const std::size_t n = x.size();
  const double dir = s1 >= s0 ? 1.0 : -1.0;
  double h = std::min(std::abs(config.step), std::abs(s1 - s0));
  double s = s0;
  std::vector<std::vector<double>> k(7, std::vector<double>(n));
  std::vector<double> tmp(n), y5(n);
  std::size_t steps = 0;
  field.field(x, k[0]);
  while (dir * (s1 - s) > 0) {
    if (++steps > config.max_steps) throw IntegrationError("RK45 exceeded max_steps", s);
    h = std::min(h, std::abs(s1 - s));
    const double hs = dir * h;
    for (int stage = 1; stage < 7; ++stage) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = x[i];
        for (int j = 0; j < stage; ++j) acc += hs * a[stage][j] * k[j][i];
        tmp[i] = acc;
      }
      for (double v : tmp) {
        if (!std::isfinite(v)) throw IntegrationError("non-finite stage value", s);
      }
      field.field(tmp, k[stage]);
    }
    // Stage 7 evaluates at the 5th-order solution (FSAL).
    y5 = tmp;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double e = 0.0;
      for (int j = 0; j < 7; ++j) e += (b5[j] - b4[j]) * k[j][i];
      e *= hs;
      const double scale =
          config.abs_tol + config.rel_tol * std::max(std::abs(x[i]), std::abs(y5[i]));
      err += (e / scale) * (e / scale);
    }
    err = std::sqrt(err / static_cast<double>(n));
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate", s);
    if (err <= 1.0) {
      const bool last = std::abs(s1 - (s + hs)) <= 1e-15 * std::max(1.0, std::abs(s1));
      s = last ? s1 : s + hs;
      check_state(y5, config, s - hs);
      x = y5;
      k[0] = k[6];
      record(traj, field, s, x);
      if (last) break;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < config.min_step) throw IntegrationError("RK45 step size underflow", s);
  }
}

}  // namespace

Trajectory integrate(const FieldEvaluator& field, std::span<const double> x0, double s0, double s1,
                     const IntegratorConfig& config) {
  const Chart& chart = field.chart();
  if (x0.size() != chart.dim()) {
    throw DimensionMismatch("initial state has " + std::to_string(x0.size()) +
                            " coordinates, chart has " + std::to_string(chart.dim()));
  }
  check_state(x0, config, s0);
  Trajectory traj{chart, {}, {}, {}, {}, {}, {}, {}, field.exact_diagnostics()};
  std::vector<double> x(x0.begin(), x0.end());
  record(traj, field, s0, x);
  if (s1 != s0) {
    if (config.method == Integrator::RK4) {
      integrate_rk4(traj, field, x, s0, s1, config);
    } else {
      integrate_rk45(traj, field, x, s0, s1, config);
    }
  }
  finish_channels(traj);
  return traj;
}

Trajectory integrate(const FieldSpec& spec, const Poly& h, std::span<const double> x0, double s0,
                     double s1, const IntegratorConfig& config) {
  return integrate(PolyFieldEvaluator(spec, h), x0, s0, s1, config);
}

Trajectory integrate(const FieldSpec& spec, const NumericHamiltonian& h,
                     std::span<const double> x0, double s0, double s1,
                     const IntegratorConfig& config) {
  return integrate(NumericFieldEvaluator(spec, h), x0, s0, s1, config);
}

double numeric_divergence(const FieldSpec& spec, const Poly& h, std::span<const double> x,
                          double step) {
  const PolyFieldEvaluator field(spec, h);
  const std::size_t n = x.size();
  if (n != spec.chart.dim()) throw DimensionMismatch("numeric_divergence: wrong point length");
  std::vector<double> y(x.begin(), x.end());
  std::vector<double> fp(n), fm(n);
  double div = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i] + step;
    field.field(y, fp);
    y[i] = x[i] - step;
    field.field(y, fm);
    y[i] = x[i];
    div += (fp[i] - fm[i]) / (2.0 * step);
  }
  return div;
}

double monitored_energy_rate(const Trajectory& traj) {
  if (traj.size() < 3) throw Error("monitored_energy_rate needs at least 3 trajectory points");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    worst = std::max(worst, std::abs(traj.measured_rate[i] - traj.predicted_rate[i]));
  }
  return worst;
}

VolumeCheck volume_check(const FieldSpec& spec, const Poly& h, std::span<const double> x0,
                         double s0, double window, const IntegratorConfig& config, double step) {
  const PolyFieldEvaluator field(spec, h);
  const std::size_t n = x0.size();
  const Trajectory base = integrate(field, x0, s0, s0 + window, config);
  Eigen::MatrixXd jac(n, n);
  std::vector<double> y(x0.begin(), x0.end());
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = x0[j] + step;
    const std::vector<double> plus = integrate(field, y, s0, s0 + window, config).states.back();
    y[j] = x0[j] - step;
    const std::vector<double> minus = integrate(field, y, s0, s0 + window, config).states.back();
    y[j] = x0[j];
    for (std::size_t i = 0; i < n; ++i) {
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (plus[i] - minus[i]) / (2.0 * step);
    }
  }
  const double det = jac.partialPivLu().determinant();
  return VolumeCheck{std::log(std::abs(det)), base.log_volume.back()};
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << 's';
  for (const auto& name : traj.chart.variable_names()) out << ',' << name;
  out << ",H,pred_dHds,div\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    put(traj.times[i]);
    for (double v : traj.states[i]) {
      out << ',';
      put(v);
    }
    out << ',';
    put(traj.hamiltonian[i]);
    out << ',';
    put(traj.predicted_rate[i]);
    out << ',';
    put(traj.divergence[i]);
    out << '\n';
  }
}

}  // namespace geokin
