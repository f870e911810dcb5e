#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geokin/fields.hpp"

namespace geokin {

enum class Integrator { RK4, RK45 };

std::string to_string(Integrator method);
Integrator integrator_from_string(std::string_view name);

struct IntegratorConfig {
  Integrator method = Integrator::RK4;
  double step = 1e-3;       // fixed step for RK4, initial step for RK45
  double rel_tol = 1e-9;    // RK45 only
  double abs_tol = 1e-12;   // RK45 only
  double min_step = 1e-14;  // RK45 gives up below this
  std::size_t max_steps = 50'000'000;
  double blowup_norm = 1e12;  // states with a larger max-norm count as blow-up
};

// Hamiltonian given as plain callables instead of a polynomial. Fields built
// from it bypass the exact diagnostics: the divergence channel is NaN where
// second derivatives would be needed.
struct NumericHamiltonian {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

// Numeric view of a field row: the vector field plus the monitored scalars.
class FieldEvaluator {
 public:
  virtual ~FieldEvaluator() = default;
  virtual const Chart& chart() const = 0;
  virtual void field(std::span<const double> x, std::span<double> out) const = 0;
  virtual double hamiltonian(std::span<const double> x) const = 0;
  virtual double predicted_rate(std::span<const double> x) const = 0;
  virtual double divergence(std::span<const double> x) const = 0;
  virtual bool exact_diagnostics() const = 0;
};

class PolyFieldEvaluator final : public FieldEvaluator {
 public:
  PolyFieldEvaluator(const FieldSpec& spec, const Poly& h);

  const Chart& chart() const override { return spec_.chart; }
  void field(std::span<const double> x, std::span<double> out) const override;
  double hamiltonian(std::span<const double> x) const override { return h_(x); }
  double predicted_rate(std::span<const double> x) const override { return rate_(x); }
  double divergence(std::span<const double> x) const override { return div_(x); }
  bool exact_diagnostics() const override { return true; }

 private:
  FieldSpec spec_;
  std::vector<CompiledPoly> components_;
  CompiledPoly h_;
  CompiledPoly rate_;
  CompiledPoly div_;
};

class NumericFieldEvaluator final : public FieldEvaluator {
 public:
  NumericFieldEvaluator(const FieldSpec& spec, NumericHamiltonian h);

  const Chart& chart() const override { return spec_.chart; }
  void field(std::span<const double> x, std::span<double> out) const override;
  double hamiltonian(std::span<const double> x) const override { return h_.value(x); }
  double predicted_rate(std::span<const double> x) const override;
  double divergence(std::span<const double> x) const override;
  bool exact_diagnostics() const override { return false; }

 private:
  FieldSpec spec_;
  NumericHamiltonian h_;
};

// Sampled solution of dx/ds = X(x). All channels have one entry per time.
struct Trajectory {
  Chart chart;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> hamiltonian;
  std::vector<double> predicted_rate;  // closed-form X(H) at each state
  std::vector<double> measured_rate;   // finite difference of the H channel
  std::vector<double> divergence;
  std::vector<double> log_volume;      // running integral of the divergence
  bool exact_diagnostics = true;

  std::size_t size() const { return times.size(); }
};

Trajectory integrate(const FieldEvaluator& field, std::span<const double> x0, double s0, double s1,
                     const IntegratorConfig& config);
Trajectory integrate(const FieldSpec& spec, const Poly& h, std::span<const double> x0, double s0,
                     double s1, const IntegratorConfig& config);
Trajectory integrate(const FieldSpec& spec, const NumericHamiltonian& h,
                     std::span<const double> x0, double s0, double s1,
                     const IntegratorConfig& config);

// Central-difference divergence of the field at x.
double numeric_divergence(const FieldSpec& spec, const Poly& h, std::span<const double> x,
                          double step = 1e-4);

// max over interior samples of |measured dH/ds - predicted X(H)|.
double monitored_energy_rate(const Trajectory& traj);

// log|det D phi| of the flow map over [s0, s0 + window], from central
// differences of integrated trajectories, paired with the integral of the
// divergence along the base trajectory.
struct VolumeCheck {
  double log_det;
  double divergence_integral;
};

VolumeCheck volume_check(const FieldSpec& spec, const Poly& h, std::span<const double> x0,
                         double s0, double window, const IntegratorConfig& config,
                         double step = 1e-5);

// CSV with header s,<chart coordinates>,H,pred_dHds,div.
void write_csv(std::ostream& out, const Trajectory& traj);

// One classical RK4 step for an autonomous system; `scratch` must hold
// 5 * x.size() doubles.
template <class F>
void rk4_step(const F& f, std::span<const double> x, double h, std::span<double> out,
              std::span<double> scratch) {
  const std::size_t n = x.size();
  std::span<double> k1 = scratch.subspan(0, n);
  std::span<double> k2 = scratch.subspan(n, n);
  std::span<double> k3 = scratch.subspan(2 * n, n);
  std::span<double> k4 = scratch.subspan(3 * n, n);
  std::span<double> tmp = scratch.subspan(4 * n, n);
  f(x, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  f(std::span<const double>(tmp), k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  f(std::span<const double>(tmp), k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  f(std::span<const double>(tmp), k4);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

}  // namespace geokin
