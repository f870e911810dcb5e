#include "geokin/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <random>
#include <thread>

#include "geokin/calculus.hpp"
#include "geokin/error.hpp"
#include "geokin/flow.hpp"

namespace geokin {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GEOKIN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

double ParticleEnsemble::mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

void ParticleEnsemble::write_csv(std::ostream& out) const {
  std::vector<std::size_t> order;
  const auto& names = chart.variable_names();
  for (int i = 1; i <= chart.n(); ++i) order.push_back(chart.q_index(i));
  for (int i = 1; i <= chart.n(); ++i) order.push_back(chart.p_index(i));
  if (chart.has_action()) order.push_back(chart.z_index());
  if (chart.has_time()) order.push_back(chart.t_index());
  for (std::size_t k = 0; k < order.size(); ++k) out << (k ? "," : "") << names[order[k]];
  out << ",w\n";
  char buf[32];
  for (std::size_t p = 0; p < states.size(); ++p) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", states[p][order[k]]);
      out << (k ? "," : "") << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", weights[p]);
    out << ',' << buf << '\n';
  }
}

namespace {

// Output times relative to the start, sorted, deduplicated, ending at t_final.
std::vector<double> output_times(const KineticConfig& config) {
  if (!(config.t_final > 0)) throw ConfigError("t_final must be positive");
  if (!(config.dt > 0)) throw ConfigError("dt must be positive");
  std::vector<double> out;
  for (double s : config.snapshots) {
    if (s > 0 && s < config.t_final) out.push_back(s);
  }
  out.push_back(config.t_final);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t step_count(double span, double dt) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt - 1e-9)));
}

// Advecting field a X_H, with dt/ds = 1 on charts carrying time.
VectorFieldExpr advecting_field(const Chart& chart, const Poly& h, const DensityCoefficients& k) {
  VectorFieldExpr x = chart.constant(k.a) * kinetic_field(chart, h);
  if (chart.has_time()) x[chart.t_index()] = chart.constant(1);
  return x;
}

double wrap(double x, const Axis& ax) {
  const double len = ax.hi - ax.lo;
  double u = std::fmod(x - ax.lo, len);
  if (u < 0) u += len;
  return ax.lo + u;
}

bool inside(const std::vector<double>& state, const GridDensity& g) {
  const auto& axes = g.axes();
  const auto& coords = g.coordinate_indices();
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a].boundary != Boundary::ZeroInflow || !axes[a].active()) continue;
    const double v = state[coords[a]];
    if (v < axes[a].lo || v > axes[a].hi) return false;
  }
  return true;
}

// Cloud-in-cell deposit. Out-of-range neighbours on zero-inflow axes are
// folded onto the edge cell so deposited mass equals total weight.
GridDensity deposit(const GridDensity& layout, const ParticleEnsemble& ens,
                    const std::vector<char>& alive, double time) {
  GridDensity g(layout.chart(), layout.axes(), time);
  const auto& axes = layout.axes();
  const auto& coords = layout.coordinate_indices();
  const std::size_t d = axes.size();
  std::vector<std::size_t> lo(d), hi(d), idx(d);
  std::vector<double> frac(d);
  const double inv_vol = 1.0 / layout.cell_volume();
  for (std::size_t p = 0; p < ens.states.size(); ++p) {
    if (!alive[p]) continue;
    for (std::size_t a = 0; a < d; ++a) {
      const Axis& ax = axes[a];
      if (!ax.active()) {
        lo[a] = hi[a] = 0;
        frac[a] = 0.0;
        continue;
      }
      double x = ens.states[p][coords[a]];
      if (ax.boundary == Boundary::Periodic) x = wrap(x, ax);
      const double u = (x - ax.lo) / ax.width() - 0.5;
      const auto n = static_cast<long>(ax.size);
      long i0 = static_cast<long>(std::floor(u));
      frac[a] = u - static_cast<double>(i0);
      long i1 = i0 + 1;
      if (ax.boundary == Boundary::Periodic) {
        i0 = ((i0 % n) + n) % n;
        i1 = ((i1 % n) + n) % n;
      } else {
        i0 = std::clamp(i0, 0L, n - 1);
        i1 = std::clamp(i1, 0L, n - 1);
      }
      lo[a] = static_cast<std::size_t>(i0);
      hi[a] = static_cast<std::size_t>(i1);
    }
    const double w = ens.weights[p] * inv_vol;
    for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
      double c = w;
      for (std::size_t a = 0; a < d; ++a) {
        const bool upper = (corner >> a) & 1u;
        if (!axes[a].active()) {
          if (upper) c = 0.0;
          idx[a] = 0;
          continue;
        }
        idx[a] = upper ? hi[a] : lo[a];
        c *= upper ? frac[a] : 1.0 - frac[a];
      }
      if (c != 0.0) g[g.flat_index(idx)] += c;
    }
  }
  return g;
}

ParticleEnsemble seed_particles(const Chart& chart, const DensityFunction& f0,
                                const GridDensity& layout, const KineticConfig& config) {
  ParticleEnsemble ens{chart, {}, {}};
  const auto& axes = layout.axes();
  const auto& coords = layout.coordinate_indices();
  std::vector<std::size_t> active;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a].active()) active.push_back(a);
  }
  std::vector<double> phase(axes.size());
  std::vector<double> state(chart.dim(), 0.0);
  if (chart.has_time()) state[chart.t_index()] = layout.time();
  for (std::size_t a = 0; a < axes.size(); ++a) phase[a] = 0.5 * (axes[a].lo + axes[a].hi);
  auto emit = [&](double weight) {
    if (weight == 0.0) return;
    for (std::size_t a = 0; a < axes.size(); ++a) state[coords[a]] = phase[a];
    ens.states.push_back(state);
    ens.weights.push_back(weight);
  };

  const std::size_t count = std::max<std::size_t>(config.particle_count, 1);
  if (config.seeding == Seeding::Lattice) {
    const auto per_axis = active.empty()
                              ? std::size_t{1}
                              : static_cast<std::size_t>(std::max(
                                    1.0, std::round(std::pow(static_cast<double>(count),
                                                             1.0 / static_cast<double>(active.size())))));
    double cell = 1.0;
    for (auto a : active) cell *= (axes[a].hi - axes[a].lo) / static_cast<double>(per_axis);
    std::size_t total = 1;
    for (std::size_t k = 0; k < active.size(); ++k) total *= per_axis;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t k = active.size(); k-- > 0;) {
        const std::size_t a = active[k];
        const std::size_t i = rem % per_axis;
        rem /= per_axis;
        phase[a] = axes[a].lo + (static_cast<double>(i) + 0.5) * (axes[a].hi - axes[a].lo) /
                                    static_cast<double>(per_axis);
      }
      emit(f0(phase) * cell);
    }
  } else {
    std::mt19937_64 engine(config.seed);
    double volume = 1.0;
    for (auto a : active) volume *= axes[a].hi - axes[a].lo;
    for (std::size_t p = 0; p < count; ++p) {
      for (auto a : active) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        phase[a] = axes[a].lo + u * (axes[a].hi - axes[a].lo);
      }
      emit(f0(phase) * volume / static_cast<double>(count));
    }
  }
  return ens;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, const Fn& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2 * workers) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ParticleResult solve_density_particle(const Chart& chart, const Poly& h, const DensityFunction& f0,
                                      const GridDensity& layout, const KineticConfig& config) {
  chart.require(h, "solve_density_particle");
  if (!(layout.chart() == chart)) throw ChartKindError("grid layout lives on another chart");
  const std::vector<double> outputs = output_times(config);
  const DensityCoefficients k = density_coefficients(chart);
  const VectorFieldExpr field = advecting_field(chart, h, k);
  std::vector<CompiledPoly> comps;
  for (const auto& c : field.components()) comps.emplace_back(c);
  const CompiledPoly rate(weight_rate(chart, h, k));
  const std::size_t dim = chart.dim();

  ParticleResult result{{}, seed_particles(chart, f0, layout, config), 0.0, 0.0, {}};
  ParticleEnsemble& ens = result.final_ensemble;
  result.initial_mass = ens.mass();

  // Courant-like guard: no particle may cross more than max_courant cells
  // per step at its initial velocity.
  {
    const auto& axes = layout.axes();
    const auto& coords = layout.coordinate_indices();
    double worst = 0.0;
    for (const auto& s : ens.states) {
      double c = 0.0;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].active()) c += std::abs(comps[coords[a]](s)) / axes[a].width();
      }
      worst = std::max(worst, c);
    }
    if (worst * config.dt > config.max_courant) {
      throw StabilityError("particle step dt=" + std::to_string(config.dt) +
                           " moves particles more than " + std::to_string(config.max_courant) +
                           " cells per step; reduce dt below " +
                           std::to_string(config.max_courant / worst));
    }
  }

  const std::size_t count = ens.states.size();
  std::vector<char> alive(count, 1);
  std::vector<double> growth(count, 0.0);  // integral of the weight rate
  std::vector<double> w0 = ens.weights;
  const int threads = resolve_threads(config.threads);

  // Augmented state: chart coordinates then the log growth factor.
  auto rhs = [&](std::span<const double> y, std::span<double> dy) {
    std::span<const double> x = y.first(dim);
    for (std::size_t i = 0; i < dim; ++i) dy[i] = comps[i](x);
    dy[dim] = rate(x);
  };

  double previous = 0.0;
  for (double target : outputs) {
    const double span = target - previous;
    const std::size_t steps = step_count(span, config.dt);
    const double hstep = span / static_cast<double>(steps);
    parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> y(dim + 1), next(dim + 1), scratch(5 * (dim + 1));
      for (std::size_t p = begin; p < end; ++p) {
        if (!alive[p]) continue;
        std::copy(ens.states[p].begin(), ens.states[p].end(), y.begin());
        y[dim] = growth[p];
        for (std::size_t s = 0; s < steps; ++s) {
          rk4_step(rhs, y, hstep, next, scratch);
          y.swap(next);
        }
        std::copy(y.begin(), y.begin() + static_cast<long>(dim), ens.states[p].begin());
        growth[p] = y[dim];
      }
    });
    for (std::size_t p = 0; p < count; ++p) {
      if (!alive[p]) continue;
      ens.weights[p] = w0[p] * std::exp(growth[p]);
      if (!std::isfinite(ens.weights[p])) {
        throw IntegrationError("particle weight overflow", layout.time() + previous);
      }
      for (double v : ens.states[p]) {
        if (!std::isfinite(v)) {
          throw IntegrationError("particle left the finite domain", layout.time() + previous);
        }
      }
      if (!inside(ens.states[p], layout)) {
        alive[p] = 0;
        result.escaped_mass += ens.weights[p];
      }
    }
    result.escaped_by_snapshot.push_back(result.escaped_mass);
    result.snapshots.push_back(deposit(layout, ens, alive, layout.time() + target));
    previous = target;
  }

  // Only surviving particles are reported.
  ParticleEnsemble kept{chart, {}, {}};
  for (std::size_t p = 0; p < count; ++p) {
    if (!alive[p]) continue;
    kept.states.push_back(std::move(ens.states[p]));
    kept.weights.push_back(ens.weights[p]);
  }
  result.final_ensemble = std::move(kept);
  return result;
}

ParticleResult solve_density_particle(const Chart& chart, const Poly& h, const GridDensity& f0,
                                      const KineticConfig& config) {
  return solve_density_particle(
      chart, h, [&f0](std::span<const double> x) { return f0.interpolate(x); }, f0, config);
}

// ---------------------------------------------------------------------------
// Grid solver

namespace {

// Donor-cell upwind for the conservative form
//   df/ds + div(a X_H f) = r f,   r = weight_rate(H),
// which is density_vlasov_rhs rewritten with div(X f) = X(f) + div(X) f.
// Each interior face flux is added to one cell and removed from its
// neighbour, so mass changes only through r and the domain boundary.
class UpwindOperator {
 public:
  UpwindOperator(const Chart& chart, const Poly& h, const GridDensity& layout)
      : layout_(layout), time_dependent_(chart.has_time() && h.depends_on(chart.t_index())) {
    const DensityCoefficients k = density_coefficients(chart);
    const VectorFieldExpr field = advecting_field(chart, h, k);
    for (std::size_t c : layout.coordinate_indices()) velocity_.emplace_back(field[c]);
    rate_ = CompiledPoly(weight_rate(chart, h, k));
    const auto& axes = layout.axes();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].active()) active_.push_back(a);
    }
    cells_ = layout.cell_count();
    lower_.resize(cells_ * active_.size());
    upper_.resize(cells_ * active_.size());
    r_.resize(cells_);
  }

  bool time_dependent() const { return time_dependent_; }

  // Refreshes face velocities and rates at evolution time t; returns the
  // largest outgoing Courant sum per unit dt and the largest |r|.
  std::pair<double, double> update(double t) {
    const Chart& chart = layout_.chart();
    const auto& coords = layout_.coordinate_indices();
    const auto& axes = layout_.axes();
    std::vector<double> phase(axes.size());
    std::vector<double> state(chart.dim(), 0.0);
    if (chart.has_time()) state[chart.t_index()] = t;
    double courant = 0.0;
    double rmax = 0.0;
    for (std::size_t i = 0; i < cells_; ++i) {
      layout_.cell_center(i, phase);
      for (std::size_t a = 0; a < axes.size(); ++a) state[coords[a]] = phase[a];
      r_[i] = rate_(state);
      rmax = std::max(rmax, std::abs(r_[i]));
      double c = 0.0;
      for (std::size_t k = 0; k < active_.size(); ++k) {
        const std::size_t a = active_[k];
        const double centre = state[coords[a]];
        const double half = 0.5 * axes[a].width();
        state[coords[a]] = centre - half;
        const double lo = velocity_[a](state);
        state[coords[a]] = centre + half;
        const double hi = velocity_[a](state);
        state[coords[a]] = centre;
        lower_[i * active_.size() + k] = lo;
        upper_[i * active_.size() + k] = hi;
        c += (std::max(hi, 0.0) + std::max(-lo, 0.0)) / axes[a].width();
      }
      courant = std::max(courant, c);
    }
    return {courant, rmax};
  }

  void apply(const std::vector<double>& f, std::vector<double>& out) const {
    const auto& axes = layout_.axes();
    for (std::size_t i = 0; i < cells_; ++i) out[i] = r_[i] * f[i];
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t i = 0; i < cells_; ++i) {
      layout_.unflatten(i, idx);
      for (std::size_t k = 0; k < active_.size(); ++k) {
        const std::size_t a = active_[k];
        const Axis& ax = axes[a];
        const double inv_w = 1.0 / ax.width();
        const std::size_t j = idx[a];
        const bool last = j + 1 == ax.size;
        // Upper face, shared with the next cell along the axis.
        const double v = upper_[i * active_.size() + k];
        if (last && ax.boundary == Boundary::ZeroInflow) {
          if (v > 0) out[i] -= v * f[i] * inv_w;
        } else {
          idx[a] = last ? 0 : j + 1;
          const std::size_t right = layout_.flat_index(idx);
          idx[a] = j;
          const double flux = v * (v > 0 ? f[i] : f[right]) * inv_w;
          out[i] -= flux;
          out[right] += flux;
        }
        // Lower domain face: only outflow, the ghost density is zero.
        if (j == 0 && ax.boundary == Boundary::ZeroInflow) {
          const double vl = lower_[i * active_.size() + k];
          if (vl < 0) out[i] += vl * f[i] * inv_w;
        }
      }
    }
  }

 private:
  const GridDensity& layout_;
  bool time_dependent_;
  std::vector<CompiledPoly> velocity_;
  CompiledPoly rate_;
  std::vector<std::size_t> active_;
  std::size_t cells_ = 0;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> r_;
};

}  // namespace

GridResult solve_density_grid(const Chart& chart, const Poly& h, const GridDensity& f0,
                              const KineticConfig& config) {
  chart.require(h, "solve_density_grid");
  if (!(f0.chart() == chart)) throw ChartKindError("initial grid lives on another chart");
  const std::vector<double> outputs = output_times(config);
  UpwindOperator op(chart, h, f0);
  const double t0 = f0.time();

  auto guard = [&](std::pair<double, double> bounds, double dt, double t) {
    if (bounds.first * dt > config.max_courant) {
      throw StabilityError("grid Courant number " + std::to_string(bounds.first * dt) +
                           " exceeds " + std::to_string(config.max_courant) + " at t=" +
                           std::to_string(t) + "; reduce dt below " +
                           std::to_string(config.max_courant / bounds.first));
    }
    if (bounds.second * dt > 1.0) {
      throw StabilityError("source term |S| dt = " + std::to_string(bounds.second * dt) +
                           " exceeds 1; reduce dt");
    }
  };

  GridResult result;
  std::vector<double> f = f0.values();
  const std::size_t n = f.size();
  std::vector<double> k(n), f1(n), f2(n);
  auto bounds = op.update(t0);
  double previous = 0.0;
  for (double target : outputs) {
    const double span = target - previous;
    const std::size_t steps = step_count(span, config.dt);
    const double dt = span / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = t0 + previous + dt * static_cast<double>(s);
      if (op.time_dependent()) bounds = op.update(t);
      guard(bounds, dt, t);
      op.apply(f, k);
      for (std::size_t i = 0; i < n; ++i) f1[i] = f[i] + dt * k[i];
      if (op.time_dependent()) bounds = op.update(t + dt);
      op.apply(f1, k);
      for (std::size_t i = 0; i < n; ++i) f2[i] = 0.75 * f[i] + 0.25 * (f1[i] + dt * k[i]);
      if (op.time_dependent()) bounds = op.update(t + 0.5 * dt);
      op.apply(f2, k);
      for (std::size_t i = 0; i < n; ++i) {
        f[i] = f[i] / 3.0 + 2.0 / 3.0 * (f2[i] + dt * k[i]);
        if (!std::isfinite(f[i])) throw IntegrationError("grid density became non-finite", t);
      }
      ++result.steps;
    }
    GridDensity snap(chart, f0.axes(), t0 + target);
    snap.values() = f;
    result.snapshots.push_back(std::move(snap));
    previous = target;
  }
  return result;
}

}  // namespace geokin
