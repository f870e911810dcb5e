// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geokin/brackets.hpp"
#include "geokin/calculus.hpp"
#include "geokin/fields.hpp"
#include "geokin/flow.hpp"
#include "geokin/identities.hpp"
#include "geokin/kinetics.hpp"
#include "geokin/musical.hpp"
#include "geokin/random.hpp"
#include "geokin/solvers.hpp"
#include "oracles.hpp"

using namespace geokin;

namespace {

const ChartKind kKinds[] = {ChartKind::Symplectic, ChartKind::Cosymplectic, ChartKind::Contact,
                            ChartKind::Cocontact};

const BracketKind kBrackets[] = {BracketKind::PoissonSymplectic,     BracketKind::PoissonCosymplectic,
                                 BracketKind::AlmostPoissonContact,  BracketKind::AlmostPoissonCocontact,
                                 BracketKind::JacobiContact,         BracketKind::JacobiCocontact};

// Collects failures and numeric measurements for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    if (!ok) ++failures_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool passed() const { return failures_ == 0; }
  std::string detail() const {
    std::ostringstream out;
    out << cases_ << " checks";
    if (!notes_.empty()) out << "; " << notes_;
    if (failures_) out << "; " << failures_ << " failed, first: " << first_failure_;
    return out.str();
  }

 private:
  int cases_ = 0;
  int failures_ = 0;
  std::string first_failure_;
  std::string notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<Chart> charts_n12() {
  std::vector<Chart> out;
  for (ChartKind k : kKinds) {
    for (int n : {1, 2}) out.emplace_back(k, n);
  }
  return out;
}

Poly random_h(const FieldSpec& spec, PolyGenerator& gen) {
  PolyGenerator::Options o;
  o.allow_z = spec.family != FieldFamily::Strict;
  return gen.poly(spec.chart, o);
}

OneFormExpr random_form(const Chart& c, PolyGenerator& gen, int degree) {
  PolyGenerator::Options o;
  o.max_degree = degree;
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < c.dim(); ++i) comps.push_back(gen.poly(c, o));
  return OneFormExpr(c, comps);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Bracket laws.
Check bracket_laws() {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  for (BracketKind kind : kBrackets) {
    for (int n : {1, 2}) {
      const Chart c(chart_kind_of(kind), n);
      PolyGenerator gen(1000 + 10 * static_cast<int>(kind) + n);
      const std::string tag = to_string(kind) + " n=" + std::to_string(n);
      for (int i = 0; i < 100; ++i) {
        const Poly f = gen.poly(c), g = gen.poly(c), h = gen.poly(c);
        ck.expect((bracket(kind, c, f, g) + bracket(kind, c, g, f)).is_zero(), tag + " antisymmetry");
        if (!is_almost_poisson(kind)) {
          ck.expect(jacobiator(kind, c, f, g, h).is_zero(), tag + " jacobi");
        }
        const Poly defect = leibniz_defect(kind, c, f, g, h);
        if (is_jacobi(kind)) {
          ck.expect(defect == g * h * partial(f, c.z_index()), tag + " weak leibniz");
        } else {
          ck.expect(defect.is_zero(), tag + " leibniz");
        }
        if (c.kind() == ChartKind::Cosymplectic) {
          // Random polynomial in t alone.
          Poly ft = c.zero();
          Poly tk = c.constant(1);
          for (int k = 0; k <= 3; ++k) {
            ft += c.constant(Rational(static_cast<long>(gen.below(9)) - 4, 1 + static_cast<long>(gen.below(3)))) * tk;
            tk *= c.t();
          }
          ck.expect(bracket(kind, c, ft, h).is_zero(), tag + " casimir");
        }
      }
    }
  }
  const double secs = elapsed(t0);
  ck.expect(secs <= 30.0, "runtime " + fmt(secs) + " s");
  ck.note("runtime " + fmt(secs) + " s");
  return ck;
}

// 2. Almost-Poisson Jacobi failure witness.
Check jacobi_failure_witness() {
  Check ck;
  for (ChartKind k : {ChartKind::Contact, ChartKind::Cocontact}) {
    const Chart c(k, 1);
    const BracketKind kind =
        k == ChartKind::Contact ? BracketKind::AlmostPoissonContact : BracketKind::AlmostPoissonCocontact;
    // Stored witness: (p1, z, q1), jacobiator exactly 1.
    const Poly j = jacobiator(kind, c, c.p(1), c.z(), c.q(1));
    ck.expect(j == c.constant(1), to_string(kind) + " pinned witness gives " + c.print(j));
    auto br = [&](const Poly& f, const Poly& g) { return oracle::almost_poisson(c, f, g); };
    const Poly ref = br(br(c.p(1), c.z()), c.q(1)) + br(br(c.z(), c.q(1)), c.p(1)) +
                     br(br(c.q(1), c.p(1)), c.z());
    ck.expect(ref == c.constant(1), to_string(kind) + " oracle jacobiator " + c.print(ref));
    const auto w = find_jacobi_witness(kind, c, 42);
    ck.expect(w.has_value() && !jacobiator(kind, c, (*w)[0], (*w)[1], (*w)[2]).is_zero(),
              to_string(kind) + " seeded search");
  }
  return ck;
}

// 3. Field catalog columns and numeric divergence.
Check field_catalog() {
  Check ck;
  int rows = 0;
  double worst_fd = 0.0;
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Chart& c : charts_n12()) {
    const CanonicalForms forms = canonical_forms(c);
    for (const FieldSpec& spec : all_field_specs(c)) {
      if (c.n() == 1) ++rows;
      PolyGenerator gen(3000 + rows);
      const std::string tag = spec.describe();
      for (int i = 0; i < 50; ++i) {
        const Poly h = random_h(spec, gen);
        const VectorFieldExpr x = make_field(spec, h);
        ck.expect(contract(x, forms.structure) == oracle::iota_structure(spec, h), tag + " i_X structure");
        if (forms.eta) ck.expect(pairing(*forms.eta, x) == oracle::iota_eta(spec, h), tag + " i_X eta");
        if (forms.tau) {
          ck.expect(pairing(*forms.tau, x) == oracle::gauge_coefficient(spec, h), tag + " i_X tau");
        }
        ck.expect(divergence(x) == oracle::divergence(spec, h), tag + " divergence");
        ck.expect(apply(x, h) == oracle::energy_rate(spec, h), tag + " <dH,X>");
        const FieldDiagnostics d = diagnostics(spec, h);
        ck.expect(d.divergence == oracle::divergence(spec, h), tag + " diagnostics divergence");
        ck.expect(d.dH_along_flow == oracle::energy_rate(spec, h), tag + " diagnostics <dH,X>");
      }
      const Poly h = random_h(spec, gen);
      const CompiledPoly div(oracle::divergence(spec, h));
      for (int i = 0; i < 20; ++i) {
        std::vector<double> pt(c.dim());
        for (double& v : pt) v = u(rng);
        const double err = std::abs(numeric_divergence(spec, h, pt, 1e-4) - div(pt));
        worst_fd = std::max(worst_fd, err);
        ck.expect(err <= 1e-5, tag + " numeric divergence error " + fmt(err));
      }
    }
  }
  ck.expect(rows == 16, "row count " + std::to_string(rows));
  ck.note(std::to_string(rows) + " rows; max FD divergence error " + fmt(worst_fd));
  return ck;
}

// 4. Homomorphism [X_F, X_H] = -X_{F,H}.
Check homomorphisms() {
  Check ck;
  for (const Chart& c : charts_n12()) {
    const FieldSpec ham{c};
    PolyGenerator gen(4000 + 10 * static_cast<int>(c.kind()) + c.n());
    for (int i = 0; i < 50; ++i) {
      const Poly f = gen.poly(c), h = gen.poly(c);
      ck.expect(lie_bracket(make_field(ham, f), make_field(ham, h)) ==
                    make_field(ham, -oracle::canonical_bracket(c, f, h)),
                to_string(c.kind()) + " F=" + c.print(f) + " H=" + c.print(h));
    }
  }
  return ck;
}

// 5. Conformal Lie-derivative laws.
Check conformal_laws() {
  Check ck;
  for (const Chart& c : charts_n12()) {
    const CanonicalForms forms = canonical_forms(c);
    for (const FieldSpec& spec : all_field_specs(c)) {
      PolyGenerator gen(5000 + 10 * static_cast<int>(c.kind()) + c.n());
      const std::string tag = spec.describe();
      for (int i = 0; i < 20; ++i) {
        const Poly h = random_h(spec, gen);
        const VectorFieldExpr x = make_field(spec, h);
        const LieDerivativeLaws laws = expected_lie_derivatives(spec, h);
        // Cartan reference from the coordinate contractions.
        const OneFormExpr iota_w = oracle::iota_structure(spec, h);
        const TwoFormExpr d_iota_w = exterior_derivative(iota_w);
        ck.expect(lie_derivative(x, forms.structure) == laws.structure, tag + " L_X structure");
        ck.expect(laws.structure == d_iota_w, tag + " structure law vs Cartan");
        if (forms.eta) {
          const OneFormExpr ref = iota_w + differential(c, oracle::iota_eta(spec, h));
          ck.expect(lie_derivative(x, *forms.eta) == *laws.eta, tag + " L_X eta");
          ck.expect(*laws.eta == ref, tag + " eta law vs Cartan");
        }
        if (forms.tau) {
          const OneFormExpr ref = differential(c, oracle::gauge_coefficient(spec, h));
          ck.expect(lie_derivative(x, *forms.tau) == *laws.tau, tag + " L_X tau");
          ck.expect(*laws.tau == ref, tag + " tau law vs Cartan");
        }
      }
    }
  }
  return ck;
}

// 6. Flow physics.
Check flow_physics() {
  Check ck;
  constexpr double kPi = std::numbers::pi;
  IntegratorConfig rk4;
  rk4.step = 1e-3;

  const Chart s(ChartKind::Symplectic, 1);
  const Poly ho = s.parse("(q1^2 + p1^2)/2");
  const std::vector<double> x0 = {1.0, 0.0};
  const Trajectory period = integrate(FieldSpec{s}, ho, x0, 0.0, 2.0 * kPi, rk4);
  const double ret = std::hypot(period.states.back()[0] - 1.0, period.states.back()[1]);
  ck.expect(ret <= 1e-8, "oscillator return " + fmt(ret));

  auto err = [&](double step) {
    IntegratorConfig cfg;
    cfg.step = step;
    const Trajectory tr = integrate(FieldSpec{s}, ho, x0, 0.0, 2.0, cfg);
    return std::hypot(tr.states.back()[0] - std::cos(2.0), tr.states.back()[1] + std::sin(2.0));
  };
  const double factor = err(0.1) / err(0.05);
  ck.expect(factor >= 8.0 && factor <= 32.0, "rk4 order factor " + fmt(factor));

  const Chart c(ChartKind::Contact, 1);
  const std::vector<double> c0 = {0.0, 1.0, 1.0};
  const Trajectory decay = integrate(FieldSpec{c}, c.z(), c0, 0.0, 1.0, rk4);
  const double decay_err = std::max(std::abs(decay.states.back()[1] - std::exp(-1.0)),
                                    std::abs(decay.states.back()[2] - std::exp(-1.0)));
  ck.expect(decay_err <= 1e-6, "contact decay error " + fmt(decay_err));

  const Chart cc(ChartKind::Cocontact, 1);
  const std::vector<double> cc0 = {0.25, 0.3, 0.2, -0.1};
  const Trajectory gauge = integrate(FieldSpec{cc, FieldFamily::Hamiltonian, Gauge::One},
                                     cc.parse("p1^2/2 + t*q1^2 - z*q1/3"), cc0, 0.0, 1.5, rk4);
  double affine = 0.0;
  for (std::size_t i = 0; i < gauge.size(); ++i) {
    affine = std::max(affine, std::abs(gauge.states[i][cc.t_index()] - 0.25 - gauge.times[i]));
  }
  ck.expect(affine <= 1e-10, "gauge-one t channel " + fmt(affine));

  double worst_rate = 0.0;
  int rows = 0;
  for (ChartKind k : kKinds) {
    const Chart ch(k, 1);
    for (const FieldSpec& spec : all_field_specs(ch)) {
      ++rows;
      Poly h = ch.parse("p1^2/2 + q1^2/2");
      if (ch.has_time()) h += ch.parse("t*q1/4");
      if (ch.has_action() && spec.family != FieldFamily::Strict) h += ch.parse("z/2");
      std::vector<double> y(ch.dim(), 0.0);
      y[ch.q_index(1)] = 0.8;
      y[ch.p_index(1)] = -0.3;
      if (ch.has_action()) y[ch.z_index()] = 0.5;
      if (ch.has_time()) y[ch.t_index()] = 0.1;
      const double r = monitored_energy_rate(integrate(spec, h, y, 0.0, 1.0, rk4));
      worst_rate = std::max(worst_rate, r);
      ck.expect(r < 1e-5, spec.describe() + " energy-rate residual " + fmt(r));
    }
  }
  ck.note("return " + fmt(ret) + ", order factor " + fmt(factor) + ", decay " + fmt(decay_err) +
          ", t channel " + fmt(affine) + ", worst energy-rate residual " + fmt(worst_rate) + " over " +
          std::to_string(rows) + " rows");
  return ck;
}

// 7. Momentum-map intertwining and coefficient re-solve.
Check intertwining() {
  Check ck;
  for (const Chart& c : charts_n12()) {
    PolyGenerator gen(7000 + 10 * static_cast<int>(c.kind()) + c.n());
    PolyGenerator::Options o;
    o.max_degree = 2;
    const std::string tag = to_string(c.kind()) + " n=" + std::to_string(c.n());
    for (int i = 0; i < 50; ++i) {
      const Poly h = gen.poly(c, o);
      const OneFormExpr pi = random_form(c, gen, 2);
      ck.expect(intertwine_residual(c, h, pi).is_zero(), tag + " H=" + c.print(h));
    }
    const DensityCoefficients pinned = density_coefficients(c);
    const bool action = c.has_action();
    ck.expect(pinned.a == 1 && pinned.b == (action ? c.n() + 3 : 0) && pinned.c == 0,
              tag + " pinned coefficients");
    const DensityCoefficients solved = solve_density_coefficients(c, 12, 2024);
    ck.expect(solved.a == pinned.a && solved.b == pinned.b && solved.c == pinned.c,
              tag + " re-solved coefficients");
  }
  return ck;
}

// 8. Kinetic solvers.
double gauss2(double x, double y, double cx, double cy, double s) {
  return oracle::gaussian(x, cx, s) * oracle::gaussian(y, cy, s);
}

KineticConfig kinetic(double t_final, double dt, std::size_t particles) {
  KineticConfig k;
  k.t_final = t_final;
  k.dt = dt;
  k.particle_count = particles;
  return k;
}

Check kinetic_solvers() {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  const Chart s(ChartKind::Symplectic, 1);
  const std::vector<Axis> box = {{-4, 4, 64}, {-4, 4, 64}};

  // Free streaming, t = 0.5.
  {
    auto f0 = [](std::span<const double> x) { return gauss2(x[0], x[1], -1.0, 0.5, 0.5); };
    const GridDensity layout(s, box);
    const ParticleResult r = solve_density_particle(s, s.parse("p1^2/2"), f0, layout, kinetic(0.5, 0.01, 100000));
    const GridDensity exact = GridDensity::sample(
        s, box, [](std::span<const double> x) { return gauss2(x[0] - 0.5 * x[1], x[1], -1.0, 0.5, 0.5); },
        0.5);
    const double l1 = relative_l1(r.snapshots.back(), exact);
    ck.expect(l1 <= 0.02, "free streaming L1 " + fmt(l1));
    ck.note("free streaming L1 " + fmt(l1));
  }

  // Rigid rotation over a quarter period: (q, p) -> (q cos s + p sin s, p cos s - q sin s).
  {
    const double T = std::numbers::pi / 2;
    auto f0 = [](std::span<const double> x) { return gauss2(x[0], x[1], 1.5, 0.0, 0.6); };
    const GridDensity g0 = GridDensity::sample(s, box, f0);
    const GridDensity exact = GridDensity::sample(
        s, box, [](std::span<const double> x) { return gauss2(x[0], x[1], 0.0, -1.5, 0.6); }, T);
    const Poly h = s.parse("(q1^2 + p1^2)/2");
    const ParticleResult pr = solve_density_particle(s, h, f0, g0, kinetic(T, 0.01, 100000));
    const double l1 = relative_l1(pr.snapshots.back(), exact);
    ck.expect(l1 <= 0.02, "rotation particle L1 " + fmt(l1));
    // Mass bookkeeping with R^eta(H) = 0: deposit plus escapes equals the seeded mass.
    const double mass_err =
        std::abs(pr.snapshots.back().mass() + pr.escaped_mass - pr.initial_mass) / pr.initial_mass;
    ck.expect(mass_err <= 1e-10, "particle mass drift " + fmt(mass_err));

    const GridResult gr = solve_density_grid(s, h, g0, kinetic(T, 0.01, 0));
    const auto com = gr.snapshots.back().center_of_mass();
    const double cells = std::hypot(com[0] - 0.0, com[1] + 1.5) / box[0].width();
    ck.expect(cells <= 1.0, "grid rotation centre error " + fmt(cells) + " cells");
    const double grid_l1 = relative_l1(gr.snapshots.back(), exact);

    std::vector<Axis> periodic = box;
    for (Axis& a : periodic) a.boundary = Boundary::Periodic;
    const GridDensity p0 = GridDensity::sample(s, periodic, f0);
    const GridResult pg = solve_density_grid(s, h, p0, kinetic(T, 0.01, 0));
    const double grid_mass = std::abs(pg.snapshots.back().mass() - p0.mass()) / p0.mass();
    ck.expect(grid_mass <= 1e-10, "periodic grid mass drift " + fmt(grid_mass));
    ck.note("rotation particle L1 " + fmt(l1) + ", grid L1 " + fmt(grid_l1) + ", grid centre " +
            fmt(cells) + " cells, mass drift particle " + fmt(mass_err) + " grid " + fmt(grid_mass));
  }

  // Contact H = z: particle solver against the grid oracle at t = 0.5.
  {
    const Chart c(ChartKind::Contact, 1);
    const std::vector<Axis> axes = {{-1, 1, 1, Boundary::Periodic}, {-3, 3, 64}, {-3, 3, 64}};
    auto f0 = [](std::span<const double> x) { return gauss2(x[1], x[2], 0.0, 0.0, 1.0); };
    const GridDensity g0 = GridDensity::sample(c, axes, f0);
    const ParticleResult pr = solve_density_particle(c, c.z(), f0, g0, kinetic(0.5, 0.01, 100000));
    const GridResult gr = solve_density_grid(c, c.z(), g0, kinetic(0.5, 0.005, 0));
    const double l1 = relative_l1(pr.snapshots.back(), gr.snapshots.back());
    ck.expect(l1 <= 0.05, "contact particle vs grid L1 " + fmt(l1));
    // Closed form for reference only: characteristics contract by e^{-s} in
    // (p, z) and mass grows by e^{s}, so f = e^{3s} f0(e^{s} p, e^{s} z).
    const double T = 0.5;
    const GridDensity exact = GridDensity::sample(
        c, axes,
        [&](std::span<const double> x) {
          return std::exp(3 * T) * gauss2(x[1] * std::exp(T), x[2] * std::exp(T), 0.0, 0.0, 1.0);
        },
        T);
    ck.note("contact particle vs grid L1 " + fmt(l1) + " (vs closed form: particle " +
            fmt(relative_l1(pr.snapshots.back(), exact)) + ", grid " +
            fmt(relative_l1(gr.snapshots.back(), exact)) + ")");
  }

  const double secs = elapsed(t0);
  ck.expect(secs <= 300.0, "runtime " + fmt(secs) + " s");
  ck.note("runtime " + fmt(secs) + " s");
  return ck;
}

// 9. Musical round trips and Reeb identities.
Check musical() {
  Check ck;
  for (const Chart& c : charts_n12()) {
    PolyGenerator gen(9000 + 10 * static_cast<int>(c.kind()) + c.n());
    const std::string tag = to_string(c.kind()) + " n=" + std::to_string(c.n());
    for (int i = 0; i < 50; ++i) {
      const OneFormExpr a = random_form(c, gen, 3);
      ck.expect(flat(c, sharp(c, SharpVariant::Full, a)) == a, tag + " flat(sharp)");
    }
    // Structure forms built independently of canonical_forms.
    TwoFormExpr omega(c);
    for (int i = 1; i <= c.n(); ++i) {
      omega = omega + wedge(differential(c, c.q(i)), differential(c, c.p(i)));
    }
    OneFormExpr eta = differential(c, c.has_action() ? c.z() : c.zero());
    for (int i = 1; i <= c.n(); ++i) eta = eta - c.p(i) * differential(c, c.q(i));
    const OneFormExpr tau = differential(c, c.has_time() ? c.t() : c.zero());
    const OneFormExpr zero(c);

    if (auto r = reeb_tau(c)) {
      ck.expect(pairing(tau, *r) == c.constant(1), tag + " <tau, R_tau> = 1");
      ck.expect(contract(*r, omega) == zero, tag + " i_R_tau structure = 0");
      if (c.has_action()) ck.expect(pairing(eta, *r).is_zero(), tag + " <eta, R_tau> = 0");
    }
    if (auto r = reeb_eta(c)) {
      ck.expect(exterior_derivative(eta) == omega, tag + " d eta = dq ^ dp");
      ck.expect(pairing(eta, *r) == c.constant(1), tag + " <eta, R_eta> = 1");
      ck.expect(contract(*r, exterior_derivative(eta)) == zero, tag + " i_R_eta d eta = 0");
      if (c.has_time()) ck.expect(pairing(tau, *r).is_zero(), tag + " <tau, R_eta> = 0");
    }
    ck.expect(reeb_tau(c).has_value() == c.has_time(), tag + " R_tau presence");
    ck.expect(reeb_eta(c).has_value() == c.has_action(), tag + " R_eta presence");
  }
  return ck;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"bracket laws", bracket_laws},
      {"almost-Poisson Jacobi failure witness", jacobi_failure_witness},
      {"field catalog", field_catalog},
      {"homomorphism laws", homomorphisms},
      {"conformal Lie-derivative laws", conformal_laws},
      {"flow physics", flow_physics},
      {"momentum-map intertwining", intertwining},
      {"kinetic solvers", kinetic_solvers},
      {"musical round trips and Reeb identities", musical},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check ck;
    try {
      ck = criteria[i].second();
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    if (!ck.passed()) ++failed;
    std::printf("criterion %zu %s: %s (%s; %.1f s)\n", i + 1, criteria[i].first, ck.passed() ? "PASS" : "FAIL",
                ck.detail().c_str(), elapsed(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
