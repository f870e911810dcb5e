#include "geokin/kinetics.hpp"

#include <array>
#include <set>

#include "geokin/calculus.hpp"
#include "geokin/error.hpp"
#include "geokin/musical.hpp"
#include "geokin/random.hpp"

namespace geokin {

Poly momentum_map(const Chart& chart, const OneFormExpr& pi) {
  Poly f = divergence(sharp(chart, SharpVariant::Full, pi));
  if (chart.has_time()) {
    f -= apply(*reeb_tau(chart), pairing(pi, *reeb_tau(chart)));
  }
  if (chart.has_action()) {
    const Poly pi_z = pairing(pi, *reeb_eta(chart));
    f -= apply(*reeb_eta(chart), pi_z) + pi_z;
  }
  return f;
}

BracketKind density_bracket(ChartKind kind) {
  switch (kind) {
    case ChartKind::Symplectic: return BracketKind::PoissonSymplectic;
    case ChartKind::Cosymplectic: return BracketKind::PoissonCosymplectic;
    case ChartKind::Contact: return BracketKind::JacobiContact;
    case ChartKind::Cocontact: return BracketKind::JacobiCocontact;
  }
  return BracketKind::PoissonSymplectic;
}

VectorFieldExpr kinetic_field(const Chart& chart, const Poly& h) {
  return make_field(FieldSpec{chart, FieldFamily::Hamiltonian, Gauge::Zero}, h);
}

OneFormExpr momentum_vlasov_rhs(const Chart& chart, const Poly& h, const OneFormExpr& pi) {
  const VectorFieldExpr x = kinetic_field(chart, h);
  OneFormExpr rhs = OneFormExpr(chart) - lie_derivative(x, pi);
  if (chart.has_action()) {
    rhs = rhs + (Rational(chart.n() + 1) * partial(h, chart.z_index())) * pi;
  }
  return rhs;
}

DensityCoefficients density_coefficients(const Chart& chart) {
  switch (chart.kind()) {
    case ChartKind::Symplectic:
    case ChartKind::Cosymplectic: return {Rational(1), Rational(0), Rational(0)};
    case ChartKind::Contact:
    case ChartKind::Cocontact: return {Rational(1), Rational(chart.n() + 3), Rational(0)};
  }
  return {Rational(1), Rational(0), Rational(0)};
}

namespace {

Poly h_t(const Chart& c, const Poly& h) { return c.has_time() ? partial(h, c.t_index()) : c.zero(); }
Poly h_z(const Chart& c, const Poly& h) { return c.has_action() ? partial(h, c.z_index()) : c.zero(); }

}  // namespace

Poly density_vlasov_rhs(const Chart& chart, const Poly& h, const Poly& f,
                        const DensityCoefficients& k) {
  chart.require(h, "density_vlasov_rhs");
  chart.require(f, "density_vlasov_rhs");
  Poly rhs = k.a * bracket(density_bracket(chart.kind()), chart, h, f);
  if (k.b != 0) rhs += k.b * (f * h_z(chart, h));
  if (k.c != 0) rhs += k.c * (f * h_t(chart, h));
  return rhs;
}

Poly density_vlasov_rhs(const Chart& chart, const Poly& h, const Poly& f) {
  return density_vlasov_rhs(chart, h, f, density_coefficients(chart));
}

Poly intertwine_residual(const Chart& chart, const Poly& h, const OneFormExpr& pi) {
  return momentum_map(chart, momentum_vlasov_rhs(chart, h, pi)) -
         density_vlasov_rhs(chart, h, momentum_map(chart, pi));
}

DensityCoefficients solve_density_coefficients(const Chart& chart, int samples,
                                               std::uint64_t seed) {
  PolyGenerator gen(seed);
  const BracketKind kind = density_bracket(chart.kind());
  // Augmented rows [B1 B2 B3 | T], one per monomial per sample.
  std::vector<std::array<Rational, 4>> rows;
  for (int s = 0; s < samples; ++s) {
    const Poly h = gen.poly(chart);
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < chart.dim(); ++i) comps.push_back(gen.poly(chart));
    const OneFormExpr pi(chart, comps);
    const Poly f = momentum_map(chart, pi);
    const Poly target = momentum_map(chart, momentum_vlasov_rhs(chart, h, pi));
    const std::array<Poly, 4> cols = {bracket(kind, chart, h, f), f * h_z(chart, h),
                                      f * h_t(chart, h), target};
    std::set<Exponents, GrlexLess> monos;
    for (const auto& c : cols) {
      for (const auto& [e, v] : c.terms()) monos.insert(e);
    }
    for (const auto& e : monos) {
      rows.push_back({cols[0].coefficient(e), cols[1].coefficient(e), cols[2].coefficient(e),
                      cols[3].coefficient(e)});
    }
  }

  // Gauss-Jordan elimination with exact arithmetic.
  std::array<int, 3> pivot_row = {-1, -1, -1};
  std::size_t next = 0;
  for (int col = 0; col < 3; ++col) {
    std::size_t r = next;
    while (r < rows.size() && rows[r][col] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[next]);
    const Rational inv = Rational(1) / rows[next][col];
    for (auto& v : rows[next]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next || rows[i][col] == 0) continue;
      const Rational factor = rows[i][col];
      for (int j = 0; j < 4; ++j) rows[i][j] -= factor * rows[next][j];
    }
    pivot_row[col] = static_cast<int>(next);
    ++next;
  }
  for (std::size_t i = next; i < rows.size(); ++i) {
    if (rows[i][3] != 0) {
      throw Error("density coefficient system is inconsistent on " + to_string(chart.kind()) +
                  " chart");
    }
  }
  std::array<Rational, 3> x = {Rational(0), Rational(0), Rational(0)};
  for (int col = 0; col < 3; ++col) {
    if (pivot_row[col] >= 0) x[col] = rows[pivot_row[col]][3];
  }
  return {x[0], x[1], x[2]};
}

Poly pairing_integrand(const Chart& chart, const Poly& h, const OneFormExpr& pi) {
  return pairing(pi, kinetic_field(chart, h));
}

VectorFieldExpr pairing_divergence_witness(const Chart& chart, const Poly& h,
                                           const OneFormExpr& pi) {
  return (-h) * sharp(chart, SharpVariant::Bivector, pi);
}

Poly density_source(const Chart& chart, const Poly& h, const DensityCoefficients& k) {
  // {H, f} = -X_H(f) + {H, 1} f for every bracket here.
  const Poly one = chart.constant(1);
  Poly s = k.a * bracket(density_bracket(chart.kind()), chart, h, one);
  if (k.b != 0) s += k.b * h_z(chart, h);
  if (k.c != 0) s += k.c * h_t(chart, h);
  return s;
}

Poly weight_rate(const Chart& chart, const Poly& h, const DensityCoefficients& k) {
  return density_source(chart, h, k) + k.a * divergence(kinetic_field(chart, h));
}

}  // namespace geokin
