#pragma once

#include <cstdint>

#include "geokin/brackets.hpp"
#include "geokin/chart.hpp"
#include "geokin/fields.hpp"

namespace geokin {

// Density f dual to a momentum one-form Pi:
//   f = div sharp(Pi) - R^tau<Pi,R^tau> - R^eta<Pi,R^eta> - <Pi,R^eta>
// with the Reeb terms present only where the chart has them.
Poly momentum_map(const Chart& chart, const OneFormExpr& pi);

// Bracket kind paired with each chart for density dynamics.
BracketKind density_bracket(ChartKind kind);

// Hamiltonian field used by the kinetic equations (Hamiltonian family, gauge
// Zero where a gauge exists).
VectorFieldExpr kinetic_field(const Chart& chart, const Poly& h);

// d Pi/ds = -L_X Pi + (n+1) R^eta(H) Pi, the last term only on charts with an
// action coordinate (it is -div(X) Pi).
OneFormExpr momentum_vlasov_rhs(const Chart& chart, const Poly& h, const OneFormExpr& pi);

// df/ds = a {H, f} + b f R^eta(H) + c f R^tau(H).
struct DensityCoefficients {
  Rational a;
  Rational b;
  Rational c;
};

// Frozen coefficients. They make intertwine_residual vanish identically; see
// solve_density_coefficients for the system that produces them.
DensityCoefficients density_coefficients(const Chart& chart);

Poly density_vlasov_rhs(const Chart& chart, const Poly& h, const Poly& f,
                        const DensityCoefficients& k);
Poly density_vlasov_rhs(const Chart& chart, const Poly& h, const Poly& f);

// momentum_map(momentum_vlasov_rhs(Pi)) - density_vlasov_rhs(momentum_map(Pi)).
Poly intertwine_residual(const Chart& chart, const Poly& h, const OneFormExpr& pi);

// Solves for (a, b, c) from `samples` random (H, Pi) pairs by exact Gaussian
// elimination over every monomial coefficient. Columns whose basis term is
// identically zero on the chart get coefficient 0. Throws Error if the system
// is inconsistent.
DensityCoefficients solve_density_coefficients(const Chart& chart, int samples,
                                               std::uint64_t seed);

// Pointwise L2-pairing integrand <Pi, X_H> and its split
//   <Pi, X_H> = H f + div(W),  W = -H sharp_Lambda(Pi).
Poly pairing_integrand(const Chart& chart, const Poly& h, const OneFormExpr& pi);
VectorFieldExpr pairing_divergence_witness(const Chart& chart, const Poly& h,
                                           const OneFormExpr& pi);

// Growth rate of a particle weight along the kinetic flow: the density source
// term of density_vlasov_rhs plus div of the advecting field.
Poly weight_rate(const Chart& chart, const Poly& h, const DensityCoefficients& k);

// Source term S with df/ds = -a X_H(f) + S f, equivalent to density_vlasov_rhs.
Poly density_source(const Chart& chart, const Poly& h, const DensityCoefficients& k);

}  // namespace geokin
