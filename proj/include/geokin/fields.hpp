#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geokin/calculus.hpp"
#include "geokin/chart.hpp"

namespace geokin {

enum class FieldFamily { Hamiltonian, Energy, Strict };

// Coefficient of R^tau relative to the bivector part: 0, 1 or R^tau(H).
// Meaningful on cosymplectic and cocontact charts only.
enum class Gauge { Zero, One, GradH };

std::string to_string(FieldFamily family);
std::string to_string(Gauge gauge);
FieldFamily field_family_from_string(std::string_view name);
Gauge gauge_from_string(std::string_view name);

struct FieldSpec {
  Chart chart;
  FieldFamily family = FieldFamily::Hamiltonian;
  Gauge gauge = Gauge::Zero;

  // Throws InvalidFieldSpec for combinations the chart does not support.
  void validate() const;
  std::string describe() const;
};

// Every valid (family, gauge) row for a chart: 1 symplectic, 3 cosymplectic,
// 3 contact, 9 cocontact.
std::vector<FieldSpec> all_field_specs(const Chart& chart);

// Builds the field through the musical isomorphism:
//   X = sharp(dH) + (g - R^tau(H)) R^tau - c R^eta
// with g the gauge coefficient and c = R^eta(H) + H, R^eta(H) or H for the
// Hamiltonian, energy and strict families. Strict rows require dH/dz = 0.
VectorFieldExpr make_field(const FieldSpec& spec, const Poly& h);

// Closed-form predictions for a field row.
struct FieldDiagnostics {
  Poly divergence;
  Poly dH_along_flow;                 // X(H)
  std::optional<Poly> conformal_eta;  // coefficient of eta in L_X eta
  std::optional<Poly> conformal_tau;  // coefficient of tau in L_X eta
};

FieldDiagnostics diagnostics(const FieldSpec& spec, const Poly& h);

// Predicted contractions defining the row: i_X of the structure two-form
// (Omega or d eta), i_X eta and i_X tau where present.
struct ContractionLaws {
  OneFormExpr structure;
  std::optional<Poly> eta;
  std::optional<Poly> tau;
};

ContractionLaws expected_contractions(const FieldSpec& spec, const Poly& h);

// Predicted Lie derivatives of tau, eta and the structure two-form.
struct LieDerivativeLaws {
  std::optional<OneFormExpr> tau;
  std::optional<OneFormExpr> eta;
  TwoFormExpr structure;
};

LieDerivativeLaws expected_lie_derivatives(const FieldSpec& spec, const Poly& h);

}  // namespace geokin
