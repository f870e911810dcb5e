#pragma once

#include "geokin/chart.hpp"

namespace geokin {

// Full: the isomorphism induced by the structure forms.
// Bivector: the map induced by the Jacobi/Poisson bivector alone, i.e. Full
// minus the Reeb components <alpha, R> R.
enum class SharpVariant { Full, Bivector };

VectorFieldExpr sharp(const Chart& chart, SharpVariant variant, const OneFormExpr& alpha);

// Inverse of sharp(Full):
//   symplectic   i_X Omega
//   cosymplectic i_X Omega + <tau,X> tau
//   contact      i_X d eta + <eta,X> eta
//   cocontact    <tau,X> tau + i_X d eta + <eta,X> eta
OneFormExpr flat(const Chart& chart, const VectorFieldExpr& x);

// flat(sharp(Full, alpha)) - alpha; identically zero by construction.
OneFormExpr sharp_flat_residual(const Chart& chart, const OneFormExpr& alpha);

// Lambda(alpha, beta) = <alpha, sharp(Bivector, beta)>, so that
// Lambda(dF, dH) is the bivector part of {F, H}.
Poly bivector(const Chart& chart, const OneFormExpr& alpha, const OneFormExpr& beta);

}  // namespace geokin
