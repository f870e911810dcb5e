#pragma once

#include "geokin/chart.hpp"

// Coordinate Cartan calculus on polynomial forms and fields.
namespace geokin {

// X(F) = X^i dF/dx^i.
Poly apply(const VectorFieldExpr& x, const Poly& f);

// Coordinate divergence sum_i dX^i/dx^i (the chart volume density is 1).
Poly divergence(const VectorFieldExpr& x);

// Jacobi-Lie bracket [X,Y]^i = X^j dY^i/dx^j - Y^j dX^i/dx^j.
VectorFieldExpr lie_bracket(const VectorFieldExpr& x, const VectorFieldExpr& y);

// (d alpha)_ij = d_i alpha_j - d_j alpha_i.
TwoFormExpr exterior_derivative(const OneFormExpr& alpha);

// (alpha ^ beta)_ij = alpha_i beta_j - alpha_j beta_i.
TwoFormExpr wedge(const OneFormExpr& alpha, const OneFormExpr& beta);

// (i_X w)_j = X^i w_ij.
OneFormExpr contract(const VectorFieldExpr& x, const TwoFormExpr& w);

// (L_X alpha)_j = X^i d_i alpha_j + alpha_i d_j X^i.
OneFormExpr lie_derivative(const VectorFieldExpr& x, const OneFormExpr& alpha);

// (L_X w)_ij = X^k d_k w_ij + w_kj d_i X^k + w_ik d_j X^k.
TwoFormExpr lie_derivative(const VectorFieldExpr& x, const TwoFormExpr& w);

}  // namespace geokin
