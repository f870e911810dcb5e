#pragma once

#include <string>
#include <string_view>

#include "geokin/chart.hpp"

namespace geokin {

enum class BracketKind {
  PoissonSymplectic,
  PoissonCosymplectic,
  AlmostPoissonContact,
  AlmostPoissonCocontact,
  JacobiContact,
  JacobiCocontact,
};

std::string to_string(BracketKind kind);
BracketKind bracket_kind_from_string(std::string_view name);

// Chart kind each bracket lives on.
ChartKind chart_kind_of(BracketKind kind);
bool is_jacobi(BracketKind kind);
bool is_almost_poisson(BracketKind kind);

// Coordinate formula for {F, H}:
//   Poisson       F_q H_p - F_p H_q
//   almost-Poisson  ... + p F_z H_p - p F_p H_z
//   Jacobi          ... + (F - p F_p) H_z - (H - p H_p) F_z
Poly bracket(BracketKind kind, const Chart& chart, const Poly& f, const Poly& h);

// Same bracket assembled from the musical bivector:
//   Lambda(dF, dH) (+ F R^eta(H) - H R^eta(F) for Jacobi kinds).
Poly bracket_via_bivector(BracketKind kind, const Chart& chart, const Poly& f, const Poly& h);

// {{F,G},H} + {{G,H},F} + {{H,F},G}
Poly jacobiator(BracketKind kind, const Chart& chart, const Poly& f, const Poly& g,
                const Poly& h);

// {F, K H} - K {F, H} - H {F, K}
Poly leibniz_defect(BracketKind kind, const Chart& chart, const Poly& f, const Poly& k,
                    const Poly& h);

}  // namespace geokin
