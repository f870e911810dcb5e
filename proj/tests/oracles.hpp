#pragma once

// Closed-form coordinate expressions used as independent references in the
// tests. Nothing here goes through the musical map or the library's own
// bracket/field builders.

#include <cmath>
#include <numbers>

#include "geokin/calculus.hpp"
#include "geokin/chart.hpp"
#include "geokin/fields.hpp"

namespace oracle {

using geokin::Chart;
using geokin::FieldFamily;
using geokin::FieldSpec;
using geokin::Gauge;
using geokin::OneFormExpr;
using geokin::Poly;
using geokin::VectorFieldExpr;

inline Poly d(const Poly& f, std::size_t i) { return geokin::partial(f, i); }

inline Poly hz(const Chart& c, const Poly& h) { return c.has_action() ? d(h, c.z_index()) : c.zero(); }
inline Poly ht(const Chart& c, const Poly& h) { return c.has_time() ? d(h, c.t_index()) : c.zero(); }

// sum_i p_i dF/dp_i
inline Poly euler_p(const Chart& c, const Poly& f) {
  Poly s = c.zero();
  for (int i = 1; i <= c.n(); ++i) s += c.p(i) * d(f, c.p_index(i));
  return s;
}

// sum_i F_qi H_pi - F_pi H_qi
inline Poly poisson(const Chart& c, const Poly& f, const Poly& h) {
  Poly s = c.zero();
  for (int i = 1; i <= c.n(); ++i) {
    s += d(f, c.q_index(i)) * d(h, c.p_index(i)) - d(f, c.p_index(i)) * d(h, c.q_index(i));
  }
  return s;
}

// Poisson part plus p_i (F_z H_pi - F_pi H_z).
inline Poly almost_poisson(const Chart& c, const Poly& f, const Poly& h) {
  Poly s = poisson(c, f, h);
  for (int i = 1; i <= c.n(); ++i) {
    s += c.p(i) * (d(f, c.z_index()) * d(h, c.p_index(i)) - d(f, c.p_index(i)) * d(h, c.z_index()));
  }
  return s;
}

inline Poly jacobi(const Chart& c, const Poly& f, const Poly& h) {
  return almost_poisson(c, f, h) + f * d(h, c.z_index()) - h * d(f, c.z_index());
}

// Jacobi bracket where there is an action coordinate, Poisson otherwise.
inline Poly canonical_bracket(const Chart& c, const Poly& f, const Poly& h) {
  return c.has_action() ? jacobi(c, f, h) : poisson(c, f, h);
}

inline Poly gauge_coefficient(const FieldSpec& s, const Poly& h) {
  switch (s.gauge) {
    case Gauge::Zero: return s.chart.zero();
    case Gauge::One: return s.chart.constant(1);
    case Gauge::GradH: return ht(s.chart, h);
  }
  return s.chart.zero();
}

// Coordinate form of every field row:
//   t' = g,  q' = H_p,  p' = -H_q - p H_z,
//   z' = p H_p - H (hamiltonian, strict) or p H_p (energy).
inline VectorFieldExpr field(const FieldSpec& s, const Poly& h) {
  const Chart& c = s.chart;
  VectorFieldExpr x(c);
  if (c.has_time()) x[c.t_index()] = gauge_coefficient(s, h);
  for (int i = 1; i <= c.n(); ++i) {
    x[c.q_index(i)] = d(h, c.p_index(i));
    x[c.p_index(i)] = -d(h, c.q_index(i)) - c.p(i) * hz(c, h);
  }
  if (c.has_action()) {
    x[c.z_index()] = euler_p(c, h);
    if (s.family != FieldFamily::Energy) x[c.z_index()] -= h;
  }
  return x;
}

// Divergence column of the field tables.
inline Poly divergence(const FieldSpec& s, const Poly& h) {
  const Chart& c = s.chart;
  const geokin::Rational n(c.n());
  Poly div = c.zero();
  if (c.has_action()) {
    if (s.family == FieldFamily::Hamiltonian) div = -(n + 1) * hz(c, h);
    if (s.family == FieldFamily::Energy) div = -n * hz(c, h);
  }
  if (s.gauge == Gauge::GradH) div += d(ht(c, h), c.t_index());
  return div;
}

// X(H) column of the field tables.
inline Poly energy_rate(const FieldSpec& s, const Poly& h) {
  const Chart& c = s.chart;
  Poly r = gauge_coefficient(s, h) * ht(c, h);
  if (c.has_action() && s.family == FieldFamily::Hamiltonian) r -= hz(c, h) * h;
  return r;
}

// i_X eta column.
inline Poly iota_eta(const FieldSpec& s, const Poly& h) {
  return s.family == FieldFamily::Energy ? s.chart.zero() : -h;
}

// i_X of dq^dp: dH - H_z eta - H_t tau, without the eta term for strict rows.
inline OneFormExpr iota_structure(const FieldSpec& s, const Poly& h) {
  const Chart& c = s.chart;
  OneFormExpr a = geokin::differential(c, h);
  if (c.has_time()) a[c.t_index()] = c.zero();
  if (c.has_action() && s.family != FieldFamily::Strict) {
    a[c.z_index()] = c.zero();
    for (int i = 1; i <= c.n(); ++i) a[c.q_index(i)] += c.p(i) * hz(c, h);
  }
  return a;
}

inline double gaussian(double x, double mu, double sigma) {
  const double u = (x - mu) / sigma;
  return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

}  // namespace oracle
