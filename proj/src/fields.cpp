#include "geokin/fields.hpp"

#include "geokin/error.hpp"
#include "geokin/musical.hpp"

namespace geokin {

std::string to_string(FieldFamily family) {
  switch (family) {
    case FieldFamily::Hamiltonian: return "hamiltonian";
    case FieldFamily::Energy: return "energy";
    case FieldFamily::Strict: return "strict";
  }
  return "?";
}

std::string to_string(Gauge gauge) {
  switch (gauge) {
    case Gauge::Zero: return "zero";
    case Gauge::One: return "one";
    case Gauge::GradH: return "gradH";
  }
  return "?";
}

FieldFamily field_family_from_string(std::string_view name) {
  if (name == "hamiltonian") return FieldFamily::Hamiltonian;
  if (name == "energy") return FieldFamily::Energy;
  if (name == "strict") return FieldFamily::Strict;
  throw InvalidFieldSpec("unknown field family '" + std::string(name) + "'");
}

Gauge gauge_from_string(std::string_view name) {
  if (name == "zero") return Gauge::Zero;
  if (name == "one") return Gauge::One;
  if (name == "gradH") return Gauge::GradH;
  throw InvalidFieldSpec("unknown gauge '" + std::string(name) + "'");
}

void FieldSpec::validate() const {
  if (!chart.has_action() && family != FieldFamily::Hamiltonian) {
    throw InvalidFieldSpec(to_string(family) + " family requires a contact or cocontact chart");
  }
  if (!chart.has_time() && gauge != Gauge::Zero) {
    throw InvalidFieldSpec("gauge " + to_string(gauge) + " requires a chart with a time coordinate");
  }
}

std::string FieldSpec::describe() const {
  std::string s = to_string(chart.kind()) + " n=" + std::to_string(chart.n()) + " " +
                  to_string(family);
  if (chart.has_time()) s += "/" + to_string(gauge);
  return s;
}

std::vector<FieldSpec> all_field_specs(const Chart& chart) {
  std::vector<FieldSpec> out;
  const std::vector<FieldFamily> families =
      chart.has_action()
          ? std::vector<FieldFamily>{FieldFamily::Hamiltonian, FieldFamily::Energy,
                                     FieldFamily::Strict}
          : std::vector<FieldFamily>{FieldFamily::Hamiltonian};
  const std::vector<Gauge> gauges = chart.has_time()
                                        ? std::vector<Gauge>{Gauge::Zero, Gauge::One, Gauge::GradH}
                                        : std::vector<Gauge>{Gauge::Zero};
  for (auto f : families) {
    for (auto g : gauges) out.push_back(FieldSpec{chart, f, g});
  }
  return out;
}

namespace {

Poly gauge_coefficient(const FieldSpec& spec, const Poly& h) {
  const Chart& c = spec.chart;
  switch (spec.gauge) {
    case Gauge::Zero: return c.zero();
    case Gauge::One: return c.constant(1);
    case Gauge::GradH: return partial(h, c.t_index());
  }
  return c.zero();
}

void check_inputs(const FieldSpec& spec, const Poly& h) {
  spec.validate();
  spec.chart.require(h, "field");
  if (spec.family == FieldFamily::Strict && h.depends_on(spec.chart.z_index())) {
    throw InvalidFieldSpec("strict family requires a Hamiltonian independent of z");
  }
}

Poly h_t(const Chart& c, const Poly& h) { return c.has_time() ? partial(h, c.t_index()) : c.zero(); }
Poly h_z(const Chart& c, const Poly& h) { return c.has_action() ? partial(h, c.z_index()) : c.zero(); }

}  // namespace

VectorFieldExpr make_field(const FieldSpec& spec, const Poly& h) {
  check_inputs(spec, h);
  const Chart& c = spec.chart;
  VectorFieldExpr x = sharp(c, SharpVariant::Full, differential(c, h));
  if (c.has_time()) {
    x = x + (gauge_coefficient(spec, h) - h_t(c, h)) * *reeb_tau(c);
  }
  if (c.has_action()) {
    Poly coeff = c.zero();
    switch (spec.family) {
      case FieldFamily::Hamiltonian: coeff = h_z(c, h) + h; break;
      case FieldFamily::Energy: coeff = h_z(c, h); break;
      case FieldFamily::Strict: coeff = h; break;
    }
    x = x - coeff * *reeb_eta(c);
  }
  return x;
}

FieldDiagnostics diagnostics(const FieldSpec& spec, const Poly& h) {
  check_inputs(spec, h);
  const Chart& c = spec.chart;
  const Poly ht = h_t(c, h);
  const Poly hz = h_z(c, h);
  const Rational n(c.n());

  FieldDiagnostics d{c.zero(), c.zero(), std::nullopt, std::nullopt};
  if (c.has_action()) {
    switch (spec.family) {
      case FieldFamily::Hamiltonian:
        d.divergence = Rational(-(n + 1)) * hz;
        d.dH_along_flow = -(hz * h);
        d.conformal_eta = -hz;
        break;
      case FieldFamily::Energy:
        d.divergence = Rational(-n) * hz;
        d.conformal_eta = -hz;
        break;
      case FieldFamily::Strict:
        d.conformal_eta = c.zero();
        break;
    }
  }
  if (c.has_time()) {
    switch (spec.gauge) {
      case Gauge::Zero: break;
      case Gauge::One: d.dH_along_flow += ht; break;
      case Gauge::GradH:
        d.divergence += partial(ht, c.t_index());
        d.dH_along_flow += ht * ht;
        break;
    }
    if (c.has_action()) d.conformal_tau = -ht;
  }
  return d;
}

ContractionLaws expected_contractions(const FieldSpec& spec, const Poly& h) {
  check_inputs(spec, h);
  const Chart& c = spec.chart;
  const CanonicalForms forms = canonical_forms(c);
  OneFormExpr structure = differential(c, h);
  std::optional<Poly> eta;
  std::optional<Poly> tau;
  if (c.has_action()) {
    if (spec.family != FieldFamily::Strict) structure = structure - h_z(c, h) * *forms.eta;
    eta = spec.family == FieldFamily::Energy ? c.zero() : -h;
  }
  if (c.has_time()) {
    structure = structure - h_t(c, h) * *forms.tau;
    tau = gauge_coefficient(spec, h);
  }
  return ContractionLaws{structure, eta, tau};
}

LieDerivativeLaws expected_lie_derivatives(const FieldSpec& spec, const Poly& h) {
  check_inputs(spec, h);
  const Chart& c = spec.chart;
  const CanonicalForms forms = canonical_forms(c);
  const Poly ht = h_t(c, h);
  const Poly hz = h_z(c, h);

  std::optional<OneFormExpr> tau;
  std::optional<OneFormExpr> eta;
  TwoFormExpr structure(c);
  if (c.has_time()) {
    tau = spec.gauge == Gauge::GradH ? differential(c, ht) : OneFormExpr(c);
    structure = structure - wedge(differential(c, ht), *forms.tau);
  }
  if (c.has_action()) {
    OneFormExpr e(c);
    switch (spec.family) {
      case FieldFamily::Hamiltonian: e = (-hz) * *forms.eta; break;
      case FieldFamily::Energy: e = differential(c, h) - hz * *forms.eta; break;
      case FieldFamily::Strict: break;
    }
    if (c.has_time()) e = e - ht * *forms.tau;
    eta = e;
    if (spec.family != FieldFamily::Strict) {
      structure = structure - wedge(differential(c, hz), *forms.eta) - hz * forms.structure;
    }
  }
  return LieDerivativeLaws{tau, eta, structure};
}

}  // namespace geokin
