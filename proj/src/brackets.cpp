#include "geokin/brackets.hpp"

#include "geokin/calculus.hpp"
#include "geokin/error.hpp"
#include "geokin/musical.hpp"

namespace geokin {

std::string to_string(BracketKind kind) {
  switch (kind) {
    case BracketKind::PoissonSymplectic: return "poisson-symplectic";
    case BracketKind::PoissonCosymplectic: return "poisson-cosymplectic";
    case BracketKind::AlmostPoissonContact: return "almost-poisson-contact";
    case BracketKind::AlmostPoissonCocontact: return "almost-poisson-cocontact";
    case BracketKind::JacobiContact: return "jacobi-contact";
    case BracketKind::JacobiCocontact: return "jacobi-cocontact";
  }
  return "?";
}

BracketKind bracket_kind_from_string(std::string_view name) {
  for (auto k : {BracketKind::PoissonSymplectic, BracketKind::PoissonCosymplectic,
                 BracketKind::AlmostPoissonContact, BracketKind::AlmostPoissonCocontact,
                 BracketKind::JacobiContact, BracketKind::JacobiCocontact}) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown bracket kind '" + std::string(name) + "'");
}

ChartKind chart_kind_of(BracketKind kind) {
  switch (kind) {
    case BracketKind::PoissonSymplectic: return ChartKind::Symplectic;
    case BracketKind::PoissonCosymplectic: return ChartKind::Cosymplectic;
    case BracketKind::AlmostPoissonContact:
    case BracketKind::JacobiContact: return ChartKind::Contact;
    case BracketKind::AlmostPoissonCocontact:
    case BracketKind::JacobiCocontact: return ChartKind::Cocontact;
  }
  return ChartKind::Symplectic;
}

bool is_jacobi(BracketKind kind) {
  return kind == BracketKind::JacobiContact || kind == BracketKind::JacobiCocontact;
}

bool is_almost_poisson(BracketKind kind) {
  return kind == BracketKind::AlmostPoissonContact || kind == BracketKind::AlmostPoissonCocontact;
}

namespace {

void check(BracketKind kind, const Chart& chart) {
  if (chart.kind() != chart_kind_of(kind)) {
    throw ChartKindError(to_string(kind) + " bracket is not defined on a " +
                         to_string(chart.kind()) + " chart");
  }
}

}  // namespace

Poly bracket(BracketKind kind, const Chart& chart, const Poly& f, const Poly& h) {
  check(kind, chart);
  chart.require(f, "bracket");
  chart.require(h, "bracket");
  Poly out = chart.zero();
  for (int i = 1; i <= chart.n(); ++i) {
    const std::size_t qi = chart.q_index(i);
    const std::size_t pi = chart.p_index(i);
    out += partial(f, qi) * partial(h, pi) - partial(f, pi) * partial(h, qi);
  }
  if (!chart.has_action()) return out;

  const std::size_t zi = chart.z_index();
  const Poly fz = partial(f, zi);
  const Poly hz = partial(h, zi);
  if (is_almost_poisson(kind)) {
    for (int i = 1; i <= chart.n(); ++i) {
      const std::size_t pi = chart.p_index(i);
      out += chart.p(i) * (fz * partial(h, pi) - partial(f, pi) * hz);
    }
  } else {
    Poly f_euler = f;
    Poly h_euler = h;
    for (int i = 1; i <= chart.n(); ++i) {
      const std::size_t pi = chart.p_index(i);
      f_euler -= chart.p(i) * partial(f, pi);
      h_euler -= chart.p(i) * partial(h, pi);
    }
    out += f_euler * hz - h_euler * fz;
  }
  return out;
}

Poly bracket_via_bivector(BracketKind kind, const Chart& chart, const Poly& f, const Poly& h) {
  check(kind, chart);
  Poly out = bivector(chart, differential(chart, f), differential(chart, h));
  if (is_jacobi(kind)) {
    const VectorFieldExpr r = *reeb_eta(chart);
    out += f * apply(r, h) - h * apply(r, f);
  }
  return out;
}

Poly jacobiator(BracketKind kind, const Chart& chart, const Poly& f, const Poly& g,
                const Poly& h) {
  auto b = [&](const Poly& a, const Poly& c) { return bracket(kind, chart, a, c); };
  return b(b(f, g), h) + b(b(g, h), f) + b(b(h, f), g);
}

Poly leibniz_defect(BracketKind kind, const Chart& chart, const Poly& f, const Poly& k,
                    const Poly& h) {
  auto b = [&](const Poly& a, const Poly& c) { return bracket(kind, chart, a, c); };
  return b(f, k * h) - k * b(f, h) - h * b(f, k);
}

}  // namespace geokin
