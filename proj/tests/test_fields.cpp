#include <gtest/gtest.h>

#include "geokin/calculus.hpp"
#include "geokin/error.hpp"
#include "geokin/fields.hpp"
#include "geokin/random.hpp"
#include "oracles.hpp"

using namespace geokin;

namespace {

VectorFieldExpr field(const Chart& c, std::vector<const char*> comps) {
  std::vector<Poly> out;
  for (const char* s : comps) out.push_back(c.parse(s));
  return VectorFieldExpr(c, out);
}

std::vector<Chart> all_charts() {
  std::vector<Chart> out;
  for (ChartKind k : {ChartKind::Symplectic, ChartKind::Cosymplectic, ChartKind::Contact,
                      ChartKind::Cocontact}) {
    for (int n : {1, 2}) out.emplace_back(k, n);
  }
  return out;
}

Poly random_h(const FieldSpec& spec, PolyGenerator& gen) {
  PolyGenerator::Options o;
  o.allow_z = spec.family != FieldFamily::Strict;
  return gen.poly(spec.chart, o);
}

}  // namespace

TEST(Fields, Catalog) {
  EXPECT_EQ(all_field_specs(Chart(ChartKind::Symplectic, 1)).size(), 1u);
  EXPECT_EQ(all_field_specs(Chart(ChartKind::Cosymplectic, 1)).size(), 3u);
  EXPECT_EQ(all_field_specs(Chart(ChartKind::Contact, 1)).size(), 3u);
  EXPECT_EQ(all_field_specs(Chart(ChartKind::Cocontact, 1)).size(), 9u);
  for (const Chart& c : all_charts()) {
    for (const auto& s : all_field_specs(c)) EXPECT_NO_THROW(s.validate());
  }
}

TEST(Fields, InvalidSpecs) {
  const Chart s(ChartKind::Symplectic, 1);
  EXPECT_THROW((FieldSpec{s, FieldFamily::Energy, Gauge::Zero}.validate()), InvalidFieldSpec);
  EXPECT_THROW((FieldSpec{s, FieldFamily::Hamiltonian, Gauge::One}.validate()), InvalidFieldSpec);
  const Chart c(ChartKind::Contact, 1);
  EXPECT_THROW((FieldSpec{c, FieldFamily::Hamiltonian, Gauge::GradH}.validate()), InvalidFieldSpec);
  EXPECT_THROW(make_field(FieldSpec{c, FieldFamily::Strict, Gauge::Zero}, c.parse("z*p1")),
               InvalidFieldSpec);
  EXPECT_THROW(field_family_from_string("gradient"), Error);
  EXPECT_EQ(gauge_from_string("gradH"), Gauge::GradH);
}

TEST(Fields, Examples) {
  const Chart c(ChartKind::Contact, 1);
  EXPECT_EQ(make_field(FieldSpec{c}, c.p(1)), field(c, {"1", "0", "0"}));

  const Chart cc(ChartKind::Cocontact, 1);
  const Poly h = cc.parse("p1^2/2 + z");
  const VectorFieldExpr x0 = make_field(FieldSpec{cc, FieldFamily::Hamiltonian, Gauge::Zero}, h);
  EXPECT_EQ(x0, field(cc, {"0", "p1", "-p1", "p1^2/2 - z"}));
  const VectorFieldExpr x1 = make_field(FieldSpec{cc, FieldFamily::Hamiltonian, Gauge::One}, h);
  EXPECT_EQ(x1 - x0, *reeb_tau(cc));

  const Chart cs(ChartKind::Cosymplectic, 1);
  EXPECT_EQ(make_field(FieldSpec{cs, FieldFamily::Hamiltonian, Gauge::GradH}, cs.parse("t*q1")),
            field(cs, {"q1", "0", "-t"}));
}

TEST(Fields, DiagnosticExamples) {
  const Chart cc(ChartKind::Cocontact, 1);
  const auto d = diagnostics(FieldSpec{cc, FieldFamily::Hamiltonian, Gauge::Zero}, cc.z());
  EXPECT_EQ(d.divergence, cc.constant(-2));
  EXPECT_EQ(d.dH_along_flow, -cc.z());

  const Chart c3(ChartKind::Cocontact, 3);
  const auto e = diagnostics(FieldSpec{c3, FieldFamily::Energy, Gauge::One}, c3.parse("z*t"));
  EXPECT_EQ(e.divergence, c3.parse("-3*t"));
  EXPECT_EQ(e.dH_along_flow, c3.z());

  const auto s = diagnostics(FieldSpec{cc, FieldFamily::Strict, Gauge::Zero}, cc.parse("t*q1^2*p1"));
  EXPECT_TRUE(s.divergence.is_zero());
  EXPECT_TRUE(s.dH_along_flow.is_zero());
}

TEST(Fields, ConformalExamples) {
  const Chart cc(ChartKind::Cocontact, 1);
  PolyGenerator gen(4);
  for (int i = 0; i < 20; ++i) {
    const Poly h = gen.poly(cc);
    const VectorFieldExpr x = make_field(FieldSpec{cc}, h);
    EXPECT_TRUE(lie_derivative(x, *canonical_forms(cc).tau).is_zero());
  }
}

TEST(FieldsProperty, MatchCoordinateDisplays) {
  for (const Chart& c : all_charts()) {
    for (const FieldSpec& spec : all_field_specs(c)) {
      PolyGenerator gen(7);
      for (int i = 0; i < 50; ++i) {
        const Poly h = random_h(spec, gen);
        const VectorFieldExpr x = make_field(spec, h);
        ASSERT_EQ(x, oracle::field(spec, h)) << spec.describe() << " H=" << c.print(h);
      }
    }
  }
}

TEST(FieldsProperty, TableColumns) {
  for (const Chart& c : all_charts()) {
    const CanonicalForms forms = canonical_forms(c);
    for (const FieldSpec& spec : all_field_specs(c)) {
      PolyGenerator gen(9);
      for (int i = 0; i < 50; ++i) {
        const Poly h = random_h(spec, gen);
        const VectorFieldExpr x = make_field(spec, h);
        const std::string what = spec.describe() + " H=" + c.print(h);

        ASSERT_EQ(divergence(x), oracle::divergence(spec, h)) << what;
        ASSERT_EQ(apply(x, h), oracle::energy_rate(spec, h)) << what;
        ASSERT_EQ(contract(x, forms.structure), oracle::iota_structure(spec, h)) << what;
        if (forms.eta) ASSERT_EQ(pairing(*forms.eta, x), oracle::iota_eta(spec, h)) << what;
        if (forms.tau) ASSERT_EQ(pairing(*forms.tau, x), oracle::gauge_coefficient(spec, h)) << what;

        const FieldDiagnostics d = diagnostics(spec, h);
        ASSERT_EQ(d.divergence, oracle::divergence(spec, h)) << what;
        ASSERT_EQ(d.dH_along_flow, oracle::energy_rate(spec, h)) << what;
      }
    }
  }
}

TEST(FieldsProperty, ConformalLieDerivatives) {
  for (const Chart& c : all_charts()) {
    const CanonicalForms forms = canonical_forms(c);
    for (const FieldSpec& spec : all_field_specs(c)) {
      PolyGenerator gen(13);
      for (int i = 0; i < 20; ++i) {
        const Poly h = random_h(spec, gen);
        const VectorFieldExpr x = make_field(spec, h);
        const std::string what = spec.describe() + " H=" + c.print(h);
        const LieDerivativeLaws laws = expected_lie_derivatives(spec, h);

        // Reference: Cartan's formula applied to the displayed contractions.
        const OneFormExpr iota_w = oracle::iota_structure(spec, h);
        ASSERT_EQ(lie_derivative(x, forms.structure), exterior_derivative(iota_w)) << what;
        ASSERT_EQ(laws.structure, exterior_derivative(iota_w)) << what;
        if (forms.eta) {
          const OneFormExpr ref = iota_w + differential(c, oracle::iota_eta(spec, h));
          ASSERT_EQ(lie_derivative(x, *forms.eta), ref) << what;
          ASSERT_EQ(*laws.eta, ref) << what;
        }
        if (forms.tau) {
          const OneFormExpr ref = differential(c, oracle::gauge_coefficient(spec, h));
          ASSERT_EQ(lie_derivative(x, *forms.tau), ref) << what;
          ASSERT_EQ(*laws.tau, ref) << what;
        }
      }
    }
  }
}

TEST(FieldsProperty, ConformalFactors) {
  // Hamiltonian rows scale eta by -R^eta(H) (plus a tau term on cocontact
  // charts); energy and strict rows do not.
  for (int n : {1, 2}) {
    const Chart c(ChartKind::Contact, n);
    PolyGenerator gen(17);
    for (int i = 0; i < 20; ++i) {
      const Poly h = gen.poly(c);
      const auto d = diagnostics(FieldSpec{c}, h);
      ASSERT_EQ(*d.conformal_eta, -partial(h, c.z_index()));
      ASSERT_EQ(lie_derivative(make_field(FieldSpec{c}, h), *canonical_forms(c).eta),
                *d.conformal_eta * *canonical_forms(c).eta);
    }
  }
}

TEST(FieldsProperty, Homomorphisms) {
  for (ChartKind k : {ChartKind::Symplectic, ChartKind::Cosymplectic, ChartKind::Contact,
                      ChartKind::Cocontact}) {
    const Chart c(k, 2);
    const FieldSpec ham{c};
    PolyGenerator gen(23);
    for (int i = 0; i < 50; ++i) {
      const Poly f = gen.poly(c), h = gen.poly(c);
      ASSERT_EQ(lie_bracket(make_field(ham, f), make_field(ham, h)),
                make_field(ham, -oracle::canonical_bracket(c, f, h)))
          << to_string(c.kind()) << " F=" << c.print(f) << " H=" << c.print(h);
    }
  }
}
