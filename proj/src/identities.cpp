#include "geokin/identities.hpp"

#include <functional>

#include "geokin/calculus.hpp"
#include "geokin/kinetics.hpp"
#include "geokin/musical.hpp"
#include "geokin/random.hpp"

namespace geokin {

bool IdentityReport::passed() const {
  for (const auto& l : laws) {
    if (!l.passed) return false;
  }
  for (const auto& r : rows) {
    if (!r.passed()) return false;
  }
  return true;
}

namespace {

std::vector<BracketKind> brackets_on(ChartKind kind) {
  switch (kind) {
    case ChartKind::Symplectic: return {BracketKind::PoissonSymplectic};
    case ChartKind::Cosymplectic: return {BracketKind::PoissonCosymplectic};
    case ChartKind::Contact: return {BracketKind::AlmostPoissonContact, BracketKind::JacobiContact};
    case ChartKind::Cocontact:
      return {BracketKind::AlmostPoissonCocontact, BracketKind::JacobiCocontact};
  }
  return {};
}

class Suite {
 public:
  Suite(const Chart& chart, std::uint64_t seed, int samples)
      : chart_(chart), gen_(seed), samples_(samples) {}

  std::string show(const Poly& f) const { return chart_.print(f); }

  Poly poly(bool allow_z = true) {
    PolyGenerator::Options o;
    o.allow_z = allow_z;
    return gen_.poly(chart_, o);
  }

  OneFormExpr form() {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < chart_.dim(); ++i) c.push_back(poly());
    return OneFormExpr(chart_, c);
  }

  VectorFieldExpr vector_field() {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < chart_.dim(); ++i) c.push_back(poly());
    return VectorFieldExpr(chart_, c);
  }

  // Runs `body` on `samples_` cases; body returns an empty string on success
  // or a description of the failing input.
  void law(const std::string& name, const std::function<std::string()>& body) {
    LawResult r{name, true, 0, {}};
    for (int i = 0; i < samples_; ++i) {
      ++r.cases;
      std::string failure = body();
      if (!failure.empty()) {
        r.passed = false;
        r.witness = failure;
        break;
      }
    }
    laws_.push_back(std::move(r));
  }

  void single(const std::string& name, bool passed, const std::string& witness) {
    laws_.push_back(LawResult{name, passed, 1, witness});
  }

  const Chart& chart() const { return chart_; }
  PolyGenerator& gen() { return gen_; }
  int samples() const { return samples_; }
  std::vector<LawResult> take() { return std::move(laws_); }

 private:
  Chart chart_;
  PolyGenerator gen_;
  int samples_;
  std::vector<LawResult> laws_;
};

void bracket_laws(Suite& s) {
  const Chart& c = s.chart();
  for (BracketKind kind : brackets_on(c.kind())) {
    const std::string tag = to_string(kind) + ": ";
    s.law(tag + "antisymmetry", [&] {
      Poly f = s.poly(), h = s.poly();
      Poly r = bracket(kind, c, f, h) + bracket(kind, c, h, f);
      return r.is_zero() ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
    });
    s.law(tag + "bivector form", [&] {
      Poly f = s.poly(), h = s.poly();
      Poly r = bracket(kind, c, f, h) - bracket_via_bivector(kind, c, f, h);
      return r.is_zero() ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
    });
    if (!is_almost_poisson(kind)) {
      s.law(tag + "jacobi identity", [&] {
        Poly f = s.poly(), g = s.poly(), h = s.poly();
        Poly r = jacobiator(kind, c, f, g, h);
        return r.is_zero() ? "" : "F=" + s.show(f) + "; G=" + s.show(g) + "; H=" + s.show(h);
      });
    }
    if (is_jacobi(kind)) {
      s.law(tag + "weak leibniz", [&] {
        Poly f = s.poly(), k = s.poly(), h = s.poly();
        Poly r = leibniz_defect(kind, c, f, k, h) - k * h * partial(f, c.z_index());
        return r.is_zero() ? "" : "F=" + s.show(f) + "; K=" + s.show(k) + "; H=" + s.show(h);
      });
    } else {
      s.law(tag + "leibniz", [&] {
        Poly f = s.poly(), k = s.poly(), h = s.poly();
        Poly r = leibniz_defect(kind, c, f, k, h);
        return r.is_zero() ? "" : "F=" + s.show(f) + "; K=" + s.show(k) + "; H=" + s.show(h);
      });
    }
    if (is_almost_poisson(kind)) {
      auto w = find_jacobi_witness(kind, c, s.gen().below(1u << 30));
      std::string text;
      if (w) text = "F=" + s.show((*w)[0]) + "; G=" + s.show((*w)[1]) + "; H=" + s.show((*w)[2]);
      s.single(tag + "jacobi failure witness", w.has_value(), text);
    }
    if (kind == BracketKind::PoissonCosymplectic) {
      s.law(tag + "time casimir", [&] {
        Poly f = c.zero();
        // f(t) only: powers of t with random coefficients.
        for (int k = 0; k <= 3; ++k) {
          f += Poly::monomial(c.dim(), [&] {
            Exponents e(c.dim(), 0);
            e[c.t_index()] = static_cast<std::uint16_t>(k);
            return e;
          }(), Rational(static_cast<long>(s.gen().below(7)) - 3));
        }
        Poly h = s.poly();
        Poly r = bracket(kind, c, f, h);
        return r.is_zero() ? "" : "f=" + s.show(f) + "; H=" + s.show(h);
      });
    }
  }
}

void musical_laws(Suite& s) {
  const Chart& c = s.chart();
  s.law("flat(sharp(alpha)) = alpha", [&] {
    OneFormExpr a = s.form();
    return sharp_flat_residual(c, a).is_zero() ? "" : to_string(a);
  });
  s.law("sharp(flat(X)) = X", [&] {
    VectorFieldExpr x = s.vector_field();
    return (sharp(c, SharpVariant::Full, flat(c, x)) - x).is_zero() ? "" : to_string(x);
  });
  s.law("bivector sharp drops Reeb parts", [&] {
    OneFormExpr a = s.form();
    VectorFieldExpr expected = sharp(c, SharpVariant::Full, a);
    if (auto r = reeb_eta(c)) expected = expected - pairing(a, *r) * *r;
    if (auto r = reeb_tau(c)) expected = expected - pairing(a, *r) * *r;
    return (sharp(c, SharpVariant::Bivector, a) - expected).is_zero() ? "" : to_string(a);
  });

  const CanonicalForms forms = canonical_forms(c);
  bool ok = true;
  std::string bad;
  auto expect = [&](bool cond, const char* what) {
    if (!cond && ok) {
      ok = false;
      bad = what;
    }
  };
  const Poly one = c.constant(1);
  if (auto rt = reeb_tau(c)) {
    expect(pairing(*forms.tau, *rt) == one, "i_Rtau tau = 1");
    expect(contract(*rt, forms.structure).is_zero(), "i_Rtau structure = 0");
    if (forms.eta) expect(pairing(*forms.eta, *rt).is_zero(), "i_Rtau eta = 0");
  }
  if (auto re = reeb_eta(c)) {
    expect(pairing(*forms.eta, *re) == one, "i_Reta eta = 1");
    expect(contract(*re, forms.structure).is_zero(), "i_Reta d eta = 0");
    if (forms.tau) expect(pairing(*forms.tau, *re).is_zero(), "i_Reta tau = 0");
  }
  if (forms.eta) {
    expect(exterior_derivative(*forms.eta) == forms.structure, "d eta = structure");
  } else {
    expect(exterior_derivative(forms.theta) == (-c.constant(1)) * forms.structure,
           "Omega = -d Theta");
  }
  s.single("reeb and structure identities", ok, bad);
}

bool forms_equal(const std::optional<OneFormExpr>& a, const std::optional<OneFormExpr>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

std::vector<FieldRowResult> field_rows(Suite& s) {
  const Chart& c = s.chart();
  const CanonicalForms forms = canonical_forms(c);
  std::vector<FieldRowResult> out;
  for (const FieldSpec& spec : all_field_specs(c)) {
    FieldRowResult row{spec, true, true, true, true, 0, {}};
    const bool strict = spec.family == FieldFamily::Strict;
    for (int i = 0; i < s.samples(); ++i) {
      ++row.cases;
      const Poly h = s.poly(!strict);
      const VectorFieldExpr x = make_field(spec, h);
      const FieldDiagnostics d = diagnostics(spec, h);
      const ContractionLaws cl = expected_contractions(spec, h);
      const LieDerivativeLaws ll = expected_lie_derivatives(spec, h);

      bool contractions = contract(x, forms.structure) == cl.structure;
      if (forms.eta) contractions = contractions && pairing(*forms.eta, x) == *cl.eta;
      if (forms.tau) contractions = contractions && pairing(*forms.tau, x) == *cl.tau;
      const bool div = divergence(x) == d.divergence;
      const bool rate = apply(x, h) == d.dH_along_flow;
      bool conformal = lie_derivative(x, forms.structure) == ll.structure;
      if (forms.tau) conformal = conformal && forms_equal(lie_derivative(x, *forms.tau), ll.tau);
      if (forms.eta) conformal = conformal && forms_equal(lie_derivative(x, *forms.eta), ll.eta);

      row.contractions = row.contractions && contractions;
      row.divergence = row.divergence && div;
      row.energy_rate = row.energy_rate && rate;
      row.conformal = row.conformal && conformal;
      if (!row.passed()) {
        row.witness = "H=" + s.show(h);
        break;
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

void homomorphism_laws(Suite& s) {
  const Chart& c = s.chart();
  const BracketKind kind = density_bracket(c.kind());
  const FieldSpec ham{c, FieldFamily::Hamiltonian, Gauge::Zero};
  s.law("[X_F, X_H] = -X_{F,H}", [&] {
    Poly f = s.poly(), h = s.poly();
    VectorFieldExpr lhs = lie_bracket(make_field(ham, f), make_field(ham, h));
    VectorFieldExpr rhs = make_field(ham, -bracket(kind, c, f, h));
    return lhs == rhs ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
  });
  if (c.has_action()) {
    const FieldSpec strict{c, FieldFamily::Strict, Gauge::Zero};
    s.law("[xi_H, xi_F] = -xi_{H,F}", [&] {
      Poly f = s.poly(false), h = s.poly(false);
      VectorFieldExpr lhs = lie_bracket(make_field(strict, h), make_field(strict, f));
      VectorFieldExpr rhs = make_field(strict, -bracket(kind, c, h, f));
      return lhs == rhs ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
    });
    s.law("X_H(F) = {F,H} - F R^eta(H)", [&] {
      Poly f = s.poly(), h = s.poly();
      Poly r = apply(make_field(ham, h), f) - bracket(kind, c, f, h) +
               f * partial(h, c.z_index());
      return r.is_zero() ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
    });
    const BracketKind poisson =
        c.has_time() ? BracketKind::PoissonCosymplectic : BracketKind::PoissonSymplectic;
    const Chart base(c.has_time() ? ChartKind::Cosymplectic : ChartKind::Symplectic, c.n());
    s.law("z-free jacobi bracket reduces to poisson", [&] {
      Poly f = s.poly(false), h = s.poly(false);
      // Drop the trailing z exponent to move to the base chart.
      auto drop = [&](const Poly& p) {
        Poly out = base.zero();
        for (const auto& [e, v] : p.terms()) {
          Exponents e2(e.begin(), e.end() - 1);
          out += Poly::monomial(base.dim(), e2, v);
        }
        return out;
      };
      Poly lhs = drop(bracket(kind, c, f, h));
      Poly rhs = bracket(poisson, base, drop(f), drop(h));
      return lhs == rhs ? "" : "F=" + s.show(f) + "; H=" + s.show(h);
    });
  }
  if (c.kind() == ChartKind::Cosymplectic) {
    const FieldSpec grad{c, FieldFamily::Hamiltonian, Gauge::GradH};
    const FieldSpec evo{c, FieldFamily::Hamiltonian, Gauge::One};
    s.law("grad H = X_H + sharp(H_t tau)", [&] {
      Poly h = s.poly();
      OneFormExpr ht_tau(c);
      ht_tau[c.t_index()] = partial(h, c.t_index());
      VectorFieldExpr rhs = make_field(ham, h) + sharp(c, SharpVariant::Full, ht_tau);
      return make_field(grad, h) == rhs ? "" : "H=" + s.show(h);
    });
    s.law("E_H = sharp(dH) + (1 - H_t) R^tau", [&] {
      Poly h = s.poly();
      VectorFieldExpr rhs = sharp(c, SharpVariant::Full, differential(c, h)) +
                            (c.constant(1) - partial(h, c.t_index())) * *reeb_tau(c);
      return make_field(evo, h) == rhs ? "" : "H=" + s.show(h);
    });
  }
}

void kinetic_laws(Suite& s) {
  const Chart& c = s.chart();
  s.law("momentum map intertwines vlasov flows", [&] {
    Poly h = s.poly();
    OneFormExpr pi = s.form();
    return intertwine_residual(c, h, pi).is_zero() ? "" : "H=" + s.show(h) + "; Pi=" + to_string(pi);
  });
  s.law("pairing integrand = H f + div W", [&] {
    Poly h = s.poly();
    OneFormExpr pi = s.form();
    Poly r = pairing_integrand(c, h, pi) - h * momentum_map(c, pi) -
             divergence(pairing_divergence_witness(c, h, pi));
    return r.is_zero() ? "" : "H=" + s.show(h) + "; Pi=" + to_string(pi);
  });
}

}  // namespace

IdentityReport run_identity_suite(const Chart& chart, std::uint64_t seed, int samples) {
  Suite s(chart, seed, samples);
  bracket_laws(s);
  musical_laws(s);
  std::vector<FieldRowResult> rows = field_rows(s);
  homomorphism_laws(s);
  kinetic_laws(s);
  return IdentityReport{chart, seed, samples, s.take(), std::move(rows)};
}

std::optional<std::array<Poly, 3>> find_jacobi_witness(BracketKind kind, const Chart& chart,
                                                       std::uint64_t seed, int max_tries,
                                                       int max_degree) {
  PolyGenerator gen(seed);
  for (int i = 0; i < max_tries; ++i) {
    Poly f = gen.monomial(chart, max_degree);
    Poly g = gen.monomial(chart, max_degree);
    Poly h = gen.monomial(chart, max_degree);
    if (!jacobiator(kind, chart, f, g, h).is_zero()) return std::array<Poly, 3>{f, g, h};
  }
  return std::nullopt;
}

}  // namespace geokin
