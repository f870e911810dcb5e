#include "geokin/musical.hpp"

#include "geokin/calculus.hpp"
#include "geokin/error.hpp"

namespace geokin {

namespace {

void require_chart(const Chart& chart, const Chart& other, const char* what) {
  if (!(chart == other)) {
    throw ChartKindError(std::string(what) + ": argument lives on a " + to_string(other.kind()) +
                         " chart, expected " + to_string(chart.kind()));
  }
}

}  // namespace

VectorFieldExpr sharp(const Chart& chart, SharpVariant variant, const OneFormExpr& alpha) {
  require_chart(chart, alpha.chart(), "sharp");
  VectorFieldExpr x(chart);
  const bool full = variant == SharpVariant::Full;
  Poly zeta = chart.has_action() ? alpha[chart.z_index()] : chart.zero();
  Poly z_component = full ? zeta : chart.zero();
  for (int i = 1; i <= chart.n(); ++i) {
    const Poly& a_low = alpha[chart.q_index(i)];   // coefficient of dq^i
    const Poly& a_high = alpha[chart.p_index(i)];  // coefficient of dp_i
    x[chart.q_index(i)] = a_high;
    if (chart.has_action()) {
      x[chart.p_index(i)] = -(a_low + chart.p(i) * zeta);
      z_component += a_high * chart.p(i);
    } else {
      x[chart.p_index(i)] = -a_low;
    }
  }
  if (chart.has_action()) x[chart.z_index()] = z_component;
  if (chart.has_time() && full) x[chart.t_index()] = alpha[chart.t_index()];
  return x;
}

OneFormExpr flat(const Chart& chart, const VectorFieldExpr& x) {
  require_chart(chart, x.chart(), "flat");
  const CanonicalForms forms = canonical_forms(chart);
  OneFormExpr out = contract(x, forms.structure);
  if (forms.tau) out = out + pairing(*forms.tau, x) * *forms.tau;
  if (forms.eta) out = out + pairing(*forms.eta, x) * *forms.eta;
  return out;
}

OneFormExpr sharp_flat_residual(const Chart& chart, const OneFormExpr& alpha) {
  return flat(chart, sharp(chart, SharpVariant::Full, alpha)) - alpha;
}

Poly bivector(const Chart& chart, const OneFormExpr& alpha, const OneFormExpr& beta) {
  return pairing(alpha, sharp(chart, SharpVariant::Bivector, beta));
}

}  // namespace geokin
