#include "geokin/calculus.hpp"

#include "geokin/error.hpp"

namespace geokin {

namespace {

void same_chart(const Chart& a, const Chart& b, const char* what) {
  if (!(a == b)) throw ChartKindError(std::string(what) + ": operands live on different charts");
}

}  // namespace

Poly apply(const VectorFieldExpr& x, const Poly& f) {
  const Chart& chart = x.chart();
  chart.require(f, "apply");
  Poly sum = chart.zero();
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    if (x[i].is_zero()) continue;
    sum += x[i] * partial(f, i);
  }
  return sum;
}

Poly divergence(const VectorFieldExpr& x) {
  Poly sum = x.chart().zero();
  for (std::size_t i = 0; i < x.chart().dim(); ++i) sum += partial(x[i], i);
  return sum;
}

VectorFieldExpr lie_bracket(const VectorFieldExpr& x, const VectorFieldExpr& y) {
  same_chart(x.chart(), y.chart(), "lie_bracket");
  VectorFieldExpr r(x.chart());
  for (std::size_t i = 0; i < x.chart().dim(); ++i) r[i] = apply(x, y[i]) - apply(y, x[i]);
  return r;
}

TwoFormExpr exterior_derivative(const OneFormExpr& alpha) {
  const Chart& chart = alpha.chart();
  TwoFormExpr r(chart);
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    for (std::size_t j = i + 1; j < chart.dim(); ++j) {
      r.set(i, j, partial(alpha[j], i) - partial(alpha[i], j));
    }
  }
  return r;
}

TwoFormExpr wedge(const OneFormExpr& alpha, const OneFormExpr& beta) {
  same_chart(alpha.chart(), beta.chart(), "wedge");
  const Chart& chart = alpha.chart();
  TwoFormExpr r(chart);
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    for (std::size_t j = i + 1; j < chart.dim(); ++j) {
      r.set(i, j, alpha[i] * beta[j] - alpha[j] * beta[i]);
    }
  }
  return r;
}

OneFormExpr contract(const VectorFieldExpr& x, const TwoFormExpr& w) {
  same_chart(x.chart(), w.chart(), "contract");
  const Chart& chart = x.chart();
  OneFormExpr r(chart);
  for (std::size_t j = 0; j < chart.dim(); ++j) {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      if (x[i].is_zero() || w.at(i, j).is_zero()) continue;
      r[j] += x[i] * w.at(i, j);
    }
  }
  return r;
}

OneFormExpr lie_derivative(const VectorFieldExpr& x, const OneFormExpr& alpha) {
  same_chart(x.chart(), alpha.chart(), "lie_derivative");
  const Chart& chart = x.chart();
  OneFormExpr r(chart);
  for (std::size_t j = 0; j < chart.dim(); ++j) {
    Poly v = apply(x, alpha[j]);
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      if (alpha[i].is_zero()) continue;
      v += alpha[i] * partial(x[i], j);
    }
    r[j] = v;
  }
  return r;
}

TwoFormExpr lie_derivative(const VectorFieldExpr& x, const TwoFormExpr& w) {
  same_chart(x.chart(), w.chart(), "lie_derivative");
  const Chart& chart = x.chart();
  const std::size_t d = chart.dim();
  // Jacobian dX^k/dx^i, computed once.
  std::vector<Poly> jac;
  jac.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) jac.push_back(partial(x[k], i));
  }
  TwoFormExpr r(chart);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      Poly v = apply(x, w.at(i, j));
      for (std::size_t k = 0; k < d; ++k) {
        if (!w.at(k, j).is_zero()) v += w.at(k, j) * jac[k * d + i];
        if (!w.at(i, k).is_zero()) v += w.at(i, k) * jac[k * d + j];
      }
      r.set(i, j, v);
    }
  }
  return r;
}

}  // namespace geokin
