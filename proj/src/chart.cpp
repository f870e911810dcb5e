#include "geokin/chart.hpp"

#include "geokin/error.hpp"

namespace geokin {

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::Symplectic: return "symplectic";
    case ChartKind::Cosymplectic: return "cosymplectic";
    case ChartKind::Contact: return "contact";
    case ChartKind::Cocontact: return "cocontact";
  }
  return "?";
}

ChartKind chart_kind_from_string(std::string_view name) {
  if (name == "symplectic") return ChartKind::Symplectic;
  if (name == "cosymplectic") return ChartKind::Cosymplectic;
  if (name == "contact") return ChartKind::Contact;
  if (name == "cocontact") return ChartKind::Cocontact;
  throw ChartKindError("unknown chart kind '" + std::string(name) + "'");
}

Chart::Chart(ChartKind kind, int n) : kind_(kind), n_(n) {
  if (n < 1) throw ChartKindError("chart degree n must be at least 1, got " + std::to_string(n));
  if (has_time()) names_.push_back("t");
  for (int i = 1; i <= n; ++i) names_.push_back("q" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names_.push_back("p" + std::to_string(i));
  if (has_action()) names_.push_back("z");
}

bool Chart::has_time() const {
  return kind_ == ChartKind::Cosymplectic || kind_ == ChartKind::Cocontact;
}

bool Chart::has_action() const {
  return kind_ == ChartKind::Contact || kind_ == ChartKind::Cocontact;
}

std::size_t Chart::dim() const {
  return 2 * static_cast<std::size_t>(n_) + (has_time() ? 1 : 0) + (has_action() ? 1 : 0);
}

std::size_t Chart::t_index() const {
  if (!has_time()) throw ChartKindError(to_string(kind_) + " chart has no time coordinate");
  return 0;
}

std::size_t Chart::q_index(int i) const {
  if (i < 1 || i > n_) throw DimensionMismatch("q index out of range");
  return (has_time() ? 1 : 0) + static_cast<std::size_t>(i - 1);
}

std::size_t Chart::p_index(int i) const {
  if (i < 1 || i > n_) throw DimensionMismatch("p index out of range");
  return (has_time() ? 1 : 0) + static_cast<std::size_t>(n_ + i - 1);
}

std::size_t Chart::z_index() const {
  if (!has_action()) throw ChartKindError(to_string(kind_) + " chart has no action coordinate");
  return dim() - 1;
}

Poly Chart::parse(std::string_view text) const {
  try {
    return geokin::parse(text, names_);
  } catch (const ParseError& e) {
    throw ParseError(e.message() + " on " + to_string(kind_) + " chart", e.offset());
  }
}

std::string Chart::print(const Poly& f) const {
  require(f, "print");
  return to_string(f, names_);
}

void Chart::require(const Poly& f, const char* what) const {
  if (f.dim() != dim()) {
    throw DimensionMismatch(std::string(what) + ": polynomial of dimension " +
                            std::to_string(f.dim()) + " on " + to_string(kind_) +
                            " chart of dimension " + std::to_string(dim()));
  }
}

// ---------------------------------------------------------------------------

namespace {

void check_components(const Chart& chart, const std::vector<Poly>& comps, const char* what) {
  if (comps.size() != chart.dim()) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(chart.dim()) +
                            " components, got " + std::to_string(comps.size()));
  }
  for (const auto& c : comps) chart.require(c, what);
}

void check_same_chart(const Chart& a, const Chart& b, const char* what) {
  if (!(a == b)) throw ChartKindError(std::string(what) + ": operands live on different charts");
}

}  // namespace

OneFormExpr::OneFormExpr(const Chart& chart)
    : chart_(chart), components_(chart.dim(), chart.zero()) {}

OneFormExpr::OneFormExpr(const Chart& chart, std::vector<Poly> components)
    : chart_(chart), components_(std::move(components)) {
  check_components(chart_, components_, "one-form");
}

bool OneFormExpr::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

VectorFieldExpr::VectorFieldExpr(const Chart& chart)
    : chart_(chart), components_(chart.dim(), chart.zero()) {}

VectorFieldExpr::VectorFieldExpr(const Chart& chart, std::vector<Poly> components)
    : chart_(chart), components_(std::move(components)) {
  check_components(chart_, components_, "vector field");
}

bool VectorFieldExpr::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

TwoFormExpr::TwoFormExpr(const Chart& chart)
    : chart_(chart), dim_(chart.dim()), entries_(dim_ * dim_, chart.zero()) {}

void TwoFormExpr::set(std::size_t i, std::size_t j, const Poly& value) {
  chart_.require(value, "two-form");
  if (i == j) {
    if (!value.is_zero()) throw Error("two-form diagonal entries must vanish");
    return;
  }
  entries_.at(i * dim_ + j) = value;
  entries_.at(j * dim_ + i) = -value;
}

bool TwoFormExpr::is_zero() const {
  for (const auto& c : entries_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

OneFormExpr operator+(const OneFormExpr& a, const OneFormExpr& b) {
  check_same_chart(a.chart(), b.chart(), "one-form sum");
  OneFormExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] += b[i];
  return r;
}

OneFormExpr operator-(const OneFormExpr& a, const OneFormExpr& b) {
  check_same_chart(a.chart(), b.chart(), "one-form difference");
  OneFormExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] -= b[i];
  return r;
}

OneFormExpr operator*(const Poly& f, const OneFormExpr& a) {
  OneFormExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] = f * a[i];
  return r;
}

VectorFieldExpr operator+(const VectorFieldExpr& a, const VectorFieldExpr& b) {
  check_same_chart(a.chart(), b.chart(), "vector field sum");
  VectorFieldExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] += b[i];
  return r;
}

VectorFieldExpr operator-(const VectorFieldExpr& a, const VectorFieldExpr& b) {
  check_same_chart(a.chart(), b.chart(), "vector field difference");
  VectorFieldExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] -= b[i];
  return r;
}

VectorFieldExpr operator*(const Poly& f, const VectorFieldExpr& a) {
  VectorFieldExpr r = a;
  for (std::size_t i = 0; i < a.chart().dim(); ++i) r[i] = f * a[i];
  return r;
}

TwoFormExpr operator+(const TwoFormExpr& a, const TwoFormExpr& b) {
  check_same_chart(a.chart(), b.chart(), "two-form sum");
  TwoFormExpr r(a.chart());
  const std::size_t d = a.chart().dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) r.set(i, j, a.at(i, j) + b.at(i, j));
  }
  return r;
}

TwoFormExpr operator-(const TwoFormExpr& a, const TwoFormExpr& b) {
  check_same_chart(a.chart(), b.chart(), "two-form difference");
  TwoFormExpr r(a.chart());
  const std::size_t d = a.chart().dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) r.set(i, j, a.at(i, j) - b.at(i, j));
  }
  return r;
}

TwoFormExpr operator*(const Poly& f, const TwoFormExpr& a) {
  TwoFormExpr r(a.chart());
  const std::size_t d = a.chart().dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) r.set(i, j, f * a.at(i, j));
  }
  return r;
}

// ---------------------------------------------------------------------------

std::optional<VectorFieldExpr> reeb_tau(const Chart& chart) {
  if (!chart.has_time()) return std::nullopt;
  VectorFieldExpr r(chart);
  r[chart.t_index()] = chart.constant(1);
  return r;
}

std::optional<VectorFieldExpr> reeb_eta(const Chart& chart) {
  if (!chart.has_action()) return std::nullopt;
  VectorFieldExpr r(chart);
  r[chart.z_index()] = chart.constant(1);
  return r;
}

CanonicalForms canonical_forms(const Chart& chart) {
  OneFormExpr theta(chart);
  for (int i = 1; i <= chart.n(); ++i) theta[chart.q_index(i)] = chart.p(i);

  std::optional<OneFormExpr> tau;
  if (chart.has_time()) {
    tau.emplace(chart);
    (*tau)[chart.t_index()] = chart.constant(1);
  }
  std::optional<OneFormExpr> eta;
  if (chart.has_action()) {
    eta.emplace(chart);
    (*eta)[chart.z_index()] = chart.constant(1);
    for (int i = 1; i <= chart.n(); ++i) (*eta)[chart.q_index(i)] = -chart.p(i);
  }
  TwoFormExpr structure(chart);
  for (int i = 1; i <= chart.n(); ++i) {
    structure.set(chart.q_index(i), chart.p_index(i), chart.constant(1));
  }
  return CanonicalForms{tau, eta, theta, structure};
}

Poly pairing(const OneFormExpr& alpha, const VectorFieldExpr& x) {
  check_same_chart(alpha.chart(), x.chart(), "pairing");
  Poly sum = alpha.chart().zero();
  for (std::size_t i = 0; i < alpha.chart().dim(); ++i) sum += alpha[i] * x[i];
  return sum;
}

OneFormExpr differential(const Chart& chart, const Poly& f) {
  chart.require(f, "differential");
  OneFormExpr d(chart);
  for (std::size_t i = 0; i < chart.dim(); ++i) d[i] = partial(f, i);
  return d;
}

std::string to_string(const OneFormExpr& a) {
  const auto& names = a.chart().variable_names();
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + a.chart().print(a[i]) + ") d" + names[i];
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const VectorFieldExpr& x) {
  const auto& names = x.chart().variable_names();
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + x.chart().print(x[i]) + ") d/d" + names[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace geokin
