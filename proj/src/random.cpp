#include "geokin/random.hpp"

namespace geokin {

std::uint64_t PolyGenerator::below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }

Exponents PolyGenerator::exponents(const Chart& chart, int degree, bool allow_t, bool allow_z) {
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    if (chart.has_time() && i == chart.t_index() && !allow_t) continue;
    if (chart.has_action() && i == chart.z_index() && !allow_z) continue;
    allowed.push_back(i);
  }
  Exponents e(chart.dim(), 0);
  for (int k = 0; k < degree; ++k) e[allowed[below(allowed.size())]] += 1;
  return e;
}

Poly PolyGenerator::poly(const Chart& chart, const Options& options) {
  Poly p = chart.zero();
  const int terms = 1 + static_cast<int>(below(static_cast<std::uint64_t>(options.max_terms)));
  for (int k = 0; k < terms; ++k) {
    const int degree = static_cast<int>(below(static_cast<std::uint64_t>(options.max_degree) + 1));
    long num = static_cast<long>(below(9)) - 4;
    if (num == 0) num = 1;
    const long den = 1 + static_cast<long>(below(3));
    Rational c(num, den);
    c.canonicalize();
    p += Poly::monomial(chart.dim(), exponents(chart, degree, options.allow_t, options.allow_z), c);
  }
  return p;
}

Poly PolyGenerator::monomial(const Chart& chart, int max_degree, bool allow_t, bool allow_z) {
  const int degree = static_cast<int>(below(static_cast<std::uint64_t>(max_degree) + 1));
  return Poly::monomial(chart.dim(), exponents(chart, degree, allow_t, allow_z), Rational(1));
}

}  // namespace geokin
