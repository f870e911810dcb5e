#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geokin/chart.hpp"

namespace geokin {

// Seeded source of random polynomials for the identity suites. Draws are
// derived from raw mt19937_64 output so a seed reproduces the same corpus on
// every standard library.
class PolyGenerator {
 public:
  struct Options {
    int max_degree = 3;
    int max_terms = 4;
    bool allow_t = true;
    bool allow_z = true;
  };

  explicit PolyGenerator(std::uint64_t seed) : engine_(seed) {}

  Poly poly(const Chart& chart, const Options& options);
  Poly poly(const Chart& chart) { return poly(chart, Options{}); }
  // A single monomial with coefficient 1 and total degree <= max_degree.
  Poly monomial(const Chart& chart, int max_degree, bool allow_t = true, bool allow_z = true);

  std::uint64_t below(std::uint64_t bound);

 private:
  Exponents exponents(const Chart& chart, int degree, bool allow_t, bool allow_z);

  std::mt19937_64 engine_;
};

}  // namespace geokin
