#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geokin/brackets.hpp"
#include "geokin/fields.hpp"

namespace geokin {

struct LawResult {
  std::string law;
  bool passed = true;
  int cases = 0;
  std::string witness;  // first failing input, or the witness for existence laws
};

struct FieldRowResult {
  FieldSpec spec;
  bool contractions = true;
  bool divergence = true;
  bool energy_rate = true;
  bool conformal = true;
  int cases = 0;
  std::string witness;

  bool passed() const { return contractions && divergence && energy_rate && conformal; }
};

struct IdentityReport {
  Chart chart;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<LawResult> laws;
  std::vector<FieldRowResult> rows;

  bool passed() const;
};

// Runs every exact identity that applies to the chart kind on a seeded
// random corpus of `samples` inputs per law (degree <= 3 polynomials).
IdentityReport run_identity_suite(const Chart& chart, std::uint64_t seed, int samples);

// Randomized search over triples of monomials of degree <= max_degree for a
// nonzero jacobiator of an almost-Poisson bracket.
std::optional<std::array<Poly, 3>> find_jacobi_witness(BracketKind kind, const Chart& chart,
                                                       std::uint64_t seed, int max_tries = 10000,
                                                       int max_degree = 2);

}  // namespace geokin
