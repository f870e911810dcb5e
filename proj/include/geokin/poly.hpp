#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geokin {

using Rational = mpq_class;
using Exponents = std::vector<std::uint16_t>;

// Graded lexicographic order: lower total degree first, ties broken
// lexicographically with variable 0 most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are kept in a map keyed by exponent vector; zero coefficients are
// never stored, so two polynomials are equal iff their term maps are equal.
// Every polynomial carries a cap on total degree; any operation whose result
// would exceed the cap throws DegreeOverflow.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  static constexpr int kDefaultMaxDegree = 24;

  explicit Poly(std::size_t dim = 0, int max_degree = kDefaultMaxDegree);

  static Poly constant(std::size_t dim, const Rational& c, int max_degree = kDefaultMaxDegree);
  static Poly variable(std::size_t dim, std::size_t index, int max_degree = kDefaultMaxDegree);
  static Poly monomial(std::size_t dim, const Exponents& e, const Rational& c,
                       int max_degree = kDefaultMaxDegree);

  std::size_t dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponents& e) const;
  // Value of the constant term.
  Rational constant_term() const;
  bool depends_on(std::size_t index) const;

  Poly with_max_degree(int max_degree) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_dim(const Poly& other, const char* op) const;

  std::size_t dim_;
  int max_degree_;
  Terms terms_;
};

Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& a, unsigned exponent);
Poly partial(const Poly& a, std::size_t index);

// Double-precision evaluation. Terms are summed in canonical order so the
// result is reproducible bit for bit.
double eval(const Poly& a, std::span<const double> x);

// Canonical text form: terms in descending graded-lex order, rational
// coefficients written as a/b, e.g. "q1*z + 1/2*p1^2 - 3".
std::string to_string(const Poly& a, std::span<const std::string> names);

// Parses the polynomial grammar over the given variable names:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*     right operand of '/' must be constant
//   unary  := ('+' | '-') unary | power
//   power  := primary ('^' integer)?
//   primary:= number | name | '(' expr ')'
// Numbers may be integers, decimals or use an exponent (2.5e-3); they are
// converted to exact rationals.
Poly parse(std::string_view text, std::span<const std::string> names,
           int max_degree = Poly::kDefaultMaxDegree);

// Flattened double-precision copy of a polynomial for repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return coefficients_.empty(); }
  double operator()(std::span<const double> x) const;

 private:
  std::size_t dim_ = 0;
  int max_exponent_ = 0;
  std::vector<double> coefficients_;
  std::vector<std::uint16_t> exponents_;  // term-major, dim_ entries per term
};

}  // namespace geokin
