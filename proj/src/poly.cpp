#include "geokin/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "geokin/error.hpp"

namespace geokin {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int total_degree(const Exponents& e) {
  int d = 0;
  for (auto k : e) d += k;
  return d;
}

Poly::Poly(std::size_t dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (max_degree < 0) throw Error("max_degree must be non-negative");
}

Poly Poly::constant(std::size_t dim, const Rational& c, int max_degree) {
  Poly p(dim, max_degree);
  p.add_term(Exponents(dim, 0), c);
  return p;
}

Poly Poly::variable(std::size_t dim, std::size_t index, int max_degree) {
  if (index >= dim) throw DimensionMismatch("variable index out of range");
  Exponents e(dim, 0);
  e[index] = 1;
  return monomial(dim, e, Rational(1), max_degree);
}

Poly Poly::monomial(std::size_t dim, const Exponents& e, const Rational& c, int max_degree) {
  if (e.size() != dim) throw DimensionMismatch("exponent vector length does not match dimension");
  if (total_degree(e) > max_degree) {
    throw DegreeOverflow("monomial degree " + std::to_string(total_degree(e)) +
                         " exceeds cap " + std::to_string(max_degree));
  }
  Poly p(dim, max_degree);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last key has the largest total degree.
  return total_degree(terms_.rbegin()->first);
}

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const { return coefficient(Exponents(dim_, 0)); }

bool Poly::depends_on(std::size_t index) const {
  for (const auto& [e, c] : terms_) {
    if (e[index] != 0) return true;
  }
  return false;
}

Poly Poly::with_max_degree(int max_degree) const {
  if (degree() > max_degree) {
    throw DegreeOverflow("polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                         std::to_string(max_degree));
  }
  Poly p = *this;
  p.max_degree_ = max_degree;
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_dim(const Poly& other, const char* op) const {
  if (dim_ != other.dim_) {
    throw DimensionMismatch(std::string("cannot ") + op + " polynomials of dimension " +
                            std::to_string(dim_) + " and " + std::to_string(other.dim_));
  }
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_dim(other, "add");
  max_degree_ = std::min(max_degree_, other.max_degree_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_dim(other, "subtract");
  max_degree_ = std::min(max_degree_, other.max_degree_);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_dim(b, "multiply");
  Poly out(a.dim_, std::min(a.max_degree_, b.max_degree_));
  if (a.is_zero() || b.is_zero()) return out;
  const int d = a.degree() + b.degree();
  if (d > out.max_degree_) {
    throw DegreeOverflow("product degree " + std::to_string(d) + " exceeds cap " +
                         std::to_string(out.max_degree_));
  }
  Exponents e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) { return a + b; }

Poly mul(const Poly& a, const Poly& b) { return a * b; }

Poly pow(const Poly& a, unsigned exponent) {
  if (!a.is_zero() && static_cast<long>(a.degree()) * exponent > a.max_degree()) {
    throw DegreeOverflow("power degree exceeds cap " + std::to_string(a.max_degree()));
  }
  Poly result = Poly::constant(a.dim(), Rational(1), a.max_degree());
  Poly base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly partial(const Poly& a, std::size_t index) {
  if (index >= a.dim()) throw DimensionMismatch("partial: variable index out of range");
  Poly out(a.dim(), a.max_degree());
  for (const auto& [e, c] : a.terms()) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    out += Poly::monomial(a.dim(), d, c * e[index], a.max_degree());
  }
  return out;
}

double eval(const Poly& a, std::span<const double> x) { return CompiledPoly(a)(x); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Poly& a, std::span<const std::string> names) {
  if (names.size() != a.dim()) {
    throw DimensionMismatch("to_string: " + std::to_string(names.size()) +
                            " names for dimension " + std::to_string(a.dim()));
  }
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.get_str() << '*' << mono;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names, int max_degree)
      : text_(text), names_(names), max_degree_(max_degree) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Poly den = unary();
        if (!den.is_constant()) {
          pos_ = at;
          fail("division is only allowed by a numeric constant");
        }
        if (den.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc *= Rational(1) / den.constant_term();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) {
        pos_ = start;
        fail("exponent too large");
      }
      const unsigned k = static_cast<unsigned>(std::stoul(digits));
      try {
        return pow(base, k);
      } catch (const DegreeOverflow& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Poly number() {
    const std::size_t start = pos_;
    std::string mantissa;
    long frac_digits = 0;
    bool any_digit = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      mantissa += text_[pos_++];
      any_digit = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        mantissa += text_[pos_++];
        ++frac_digits;
        any_digit = true;
      }
    }
    if (!any_digit) {
      pos_ = start;
      fail("malformed number");
    }
    long exp10 = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) {
        neg = text_[p] == '-';
        ++p;
      }
      const std::size_t ds = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (ds == p || p - ds > 4) {
        pos_ = ds;
        fail("malformed exponent in number");
      }
      exp10 = std::stol(std::string(text_.substr(ds, p - ds)));
      if (neg) exp10 = -exp10;
      pos_ = p;
    }
    mpz_class num(mantissa, 10);
    mpz_class scale;
    const long shift = exp10 - frac_digits;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational value = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
    value.canonicalize();
    return Poly::constant(names_.size(), value, max_degree_);
  }

  Poly identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return Poly::variable(names_.size(), i, max_degree_);
    }
    std::string allowed;
    for (const auto& n : names_) allowed += (allowed.empty() ? "" : ", ") + n;
    pos_ = start;
    fail("unknown variable '" + std::string(name) + "' (allowed: " + allowed + ")");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  int max_degree_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse(std::string_view text, std::span<const std::string> names, int max_degree) {
  return Parser(text, names, max_degree).run();
}

// ---------------------------------------------------------------------------
// Compiled evaluation

CompiledPoly::CompiledPoly(const Poly& p) : dim_(p.dim()) {
  coefficients_.reserve(p.term_count());
  exponents_.reserve(p.term_count() * dim_);
  for (const auto& [e, c] : p.terms()) {
    coefficients_.push_back(c.get_d());
    for (auto k : e) {
      exponents_.push_back(k);
      max_exponent_ = std::max<int>(max_exponent_, k);
    }
  }
}

double CompiledPoly::operator()(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw DimensionMismatch("eval: point has " + std::to_string(x.size()) +
                            " coordinates, polynomial has dimension " + std::to_string(dim_));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NonFiniteInput("eval: non-finite coordinate");
  }
  if (coefficients_.empty()) return 0.0;
  // Small dimensions and degrees: a stack power table keeps this allocation
  // free in the common case.
  constexpr std::size_t kStack = 256;
  const std::size_t stride = static_cast<std::size_t>(max_exponent_) + 1;
  double stack_table[kStack];
  std::vector<double> heap_table;
  double* table = stack_table;
  if (dim_ * stride > kStack) {
    heap_table.resize(dim_ * stride);
    table = heap_table.data();
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    double* row = table + i * stride;
    row[0] = 1.0;
    for (std::size_t k = 1; k < stride; ++k) row[k] = row[k - 1] * x[i];
  }
  double sum = 0.0;
  const std::uint16_t* e = exponents_.data();
  for (double c : coefficients_) {
    double term = c;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (e[i] != 0) term *= table[i * stride + e[i]];
    }
    sum += term;
    e += dim_;
  }
  return sum;
}

}  // namespace geokin
