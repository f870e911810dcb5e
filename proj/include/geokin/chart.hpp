#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geokin/poly.hpp"

namespace geokin {

enum class ChartKind { Symplectic, Cosymplectic, Contact, Cocontact };

std::string to_string(ChartKind kind);
ChartKind chart_kind_from_string(std::string_view name);

// Darboux chart. Coordinates are ordered
//   Symplectic   (q1..qn, p1..pn)
//   Cosymplectic (t, q1..qn, p1..pn)
//   Contact      (q1..qn, p1..pn, z)
//   Cocontact    (t, q1..qn, p1..pn, z)
// The volume density is 1 in these coordinates, so divergences are plain
// coordinate divergences.
class Chart {
 public:
  Chart(ChartKind kind, int n);

  ChartKind kind() const { return kind_; }
  int n() const { return n_; }
  std::size_t dim() const;
  bool has_time() const;
  bool has_action() const;

  std::size_t t_index() const;
  std::size_t q_index(int i) const;  // i in [1, n]
  std::size_t p_index(int i) const;  // i in [1, n]
  std::size_t z_index() const;

  const std::vector<std::string>& variable_names() const { return names_; }

  Poly zero() const { return Poly(dim()); }
  Poly constant(const Rational& c) const { return Poly::constant(dim(), c); }
  Poly coordinate(std::size_t index) const { return Poly::variable(dim(), index); }
  Poly t() const { return coordinate(t_index()); }
  Poly q(int i) const { return coordinate(q_index(i)); }
  Poly p(int i) const { return coordinate(p_index(i)); }
  Poly z() const { return coordinate(z_index()); }

  // Parses an expression over this chart's variables.
  Poly parse(std::string_view text) const;
  std::string print(const Poly& f) const;

  // Throws DimensionMismatch unless f lives on this chart.
  void require(const Poly& f, const char* what) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_;
  }

 private:
  ChartKind kind_;
  int n_;
  std::vector<std::string> names_;
};

// Components of a covector field dx^i, one Poly per chart coordinate.
class OneFormExpr {
 public:
  explicit OneFormExpr(const Chart& chart);
  OneFormExpr(const Chart& chart, std::vector<Poly> components);

  const Chart& chart() const { return chart_; }
  const Poly& operator[](std::size_t i) const { return components_.at(i); }
  Poly& operator[](std::size_t i) { return components_.at(i); }
  const std::vector<Poly>& components() const { return components_; }
  bool is_zero() const;

  friend bool operator==(const OneFormExpr& a, const OneFormExpr& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

 private:
  Chart chart_;
  std::vector<Poly> components_;
};

// Components of a vector field along the coordinate vectors.
class VectorFieldExpr {
 public:
  explicit VectorFieldExpr(const Chart& chart);
  VectorFieldExpr(const Chart& chart, std::vector<Poly> components);

  const Chart& chart() const { return chart_; }
  const Poly& operator[](std::size_t i) const { return components_.at(i); }
  Poly& operator[](std::size_t i) { return components_.at(i); }
  const std::vector<Poly>& components() const { return components_; }
  bool is_zero() const;

  friend bool operator==(const VectorFieldExpr& a, const VectorFieldExpr& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

 private:
  Chart chart_;
  std::vector<Poly> components_;
};

// Two-form w = sum_{i<j} w_ij dx^i ^ dx^j stored as the full antisymmetric
// matrix of components.
class TwoFormExpr {
 public:
  explicit TwoFormExpr(const Chart& chart);

  const Chart& chart() const { return chart_; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_.at(i * dim_ + j); }
  // Sets w_ij and w_ji = -w_ij together.
  void set(std::size_t i, std::size_t j, const Poly& value);
  bool is_zero() const;

  friend bool operator==(const TwoFormExpr& a, const TwoFormExpr& b) {
    return a.chart_ == b.chart_ && a.entries_ == b.entries_;
  }

 private:
  Chart chart_;
  std::size_t dim_;
  std::vector<Poly> entries_;
};

OneFormExpr operator+(const OneFormExpr& a, const OneFormExpr& b);
OneFormExpr operator-(const OneFormExpr& a, const OneFormExpr& b);
OneFormExpr operator*(const Poly& f, const OneFormExpr& a);
VectorFieldExpr operator+(const VectorFieldExpr& a, const VectorFieldExpr& b);
VectorFieldExpr operator-(const VectorFieldExpr& a, const VectorFieldExpr& b);
VectorFieldExpr operator*(const Poly& f, const VectorFieldExpr& a);
TwoFormExpr operator+(const TwoFormExpr& a, const TwoFormExpr& b);
TwoFormExpr operator-(const TwoFormExpr& a, const TwoFormExpr& b);
TwoFormExpr operator*(const Poly& f, const TwoFormExpr& a);

// Reeb fields: R^tau = d/dt on charts with time, R^eta = d/dz on charts with
// an action coordinate.
std::optional<VectorFieldExpr> reeb_tau(const Chart& chart);
std::optional<VectorFieldExpr> reeb_eta(const Chart& chart);

struct CanonicalForms {
  std::optional<OneFormExpr> tau;    // dt
  std::optional<OneFormExpr> eta;    // dz - p_i dq^i
  OneFormExpr theta;                 // p_i dq^i
  // Omega = dq^i ^ dp_i on symplectic/cosymplectic charts, d(eta) on
  // contact/cocontact charts; both equal dq^i ^ dp_i in these coordinates.
  TwoFormExpr structure;
};

CanonicalForms canonical_forms(const Chart& chart);

// <alpha, X> = sum alpha_i X^i.
Poly pairing(const OneFormExpr& alpha, const VectorFieldExpr& x);

// Differential dF.
OneFormExpr differential(const Chart& chart, const Poly& f);

std::string to_string(const OneFormExpr& a);
std::string to_string(const VectorFieldExpr& x);

}  // namespace geokin
