#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geokin/chart.hpp"

namespace geokin {

enum class Boundary { Periodic, ZeroInflow };

std::string to_string(Boundary b);
Boundary boundary_from_string(std::string_view name);

// Uniform cell-centred axis. An axis with a single cell is inactive: the
// density is taken to be constant along it.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t size = 1;
  Boundary boundary = Boundary::ZeroInflow;

  double width() const { return (hi - lo) / static_cast<double>(size); }
  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * width(); }
  bool active() const { return size > 1; }
};

// Phase-space density sampled on a tensor grid. Axes cover every chart
// coordinate except t, which plays the role of evolution time.
using DensityFunction = std::function<double(std::span<const double>)>;

class GridDensity {
 public:
  GridDensity(const Chart& chart, std::vector<Axis> axes, double time = 0.0);

  static GridDensity sample(const Chart& chart, std::vector<Axis> axes, const DensityFunction& f,
                            double time = 0.0);

  const Chart& chart() const { return chart_; }
  const std::vector<Axis>& axes() const { return axes_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  // Chart coordinate index of each axis.
  const std::vector<std::size_t>& coordinate_indices() const { return coords_; }

  std::size_t cell_count() const { return values_.size(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Row-major, last axis fastest.
  std::size_t flat_index(std::span<const std::size_t> idx) const;
  void unflatten(std::size_t flat, std::span<std::size_t> idx) const;
  // Phase coordinates (axis order) of a cell centre.
  void cell_center(std::size_t flat, std::span<double> x) const;

  // Product of widths over active axes.
  double cell_volume() const;
  double mass() const;
  // Density-weighted mean of each axis coordinate.
  std::vector<double> center_of_mass() const;
  // Multilinear interpolation at a phase point (axis order); zero outside
  // zero-inflow axes.
  double interpolate(std::span<const double> x) const;

  void write(std::ostream& out) const;
  static GridDensity read(std::istream& in);

 private:
  Chart chart_;
  std::vector<Axis> axes_;
  std::vector<std::size_t> coords_;
  std::vector<std::size_t> strides_;
  double time_;
  std::vector<double> values_;
};

// sum |a - b| * cell volume divided by the mass of `reference`.
double relative_l1(const GridDensity& a, const GridDensity& reference);

}  // namespace geokin
