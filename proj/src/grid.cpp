#include "geokin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "geokin/error.hpp"

namespace geokin {

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "zero_inflow"; }

Boundary boundary_from_string(std::string_view name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "zero_inflow") return Boundary::ZeroInflow;
  throw ConfigError("unknown boundary '" + std::string(name) + "'");
}

GridDensity::GridDensity(const Chart& chart, std::vector<Axis> axes, double time)
    : chart_(chart), axes_(std::move(axes)), time_(time) {
  for (std::size_t i = 0; i < chart_.dim(); ++i) {
    if (chart_.has_time() && i == chart_.t_index()) continue;
    coords_.push_back(i);
  }
  if (axes_.size() != coords_.size()) {
    throw DimensionMismatch("grid needs " + std::to_string(coords_.size()) + " axes on a " +
                            to_string(chart_.kind()) + " chart, got " +
                            std::to_string(axes_.size()));
  }
  std::size_t total = 1;
  strides_.assign(axes_.size(), 1);
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const Axis& ax = axes_[a];
    if (ax.size == 0 || !(ax.hi > ax.lo) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi)) {
      throw ConfigError("grid axis " + std::to_string(a) + " is degenerate");
    }
    strides_[a] = total;
    total *= ax.size;
  }
  values_.assign(total, 0.0);
}

GridDensity GridDensity::sample(const Chart& chart, std::vector<Axis> axes,
                                const DensityFunction& f, double time) {
  GridDensity g(chart, std::move(axes), time);
  std::vector<double> x(g.axes_.size());
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    g.cell_center(i, x);
    g.values_[i] = f(x);
  }
  return g;
}

std::size_t GridDensity::flat_index(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) flat += idx[a] * strides_[a];
  return flat;
}

void GridDensity::unflatten(std::size_t flat, std::span<std::size_t> idx) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    idx[a] = flat / strides_[a];
    flat %= strides_[a];
  }
}

void GridDensity::cell_center(std::size_t flat, std::span<double> x) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    x[a] = axes_[a].center(flat / strides_[a]);
    flat %= strides_[a];
  }
}

double GridDensity::cell_volume() const {
  double v = 1.0;
  for (const auto& ax : axes_) {
    if (ax.active()) v *= ax.width();
  }
  return v;
}

double GridDensity::mass() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * cell_volume();
}

std::vector<double> GridDensity::center_of_mass() const {
  std::vector<double> com(axes_.size(), 0.0);
  std::vector<double> x(axes_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    cell_center(i, x);
    total += values_[i];
    for (std::size_t a = 0; a < axes_.size(); ++a) com[a] += values_[i] * x[a];
  }
  for (auto& c : com) c /= total;
  return com;
}

double GridDensity::interpolate(std::span<const double> x) const {
  const std::size_t d = axes_.size();
  std::vector<long> lo(d, 0);
  std::vector<double> frac(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    const Axis& ax = axes_[a];
    if (!ax.active()) continue;
    const double u = (x[a] - ax.lo) / ax.width() - 0.5;
    lo[a] = static_cast<long>(std::floor(u));
    frac[a] = u - static_cast<double>(lo[a]);
  }
  // Corners outside a zero-inflow axis read the zero ghost value.
  double sum = 0.0;
  std::vector<std::size_t> idx(d);
  for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
    double w = 1.0;
    for (std::size_t a = 0; a < d && w != 0.0; ++a) {
      const bool upper = (corner >> a) & 1u;
      const Axis& ax = axes_[a];
      if (!ax.active()) {
        if (upper) w = 0.0;
        idx[a] = 0;
        continue;
      }
      const auto n = static_cast<long>(ax.size);
      long i = lo[a] + (upper ? 1 : 0);
      w *= upper ? frac[a] : 1.0 - frac[a];
      if (ax.boundary == Boundary::Periodic) {
        i = ((i % n) + n) % n;
      } else if (i < 0 || i >= n) {
        w = 0.0;
      }
      idx[a] = static_cast<std::size_t>(std::max(0L, i));
    }
    if (w != 0.0) sum += w * values_[flat_index(idx)];
  }
  return sum;
}

void GridDensity::write(std::ostream& out) const {
  char buf[40];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "geokin-grid 1\n";
  out << "chart " << to_string(chart_.kind()) << ' ' << chart_.n() << '\n';
  out << "time " << num(time_) << '\n';
  const auto& names = chart_.variable_names();
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& ax = axes_[a];
    out << "axis " << names[coords_[a]] << ' ' << num(ax.lo) << ' ' << num(ax.hi) << ' '
        << ax.size << ' ' << to_string(ax.boundary) << '\n';
  }
  out << "values " << values_.size() << '\n';
  for (double v : values_) out << num(v) << '\n';
}

GridDensity GridDensity::read(std::istream& in) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "geokin-grid" || version != 1) {
    throw ConfigError("not a geokin grid file");
  }
  std::string kind;
  int n = 0;
  if (!(in >> word >> kind >> n) || word != "chart") throw ConfigError("grid: missing chart line");
  const Chart chart(chart_kind_from_string(kind), n);
  double time = 0.0;
  if (!(in >> word >> time) || word != "time") throw ConfigError("grid: missing time line");
  std::vector<Axis> axes;
  const std::size_t expected = chart.dim() - (chart.has_time() ? 1 : 0);
  for (std::size_t a = 0; a < expected; ++a) {
    std::string name, boundary;
    Axis ax;
    if (!(in >> word >> name >> ax.lo >> ax.hi >> ax.size >> boundary) || word != "axis") {
      throw ConfigError("grid: malformed axis line");
    }
    ax.boundary = boundary_from_string(boundary);
    axes.push_back(ax);
  }
  GridDensity g(chart, std::move(axes), time);
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "values" || count != g.cell_count()) {
    throw ConfigError("grid: value count does not match axes");
  }
  for (auto& v : g.values_) {
    if (!(in >> v)) throw ConfigError("grid: truncated values");
  }
  return g;
}

double relative_l1(const GridDensity& a, const GridDensity& reference) {
  if (a.cell_count() != reference.cell_count()) {
    throw DimensionMismatch("relative_l1: grids differ in size");
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < a.cell_count(); ++i) diff += std::abs(a[i] - reference[i]);
  return diff * reference.cell_volume() / reference.mass();
}

}  // namespace geokin
