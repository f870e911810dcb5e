#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "geokin/grid.hpp"
#include "geokin/kinetics.hpp"

namespace geokin {

enum class Seeding { Lattice, Random };

struct KineticConfig {
  double t_final = 1.0;            // evolution time measured from the initial grid time
  double dt = 1e-2;
  std::vector<double> snapshots;   // extra output times in (0, t_final); t_final always added
  std::size_t particle_count = 10000;
  Seeding seeding = Seeding::Lattice;
  std::uint64_t seed = 0;
  int threads = 0;                 // 0: GEOKIN_THREADS or 1
  double max_courant = 1.0;
};

// Worker count: explicit request, else GEOKIN_THREADS, else 1.
int resolve_threads(int requested);

// Particle positions are full chart states (t included where present).
struct ParticleEnsemble {
  Chart chart;
  std::vector<std::vector<double>> states;
  std::vector<double> weights;

  double mass() const;
  // CSV columns q1..qn,p1..pn[,z][,t],w
  void write_csv(std::ostream& out) const;
};

struct ParticleResult {
  std::vector<GridDensity> snapshots;  // CIC deposits, one per output time
  ParticleEnsemble final_ensemble;
  double initial_mass = 0.0;
  double escaped_mass = 0.0;           // weight of particles dropped at zero-inflow edges
  std::vector<double> escaped_by_snapshot;
};

// Seeds weighted particles from f0, advects them along the kinetic
// Hamiltonian flow (with t advancing at unit rate on charts with time) and
// evolves each weight by dw/ds = weight_rate(H) w, then deposits onto the
// grid of `layout` with cloud-in-cell weights.
ParticleResult solve_density_particle(const Chart& chart, const Poly& h, const DensityFunction& f0,
                                      const GridDensity& layout, const KineticConfig& config);
ParticleResult solve_density_particle(const Chart& chart, const Poly& h, const GridDensity& f0,
                                      const KineticConfig& config);

struct GridResult {
  std::vector<GridDensity> snapshots;
  std::size_t steps = 0;
};

// First-order (donor-cell) upwind in space, SSP-RK3 in time, for the
// conservative form of density_vlasov_rhs,
//   df/ds + div(a X_H f) = weight_rate(H) f.
// Throws StabilityError when the Courant number or |rate| dt exceeds the
// guard.
GridResult solve_density_grid(const Chart& chart, const Poly& h, const GridDensity& f0,
                              const KineticConfig& config);

}  // namespace geokin
