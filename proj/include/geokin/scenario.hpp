#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geokin/fields.hpp"
#include "geokin/flow.hpp"
#include "geokin/grid.hpp"
#include "geokin/solvers.hpp"

namespace geokin {

enum class Task { Simulate, IdentityCheck, KineticParticle, KineticGrid, MomentumCheck };

std::string to_string(Task task);
Task task_from_string(std::string_view name);

enum class DensityType { Gaussian, Expression };

// Initial density on the kinetic grid. Gaussian centre and widths are given
// per grid axis; inactive axes are ignored.
struct DensitySpec {
  DensityType type = DensityType::Gaussian;
  std::vector<double> center;
  std::vector<double> sigma;
  double amplitude = 1.0;
  std::optional<Poly> expression;
};

struct ScenarioConfig {
  Task task = Task::Simulate;
  Chart chart{ChartKind::Symplectic, 1};
  std::uint64_t seed = 0;
  std::filesystem::path base_dir;  // relative output paths resolve against this
  std::string output;

  std::optional<Poly> hamiltonian;
  FieldSpec field{Chart(ChartKind::Symplectic, 1)};

  // simulate
  std::vector<double> initial_point;
  double t_start = 0.0;
  double t_final = 0.0;
  IntegratorConfig integrator;

  // identity-check, momentum-check (random corpus size)
  int samples = 100;

  // momentum-check with explicit one-form components
  std::optional<OneFormExpr> momentum;

  // kinetic tasks
  std::vector<Axis> axes;
  double grid_time = 0.0;
  DensitySpec density;
  KineticConfig kinetic;
};

// Parses a config document. Errors are ConfigError/ParseError with the JSON
// path of the offending entry in the message.
ScenarioConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
// Reads a config file. A nonempty task_override replaces the "task" entry.
// Refuses an output path that names the config file itself.
ScenarioConfig load_config(const std::filesystem::path& path, const std::string& task_override = {});

// Normalized echo of a parsed config (expressions printed in canonical form).
nlohmann::json describe(const ScenarioConfig& config);

DensityFunction make_density(const ScenarioConfig& config);

struct RunOutcome {
  bool passed = true;
  std::vector<std::filesystem::path> artifacts;
  nlohmann::json summary;
};

// Runs the task and writes its artifacts. Solver and module errors propagate.
RunOutcome run(const ScenarioConfig& config);

// JSON report of the exact identity suite.
nlohmann::json identity_report_json(const Chart& chart, std::uint64_t seed, int samples);

}  // namespace geokin
