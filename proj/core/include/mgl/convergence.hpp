#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mgl/density.hpp"
#include "mgl/graphon.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace mgl {

using SequenceElement = std::variant<Multigraph, StepMultigraphon>;

enum class CellMethod { kExact, kMonteCarlo, kError };
std::string_view to_string(CellMethod method);

struct TrajectoryCell {
  double value = 0.0;
  double std_error = 0.0;
  CellMethod method = CellMethod::kError;
  std::optional<Rational> exact;
  std::string error;
};

/// values[s][t] = t_<=(testgraphs[t], element s).
struct DensityTrajectory {
  std::vector<Multigraph> testgraphs;
  /// Vertex count for graphs, 1-based position for multigraphons.
  std::vector<std::size_t> labels;
  std::vector<std::vector<TrajectoryCell>> values;
};

struct TrajectoryOptions {
  /// Exact evaluation is attempted when the map (or cell assignment) count
  /// is at most this; otherwise the cell is estimated.
  std::uint64_t budget = 10'000'000;
  std::size_t mc_samples = 20'000;
  std::uint64_t seed = 0;
  Mode mode = Mode::kLeq;
};

DensityTrajectory density_trajectory(std::span<const SequenceElement> sequence,
                                     std::span<const Multigraph> testgraphs,
                                     const TrajectoryOptions& options = {});

/// CSV "n,testgraph_id,value,stderr,method" with 1-based testgraph ids.
void write_trajectory_csv(std::ostream& out, const DensityTrajectory& trajectory);

/// Canonical multigraphs on 1..3 vertices with entries at most 2.
std::vector<Multigraph> default_testgraphs();

struct DiagnosticReport {
  std::string test;
  /// One value per testgraph (or per grid point for tightness).
  std::vector<double> values;
  double statistic = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
};

void write_report(std::ostream& out, const DiagnosticReport& report);

/// Max minus min of each testgraph column over the last `window` rows;
/// passes iff every oscillation is at most tol.
DiagnosticReport cauchy_diagnostic(const DensityTrajectory& trajectory, std::size_t window,
                                   double tol);

struct TightnessReport {
  std::vector<Mult> m_grid;
  /// max over the sequence of the off-diagonal and diagonal tails at each m.
  std::vector<Rational> offdiag;
  std::vector<Rational> diag;
  /// Tails are nonincreasing along the grid for every element.
  bool monotone = true;
  double threshold = 0.0;
  bool pass = false;
};

inline constexpr double kDefaultTightnessThreshold = 1e-3;

TightnessReport tightness_diagnostic(std::span<const StepMultigraphon> sequence,
                                     std::span<const Mult> m_grid,
                                     double threshold = kDefaultTightnessThreshold);

void write_report(std::ostream& out, const TightnessReport& report);

struct CrossCheckReport {
  /// Largest trailing-window oscillation of exact densities.
  double density_oscillation = 0.0;
  /// Largest total variation distance between consecutive empirical window
  /// laws in the trailing window.
  double window_distance = 0.0;
  double density_tol = 0.0;
  double distance_tol = 0.0;
  bool densities_stable = false;
  bool windows_stable = false;
  bool agree = false;
};

struct CrossCheckOptions {
  std::size_t window = 3;
  double tol = 0.05;
  std::uint64_t budget = 10'000'000;
};

/// Compares stabilization of t_<= trajectories with stabilization of the
/// empirical laws of X_G|_k (k = largest testgraph) over N samples each.
/// The distance tolerance adds 2 sqrt(C/N) for C observed categories.
CrossCheckReport cross_check(std::span<const Multigraph> sequence,
                             std::span<const Multigraph> testgraphs, std::size_t samples,
                             std::uint64_t seed, const CrossCheckOptions& options = {});

void write_report(std::ostream& out, const CrossCheckReport& report);

struct GapCheck {
  Rational gap;
  Rational bound;
  bool holds = false;
};

/// |t_=(F,G) - t^0_=(F,G)| against C(k,2)/n.
GapCheck injective_gap(const Multigraph& f, const Multigraph& g,
                       std::uint64_t budget = kDefaultMapBudget);

}  // namespace mgl
