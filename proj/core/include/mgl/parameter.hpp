#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mgl/density.hpp"
#include "mgl/graphon.hpp"
#include "mgl/mobius.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"
#include "mgl/sampler.hpp"

namespace mgl {

struct Evaluation {
  double value = 0.0;
  /// Present for exact backends.
  std::optional<Rational> exact;
  /// Zero for exact backends.
  double std_error = 0.0;
};

/// A map from multigraphs to reals backed by a graph, a step multigraphon, a
/// set of lookup tables, an exact callable or a Monte Carlo estimate.
class GraphParameter {
 public:
  enum class Backend { kGraph, kGraphon, kTable, kFunction, kEstimate };

  /// t_<=(., G) or t_=(., G).
  static GraphParameter from_graph(Multigraph g, Mode mode = Mode::kLeq,
                                   std::uint64_t budget = kDefaultMapBudget);
  /// t_<=(., W) or t_=(., W).
  static GraphParameter from_graphon(StepMultigraphon w, Mode mode = Mode::kLeq,
                                     std::uint64_t budget = kDefaultMapBudget);
  /// Looks up the table whose k matches |V(F)|: exact key, then any
  /// isomorphic key, then the table default. Throws TableMiss otherwise.
  static GraphParameter from_table(std::vector<ParameterTable> tables);
  static GraphParameter from_function(std::function<Rational(const Multigraph&)> fn,
                                      std::string name);
  /// Empirical P(A <= X|_k) (or ==) with N samples from `generator`.
  static GraphParameter from_estimate(std::shared_ptr<const ArrayGenerator> generator,
                                      Mode mode, std::size_t samples, std::uint64_t seed);

  Evaluation evaluate(const Multigraph& f) const;
  double operator()(const Multigraph& f) const { return evaluate(f).value; }

  /// Exact value; throws InvalidArgument for estimate backends.
  Rational exact(const Multigraph& f) const;
  bool is_exact() const noexcept { return backend_ != Backend::kEstimate; }

  /// f^dagger(A), exact when the backend is. Graph and multigraphon
  /// backends in leq mode return t_=(A, .) directly.
  Evaluation mobius(const Multigraph& a) const;

  Backend backend() const noexcept { return backend_; }
  Mode mode() const noexcept { return mode_; }
  const std::string& describe() const noexcept { return name_; }
  const Multigraph* graph() const noexcept { return graph_.get(); }
  const StepMultigraphon* graphon() const noexcept { return graphon_.get(); }

 private:
  Backend backend_ = Backend::kFunction;
  Mode mode_ = Mode::kLeq;
  std::string name_;
  std::shared_ptr<const Multigraph> graph_;
  std::shared_ptr<const StepMultigraphon> graphon_;
  std::function<Evaluation(const Multigraph&)> eval_;
  // t_=, which equals the transform of t_<= for graphs and multigraphons.
  std::function<Evaluation(const Multigraph&)> dagger_;
};

/// Checks f(A) == f(tau A) for the default relabelings of every graph given.
bool relabel_invariant(const GraphParameter& f, std::span<const Multigraph> graphs,
                       double tol = 1e-12);

/// Finite minor of M(k, f).
struct ConnectionMatrix {
  std::size_t k = 0;
  std::vector<KLabeledGraph> basis;
  Eigen::MatrixXd entries;
};

/// Entries f(glue(F_i, F_j)). For exact backends both triangles are
/// evaluated and compared; a mismatch throws NonSymmetricInput.
ConnectionMatrix connection_matrix(const GraphParameter& f, std::size_t k,
                                   std::span<const KLabeledGraph> basis);

inline constexpr std::size_t kDefaultBasisCap = 20;

/// k-labeled graphs with at most `unlabeled` extra vertices and entries at
/// most `max_mult`, one per labeled isomorphism class, ordered by
/// (size, edge count, upper triangle) and cut at `cap`.
std::vector<KLabeledGraph> connection_basis(std::size_t k, std::size_t unlabeled, Mult max_mult,
                                            std::size_t cap = kDefaultBasisCap);

void write_connection_csv(std::ostream& out, const ConnectionMatrix& m);

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double max_norm = 0.0;
};

inline constexpr double kDefaultPsdTolerance = 1e-8;

/// Smallest eigenvalue by a symmetric eigensolver; PSD iff
/// min_eig >= -tol * max|M_ij|. Throws NonSymmetricInput.
PsdResult psd_check(const Eigen::MatrixXd& m, double tol = kDefaultPsdTolerance);

struct Verdict {
  std::string name;
  bool pass = false;
  bool heuristic = false;
  std::string detail;
};

struct ParameterReport {
  std::vector<Verdict> verdicts;
  bool pass() const;
};

void write_report(std::ostream& out, const ParameterReport& report);

struct ParameterCheckOptions {
  double tol = 1e-9;
  /// Disjoint pairs (A, B) tested for multiplicativity.
  std::size_t max_pairs = 400;
  /// Inflation steps A, 2A, 4A, ... before the probe gives up.
  std::size_t inflation_steps = 16;
  double defect_threshold = 1e-6;
  std::uint64_t seed = 0;
};

/// Normalization, multiplicativity, the non-defectiveness probe (heuristic)
/// and f^dagger >= -tol over the truncated A_k. Entries a table cannot
/// evaluate are skipped and counted in the detail text.
ParameterReport check_parameter(const GraphParameter& f, std::size_t k,
                                const Truncation& truncation,
                                const ParameterCheckOptions& options = {});

enum class SequenceRoute { kAuto, kLatent, kEnumeration };

struct SequenceOptions {
  SequenceRoute route = SequenceRoute::kAuto;
  double negative_tol = 1e-9;
  /// Largest accepted per-step dropped conditional mass.
  double max_dropped = 1e-6;
  std::size_t max_restarts = 100;
};

struct ConsistentSequence {
  std::vector<Multigraph> graphs;
  SequenceRoute route = SequenceRoute::kAuto;
  /// Per step 1 - (kept mass / f^dagger(A_n)); zero on the latent route.
  std::vector<double> dropped_mass;
  std::size_t restarts = 0;
};

/// G_1, ..., G_nmax with G_n ~ P_n = f^dagger, each extending the previous.
///
/// The enumeration route draws the new vertex row from f^dagger(A')/f^dagger(A_n)
/// over truncated extensions; it is limited to n_max <= 6 by the overlay
/// cap. For t_<= of a graph or step multigraphon the latent route draws cell
/// labels and rows from the multigraphon directly, which has the same law and
/// scales to large n. Throws NegativeMobiusMass, ResidualTooLarge,
/// ZeroConditional.
ConsistentSequence sample_consistent_sequence(const GraphParameter& f, std::size_t n_max,
                                              const Truncation& truncation, std::uint64_t seed,
                                              const SequenceOptions& options = {});

struct QuadraticFormCheck {
  double exact = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// v^T M v against the Monte Carlo mean of (sum_m v_m Y_m)^2, where Y_m is
/// the indicator that F_m sits below the window of X_W with labels on the
/// first k indices and disjoint index blocks for unlabeled vertices.
QuadraticFormCheck reflection_witness(const StepMultigraphon& w, std::size_t k,
                                      std::span<const KLabeledGraph> basis,
                                      std::span<const double> v, std::size_t samples,
                                      std::uint64_t seed);

}  // namespace mgl
