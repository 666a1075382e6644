#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mgl/density.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace mgl {

/// Unvalidated step-multigraphon fields. `pair` is a full m x m array of
/// distributions over multiplicities {0..M}; `diag` holds the per-cell
/// diagonal profile x -> W(x,x,.).
struct RawGraphon {
  std::vector<Rational> widths;
  std::vector<std::vector<std::vector<Rational>>> pair;
  std::vector<std::vector<Rational>> diag;
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Block-constant multigraphon. Probabilities are stored exactly; double
/// mirrors are kept for sampling.
class StepMultigraphon {
 public:
  /// Checks widths, normalisation, symmetry and zero odd diagonal mass.
  /// Sums must equal 1 exactly or within 1e-12 in double precision.
  static StepMultigraphon validate(RawGraphon raw);

  std::size_t cells() const noexcept { return widths_.size(); }
  /// Largest multiplicity in the support grid, M.
  Mult cap() const noexcept { return cap_; }

  const Rational& width(std::size_t a) const { return widths_[a]; }
  const std::vector<Rational>& pair(std::size_t a, std::size_t b) const { return pair_[a][b]; }
  const std::vector<Rational>& diag(std::size_t a) const { return diag_[a]; }

  /// P_ab(>= l) and D_a(>= l); zero beyond the cap.
  Rational pair_tail(std::size_t a, std::size_t b, Mult l) const;
  Rational diag_tail(std::size_t a, Mult l) const;

  /// Right endpoints of the cells in [0,1], as doubles.
  const std::vector<double>& cumulative_widths() const noexcept { return cumulative_; }
  const std::vector<double>& pair_cdf(std::size_t a, std::size_t b) const { return pair_cdf_[a][b]; }
  const std::vector<double>& diag_cdf(std::size_t a) const { return diag_cdf_[a]; }

  /// Cell containing x in [0,1).
  std::size_t cell_of(double x) const;

  /// True when every sum was exactly 1 (rational mode is then exact).
  bool exactly_normalized() const noexcept { return exact_; }

  const RawGraphon& raw() const noexcept { return raw_; }

 private:
  RawGraphon raw_;
  std::vector<Rational> widths_;
  std::vector<std::vector<std::vector<Rational>>> pair_;
  std::vector<std::vector<Rational>> diag_;
  Mult cap_ = 0;
  bool exact_ = true;
  std::vector<double> cumulative_;
  std::vector<std::vector<std::vector<double>>> pair_cdf_;
  std::vector<std::vector<double>> diag_cdf_;
};

/// Smallest l with u < cdf[l], skipping zero-mass entries that rounding can
/// expose at the top of the support.
Mult inverse_cdf(const std::vector<double>& cdf, double u);

/// W_G: n cells of width 1/n carrying point masses at the adjacency entries.
StepMultigraphon from_graph(const Multigraph& g);

/// One-cell multigraphon with off-diagonal law `pair` and diagonal law `diag`.
StepMultigraphon constant_graphon(std::vector<Rational> pair, std::vector<Rational> diag);

/// Exact t_<=(F,W) or t_=(F,W): sum over cell assignments c of
/// prod w_c(i) * prod_{i<j} S_{c(i)c(j)}(A(i,j)) * prod_i T_{c(i)}(A(i,i)),
/// S and T being tails (leq) or point probabilities (eq). Pairs i != j always
/// use the off-diagonal kernel, also when c(i) = c(j).
Rational graphon_density_exact(const Multigraph& f, const StepMultigraphon& w, Mode mode,
                               std::uint64_t budget = kDefaultMapBudget);

/// Same sum in double precision with compensated summation.
double graphon_density(const Multigraph& f, const StepMultigraphon& w, Mode mode,
                       std::uint64_t budget = kDefaultMapBudget);

struct TailMass {
  Rational offdiag;
  Rational diag;
};

/// Off-diagonal and diagonal mass at multiplicities >= m0.
TailMass tightness_tail(const StepMultigraphon& w, Mult m0);

/// General multigraphon with sampling access only. Distributions are over
/// {0..cap}; mass above the cap is not representable and must be folded in
/// by the caller.
struct SampledMultigraphon {
  std::function<std::vector<double>(double, double)> kernel;
  std::function<std::vector<double>(double)> diag_kernel;
  Mult cap = 0;

  /// Spot-checks symmetry, normalisation and odd diagonal mass on `probes`
  /// deterministic points; throws the corresponding validation error.
  void check(std::size_t probes = 1000) const;
};

}  // namespace mgl
