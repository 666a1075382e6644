#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgl/density.hpp"
#include "mgl/graphon.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/random.hpp"

namespace mgl {

/// A k x k window X|_k of a simulated infinite exchangeable array.
struct ArraySample {
  std::size_t k = 0;
  Multigraph window;
  std::uint64_t seed = 0;
  std::uint32_t replicate = 0;
  std::string source;
};

/// Source of exchangeable arrays. Implementations must be pure functions of
/// (k, rng, replicate) and consistent: the top-left k x k block of a larger
/// window equals the k-window for the same rng and replicate.
class ArrayGenerator {
 public:
  virtual ~ArrayGenerator() = default;
  virtual Multigraph window(std::size_t k, const CounterRng& rng,
                            std::uint32_t replicate) const = 0;
  virtual std::string describe() const = 0;

  ArraySample sample(std::size_t k, std::uint64_t seed, std::uint32_t replicate = 0) const;
};

/// X_G(i,j) = B(xi_i, xi_j) with xi_i i.i.d. uniform on the vertices.
class GraphArray final : public ArrayGenerator {
 public:
  explicit GraphArray(Multigraph g);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override;

 private:
  Multigraph g_;
};

/// X^0_G(i,j) = B(rho(i), rho(j)) for a uniform permutation rho, zero beyond n.
class InjectiveGraphArray final : public ArrayGenerator {
 public:
  explicit InjectiveGraphArray(Multigraph g);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override;

 private:
  Multigraph g_;
};

/// X_W for a step multigraphon: U_i uniform, entry (i,j) drawn from
/// W(U_i,U_j,.) by inverse CDF at beta_ij, diagonal from the diagonal profile.
class GraphonArray final : public ArrayGenerator {
 public:
  explicit GraphonArray(StepMultigraphon w);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override;
  const StepMultigraphon& graphon() const noexcept { return w_; }

 private:
  StepMultigraphon w_;
};

/// X_W for a general multigraphon given by sampling access.
class SampledGraphonArray final : public ArrayGenerator {
 public:
  explicit SampledGraphonArray(SampledMultigraphon w);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override;

 private:
  SampledMultigraphon w_;
};

/// alpha, U_i and beta_{ij} (i <= j), all uniform on [0,1].
struct LatentVariables {
  std::optional<double> alpha;
  std::vector<double> u;
  /// beta[i][j - i] for i <= j.
  std::vector<std::vector<double>> beta;

  double beta_at(std::size_t i, std::size_t j) const {
    return i <= j ? beta[i][j - i] : beta[j][i - j];
  }
};

LatentVariables draw_latents(const CounterRng& rng, std::uint32_t replicate, std::size_t k,
                             bool with_alpha);

/// g(u1, u2, beta) with g symmetric in (u1, u2) and even on u1 == u2.
using Representation = std::function<Mult(double, double, double)>;
/// f(alpha, u1, u2, beta).
using MixedRepresentation = std::function<Mult(double, double, double, double)>;

inline constexpr std::size_t kDefaultProbes = 1000;

/// X(i,j) = g(U_i, U_j, beta_{min(i,j),max(i,j)}), or with a leading alpha
/// drawn once per array. Construction probes the representation and throws
/// AsymmetricRepresentation / OddDiagonalRepresentation.
class AldousArray final : public ArrayGenerator {
 public:
  explicit AldousArray(Representation g, std::size_t probes = kDefaultProbes);
  explicit AldousArray(MixedRepresentation f, std::size_t probes = kDefaultProbes);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override;

 private:
  MixedRepresentation f_;
  bool mixed_;
};

/// Wraps an arbitrary window function; no exchangeability is assumed.
class FunctionArray final : public ArrayGenerator {
 public:
  using WindowFn = std::function<Multigraph(std::size_t, const CounterRng&, std::uint32_t)>;
  FunctionArray(WindowFn fn, std::string name);
  Multigraph window(std::size_t k, const CounterRng& rng, std::uint32_t replicate) const override;
  std::string describe() const override { return name_; }

 private:
  WindowFn fn_;
  std::string name_;
};

/// Inverse-CDF encoding of a step multigraphon as a three-argument
/// representation.
Representation encode_representation(const StepMultigraphon& w);

ArraySample sample_XG(const Multigraph& g, std::size_t k, std::uint64_t seed);
ArraySample sample_XG0(const Multigraph& g, std::size_t k, std::uint64_t seed);
ArraySample sample_XW(const StepMultigraphon& w, std::size_t k, std::uint64_t seed);
ArraySample sample_XW(const SampledMultigraphon& w, std::size_t k, std::uint64_t seed);
ArraySample sample_aldous(const Representation& g, std::size_t k, std::uint64_t seed);
ArraySample sample_aldous(const MixedRepresentation& f, std::size_t k, std::uint64_t seed);

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Frequency of windows X|_k with A <= X|_k (or A == X|_k) over N replicates.
Estimate empirical_density(const ArrayGenerator& gen, const Multigraph& a, Mode mode,
                           std::size_t samples, std::uint64_t seed);

/// Result of a chi-square test, printed as "key: value" lines.
struct StatReport {
  std::string test;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  bool pass = true;
  bool zero_variance = false;
  std::vector<std::string> notes;
};

void write_report(std::ostream& out, const StatReport& report);

inline constexpr double kDefaultSignificance = 0.01;

/// Two-sample chi-square homogeneity test on categorical data; categories
/// with fewer than 10 combined observations are pooled.
StatReport chi_square_homogeneity(const std::vector<std::vector<Mult>>& sample_a,
                                  const std::vector<std::vector<Mult>>& sample_b,
                                  double significance, std::string name);

/// Chi-square independence test on paired categorical observations.
StatReport chi_square_independence(const std::vector<std::vector<Mult>>& left,
                                   const std::vector<std::vector<Mult>>& right,
                                   double significance, std::string name);

struct ExchangeabilityReport {
  std::vector<Permutation> permutations;
  std::vector<StatReport> per_permutation;
  bool pass = true;
};

/// Default relabelings of [k]: a transposition, a cyclic shift and the
/// reversal (identity only when k = 1).
std::vector<Permutation> default_permutations(std::size_t k);

/// Compares the law of X|_k with that of (X(tau i, tau j)) for each tau,
/// drawing the two groups from disjoint replicate ranges.
ExchangeabilityReport exchangeability_test(const ArrayGenerator& gen, std::size_t k,
                                           std::size_t samples, std::uint64_t seed,
                                           std::span<const Permutation> permutations = {},
                                           double significance = kDefaultSignificance);

/// Independence of the sub-windows on index sets I and J (0-based, disjoint,
/// at most two indices each). Throws OverlappingSplit.
StatReport dissociation_test(const ArrayGenerator& gen, std::span<const std::size_t> left,
                             std::span<const std::size_t> right, std::size_t samples,
                             std::uint64_t seed, double significance = kDefaultSignificance);

/// Law of the k-window of a (k+1)-sample versus a direct k-sample.
StatReport consistency_test(const ArrayGenerator& gen, std::size_t k, std::size_t samples,
                            std::uint64_t seed, double significance = kDefaultSignificance);

/// Law of the k-windows of two generators.
StatReport window_law_test(const ArrayGenerator& a, const ArrayGenerator& b, std::size_t k,
                           std::size_t samples, std::uint64_t seed,
                           double significance = kDefaultSignificance);

}  // namespace mgl
