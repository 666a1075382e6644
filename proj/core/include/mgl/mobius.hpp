#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace mgl {

/// Finite restriction of a function on A_k, keyed by labeled adjacency matrix.
/// An optional default value extends it to matrices outside the listed ones.
struct ParameterTable {
  std::size_t k = 1;
  Truncation truncation;
  std::map<Multigraph, Rational> entries;
  std::optional<Rational> default_value;

  std::optional<Rational> lookup(const Multigraph& a) const;

  /// Entry or default; throws TruncationExceeded otherwise.
  Rational at(const Multigraph& a) const;
};

/// Exhaustive check over all relabelings of every entry (k <= 6).
bool is_relabel_invariant(const ParameterTable& table);

namespace detail {
// Calls visit(A + E, e(E) odd) for every E in E_k, k = a.size().
void for_each_overlay(const Multigraph& a,
                      const std::function<void(const Multigraph&, bool)>& visit);

inline double as_double(double x) { return x; }
inline double as_double(const Rational& x) { return to_double(x); }
}  // namespace detail

/// f^dagger(A) = sum over E in E_k of (-1)^{e(E)} f(A + E). The scalar type
/// follows f: Rational callables give exact sums, double callables float sums.
template <class Fn>
  requires std::invocable<Fn&, const Multigraph&>
auto mobius_transform(Fn&& f, const Multigraph& a) {
  using T = std::decay_t<std::invoke_result_t<Fn&, const Multigraph&>>;
  T sum = 0;
  detail::for_each_overlay(a, [&](const Multigraph& shifted, bool odd) {
    if (odd) sum -= f(shifted);
    else sum += f(shifted);
  });
  return sum;
}

/// Table version; throws TruncationExceeded if some A + E is not covered.
Rational mobius_transform(const ParameterTable& f, const Multigraph& a);

/// Tabulates an exact callable over the truncated A_k.
ParameterTable tabulate(const std::function<Rational(const Multigraph&)>& f, std::size_t k,
                        const Truncation& truncation);

/// The table of f^dagger over the truncated A_k.
ParameterTable mobius_table(const std::function<Rational(const Multigraph&)>& f, std::size_t k,
                            const Truncation& truncation);

struct InverseMobius {
  Rational value;
  /// |1 - total table mass|; an indicator of truncation error for
  /// probability tables.
  Rational residual;
};

/// Truncated upward sum over A' >= A within the table.
InverseMobius inverse_mobius(const ParameterTable& g, const Multigraph& a);

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Orders by (e(A), row-major upper triangle) so that Z is upper triangular.
void sort_basis(std::vector<Multigraph>& basis);

/// Z(A1, A2) = 1[A1 <= A2].
IntMatrix zeta_matrix(std::span<const Multigraph> basis);

/// Closed form Z^{-1}(A1, A2) = (-1)^{e(A2 - A1)} 1[A2 - A1 in E_k], verified
/// against Z; throws BasisNotClosed if the product is not the identity.
IntMatrix zeta_inverse(std::span<const Multigraph> basis);

struct FactorizationReport {
  std::size_t basis_size = 0;
  /// max |M - Z D Z^T| over the basis.
  double max_deviation = 0.0;
  /// min over the basis of f^dagger.
  double min_mobius = 0.0;
};

/// Builds M(A1,A2) = f(A1 v A2), Z and D = diag(f^dagger) over the truncated
/// A_k and compares M with Z D Z^T. Exact when f returns Rational.
template <class Fn>
FactorizationReport factorization_check(Fn&& f, std::size_t k, const Truncation& truncation) {
  using T = std::decay_t<std::invoke_result_t<Fn&, const Multigraph&>>;
  std::vector<Multigraph> basis = enumerate_Ak(k, truncation);
  sort_basis(basis);
  const std::size_t b = basis.size();
  std::vector<T> mob(b);
  for (std::size_t i = 0; i < b; ++i) mob[i] = mobius_transform(f, basis[i]);
  std::vector<std::vector<char>> below(b, std::vector<char>(b, 0));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) below[i][j] = leq(basis[i], basis[j]) ? 1 : 0;
  }
  FactorizationReport report;
  report.basis_size = b;
  report.min_mobius = b == 0 ? 0.0 : detail::as_double(mob[0]);
  for (std::size_t i = 0; i < b; ++i) {
    report.min_mobius = std::min(report.min_mobius, detail::as_double(mob[i]));
  }
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i; j < b; ++j) {
      const T m = f(entrywise_max(basis[i], basis[j]));
      T zdz = 0;
      for (std::size_t e = 0; e < b; ++e) {
        if (below[i][e] && below[j][e]) zdz += mob[e];
      }
      const T diff = m - zdz;
      report.max_deviation = std::max(report.max_deviation, std::abs(detail::as_double(diff)));
    }
  }
  return report;
}

}  // namespace mgl
