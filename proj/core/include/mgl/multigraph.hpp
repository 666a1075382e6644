#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mgl/rational.hpp"

namespace mgl {

/// Edge multiplicity. Diagonal entries hold twice the loop count.
using Mult = std::uint32_t;

/// Undirected multigraph stored as a dense symmetric adjacency matrix with an
/// even diagonal. Vertices are 0-based here; file formats are 1-based and the
/// conversion lives in io.cpp.
class Multigraph {
 public:
  Multigraph() = default;

  /// The edgeless graph on `n` vertices.
  explicit Multigraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  /// Checks symmetry, nonnegativity and even diagonal, naming the first
  /// offending index pair (1-based) on failure.
  static Multigraph validate(const std::vector<std::vector<std::int64_t>>& rows);

  /// Builds from the row-major upper triangle (i <= j), the layout used by
  /// parameter tables and window categories.
  static Multigraph from_upper_triangle(std::size_t n, std::span<const Mult> upper);

  std::size_t size() const noexcept { return n_; }
  Mult operator()(std::size_t i, std::size_t j) const noexcept { return adj_[i * n_ + j]; }

  /// Sets A(i,j) and A(j,i). Throws OddDiagonal for odd diagonal values.
  void set(std::size_t i, std::size_t j, Mult m);

  std::span<const Mult> row(std::size_t i) const noexcept {
    return {adj_.data() + i * n_, n_};
  }
  std::vector<Mult> upper_triangle() const;
  Mult max_entry() const noexcept;

  friend auto operator<=>(const Multigraph&, const Multigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Mult> adj_;
};

struct MultigraphHash {
  std::size_t operator()(const Multigraph& g) const noexcept;
};

/// e(A) = 1/2 sum_{i,j} A(i,j).
std::uint64_t edge_count(const Multigraph& g) noexcept;

/// Entrywise A <= B. Throws DimensionMismatch on differing vertex counts.
bool leq(const Multigraph& a, const Multigraph& b);

/// Entrywise sum; used for A + E in Moebius sums.
Multigraph add(const Multigraph& a, const Multigraph& b);

/// Entrywise difference a - b; requires b <= a.
Multigraph subtract(const Multigraph& a, const Multigraph& b);

/// Entrywise maximum; the gluing of two k-labeled graphs without unlabeled
/// vertices.
Multigraph entrywise_max(const Multigraph& a, const Multigraph& b);

/// Disjoint union, vertices of `b` appended after those of `a`.
Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

/// Principal submatrix on the given vertices, in the given order.
Multigraph induced(const Multigraph& g, std::span<const std::size_t> vertices);

/// Bijection on {0..n-1}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator()(std::size_t i) const noexcept { return map_[i]; }
  const std::vector<std::size_t>& mapping() const noexcept { return map_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// H(i,j) = G(sigma(i), sigma(j)), the simultaneous relabeling of rows and
/// columns.
Multigraph relabel(const Multigraph& g, const Permutation& sigma);

struct Truncation {
  Mult max_mult = 2;
  std::optional<std::uint64_t> max_edges;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;
inline constexpr std::size_t kDefaultOverlayCap = 6;
inline constexpr std::size_t kDefaultCanonicalCap = 8;

/// All A in A_k with off-diagonal entries <= max_mult, diagonal entries
/// <= 2*floor(max_mult/2) and (optionally) e(A) <= max_edges, in
/// lexicographic order of the row-major upper triangle.
std::vector<Multigraph> enumerate_Ak(std::size_t k, const Truncation& truncation,
                                     std::size_t cap = kDefaultEnumerationCap);

/// The 2^(k(k+1)/2) overlay matrices: off-diagonal in {0,1}, diagonal in {0,2}.
std::vector<Multigraph> enumerate_Ek(std::size_t k, std::size_t max_k = kDefaultOverlayCap);

/// Lexicographic minimum over all vertex permutations, serialised column by
/// column over the upper triangle: A(0,0), A(0,1), A(1,1), A(0,2), ...
Multigraph canonical_form(const Multigraph& g, std::size_t max_n = kDefaultCanonicalCap);

/// As canonical_form, but only permutations fixing vertices 0..k-1.
Multigraph canonical_form_labeled(const Multigraph& g, std::size_t k,
                                  std::size_t max_n = kDefaultCanonicalCap);

/// True iff g equals its own canonical form. Exits on the first smaller
/// relabeling, so it is much cheaper than canonical_form on random input.
bool is_canonical(const Multigraph& g, std::size_t max_n = kDefaultCanonicalCap);

bool isomorphic(const Multigraph& a, const Multigraph& b,
                std::size_t max_n = kDefaultCanonicalCap);

/// A multigraph whose first k vertices carry labels 1..k.
class KLabeledGraph {
 public:
  KLabeledGraph(std::size_t k, Multigraph graph);

  std::size_t labels() const noexcept { return k_; }
  const Multigraph& graph() const noexcept { return graph_; }
  std::size_t unlabeled() const noexcept { return graph_.size() - k_; }

  friend auto operator<=>(const KLabeledGraph&, const KLabeledGraph&) = default;

 private:
  std::size_t k_;
  Multigraph graph_;
};

/// Identifies equal labels, takes the max multiplicity among labeled pairs and
/// appends the unlabeled vertices of f1 then f2 with no edges across parts.
KLabeledGraph glue(const KLabeledGraph& f1, const KLabeledGraph& f2);

/// Twin classes (equal adjacency rows) with the class-level matrix and the
/// class weights |I|/n.
struct QuotientData {
  std::vector<std::vector<std::size_t>> classes;
  Multigraph matrix;
  std::vector<Rational> weights;
};

QuotientData quotient(const Multigraph& g);

/// Blows every class up into n*weight twins. Throws NonIntegerClassSize.
Multigraph reconstruct(const QuotientData& q, std::size_t n);

// Small named graphs used by fixtures, defaults and tests.
namespace graphs {
Multigraph empty(std::size_t n);                     // O_n
Multigraph edge(Mult multiplicity = 1);              // K2 with a multi-edge
Multigraph loops(std::size_t loop_count);            // one vertex, A(0,0)=2*count
Multigraph complete(std::size_t n);                  // simple K_n
Multigraph path(std::size_t vertices);               // simple path
}  // namespace graphs

}  // namespace mgl
