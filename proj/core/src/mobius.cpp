#include "mgl/mobius.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "mgl/error.hpp"

namespace mgl {

std::optional<Rational> ParameterTable::lookup(const Multigraph& a) const {
  if (auto it = entries.find(a); it != entries.end()) return it->second;
  return default_value;
}

Rational ParameterTable::at(const Multigraph& a) const {
  if (auto v = lookup(a)) return *v;
  throw Error(ErrorCode::kTruncationExceeded,
              "matrix with max entry " + std::to_string(a.max_entry()) +
                  " is outside the table (k=" + std::to_string(k) +
                  ", max_mult=" + std::to_string(truncation.max_mult) + ")");
}

bool is_relabel_invariant(const ParameterTable& table) {
  if (table.k > 6) throw Error(ErrorCode::kInvalidArgument, "relabel check needs k <= 6");
  std::vector<std::size_t> order(table.k);
  for (const auto& [a, value] : table.entries) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      auto other = table.lookup(relabel(a, Permutation(order)));
      if (!other || *other != value) return false;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return true;
}

namespace detail {

void for_each_overlay(const Multigraph& a,
                      const std::function<void(const Multigraph&, bool)>& visit) {
  const std::size_t k = a.size();
  if (k > kDefaultOverlayCap) {
    throw Error(ErrorCode::kTruncationTooLarge,
                "overlay sum over E_" + std::to_string(k) + " exceeds the cap k<=" +
                    std::to_string(kDefaultOverlayCap));
  }
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) slots.emplace_back(i, j);
  }
  const std::uint64_t terms = std::uint64_t{1} << slots.size();
  Multigraph shifted = a;
  for (std::uint64_t mask = 0; mask < terms; ++mask) {
    // Every slot contributes exactly one edge when switched on.
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto [i, j] = slots[s];
      const Mult bump = (mask >> s) & 1 ? (i == j ? 2 : 1) : 0;
      shifted.set(i, j, a(i, j) + bump);
    }
    visit(shifted, std::popcount(mask) % 2 == 1);
  }
}

}  // namespace detail

Rational mobius_transform(const ParameterTable& f, const Multigraph& a) {
  return mobius_transform([&](const Multigraph& x) { return f.at(x); }, a);
}

ParameterTable tabulate(const std::function<Rational(const Multigraph&)>& f, std::size_t k,
                        const Truncation& truncation) {
  ParameterTable table;
  table.k = k;
  table.truncation = truncation;
  for (const Multigraph& a : enumerate_Ak(k, truncation)) table.entries.emplace(a, f(a));
  return table;
}

ParameterTable mobius_table(const std::function<Rational(const Multigraph&)>& f, std::size_t k,
                            const Truncation& truncation) {
  return tabulate([&](const Multigraph& a) { return mobius_transform(f, a); }, k, truncation);
}

InverseMobius inverse_mobius(const ParameterTable& g, const Multigraph& a) {
  if (g.entries.empty()) throw Error(ErrorCode::kEmptyTruncation, "table has no entries");
  InverseMobius out;
  Rational total = 0;
  for (const auto& [key, value] : g.entries) {
    total += value;
    if (key.size() == a.size() && leq(a, key)) out.value += value;
  }
  out.residual = abs(Rational(1 - total));
  return out;
}

void sort_basis(std::vector<Multigraph>& basis) {
  std::stable_sort(basis.begin(), basis.end(), [](const Multigraph& x, const Multigraph& y) {
    const auto ex = edge_count(x);
    const auto ey = edge_count(y);
    if (ex != ey) return ex < ey;
    return x.upper_triangle() < y.upper_triangle();
  });
}

namespace {

void require_uniform(std::span<const Multigraph> basis) {
  for (const Multigraph& a : basis) {
    if (a.size() != basis.front().size()) {
      throw Error(ErrorCode::kMixedVertexCounts, "basis mixes vertex counts " +
                                                     std::to_string(basis.front().size()) +
                                                     " and " + std::to_string(a.size()));
    }
  }
}

bool is_overlay(const Multigraph& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d(i, i) != 0 && d(i, i) != 2) return false;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d(i, j) > 1) return false;
    }
  }
  return true;
}

}  // namespace

IntMatrix zeta_matrix(std::span<const Multigraph> basis) {
  require_uniform(basis);
  const auto b = static_cast<Eigen::Index>(basis.size());
  IntMatrix z = IntMatrix::Zero(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) {
      z(i, j) = leq(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]) ? 1 : 0;
    }
  }
  return z;
}

IntMatrix zeta_inverse(std::span<const Multigraph> basis) {
  require_uniform(basis);
  const auto b = static_cast<Eigen::Index>(basis.size());
  IntMatrix inv = IntMatrix::Zero(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const Multigraph& a1 = basis[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < b; ++j) {
      const Multigraph& a2 = basis[static_cast<std::size_t>(j)];
      if (!leq(a1, a2)) continue;
      const Multigraph d = subtract(a2, a1);
      if (is_overlay(d)) inv(i, j) = edge_count(d) % 2 == 0 ? 1 : -1;
    }
  }
  const IntMatrix product = zeta_matrix(basis) * inv;
  if (product != IntMatrix::Identity(b, b)) {
    throw Error(ErrorCode::kBasisNotClosed,
                "Z times the closed-form inverse is not the identity on this basis");
  }
  return inv;
}

}  // namespace mgl
