#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond the Multigraph container and the rational type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "mgl/graphon.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace oracle {

using mgl::Multigraph;
using mgl::Mult;
using mgl::Rational;

// Calls visit(phi) for every map [k] -> [n].
inline void for_each_map(std::size_t k, std::size_t n,
                         const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> phi(k, 0);
  while (true) {
    visit(phi);
    std::size_t pos = 0;
    while (pos < k && phi[pos] == n - 1) phi[pos++] = 0;
    if (pos == k) return;
    ++phi[pos];
  }
}

inline bool dominated(const Multigraph& f, const Multigraph& g, const std::vector<std::size_t>& phi,
                      bool eq) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      const Mult a = f(i, j), b = g(phi[i], phi[j]);
      if (eq ? a != b : a > b) return false;
    }
  }
  return true;
}

inline bool injective(const std::vector<std::size_t>& phi) {
  std::vector<std::size_t> s = phi;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

// Fraction of (injective) maps whose indicator holds.
inline Rational density(const Multigraph& f, const Multigraph& g, bool inj, bool eq) {
  std::int64_t hits = 0, total = 0;
  for_each_map(f.size(), g.size(), [&](const std::vector<std::size_t>& phi) {
    if (inj && !injective(phi)) return;
    ++total;
    if (dominated(f, g, phi, eq)) ++hits;
  });
  if (total == 0) return Rational(0);
  return Rational(mgl::BigInt(hits), mgl::BigInt(total));
}

inline Rational mass(const std::vector<Rational>& p, Mult l, bool eq) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (eq ? i == l : i >= l) s += p[i];
  }
  return s;
}

// Sum over all cell assignments of the product of widths and kernel factors.
inline Rational graphon_density(const Multigraph& f, const mgl::StepMultigraphon& w, bool eq) {
  Rational total = 0;
  for_each_map(f.size(), w.cells(), [&](const std::vector<std::size_t>& c) {
    Rational term = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      term *= w.width(c[i]) * mass(w.diag(c[i]), f(i, i), eq);
      for (std::size_t j = i + 1; j < f.size(); ++j) term *= mass(w.pair(c[i], c[j]), f(i, j), eq);
    }
    total += term;
  });
  return total;
}

inline Multigraph permuted(const Multigraph& g, const std::vector<std::size_t>& p) {
  Multigraph h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) h.set(i, j, g(p[i], p[j]));
  }
  return h;
}

inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> p(a.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    if (permuted(a, p) == b) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// All symmetric matrices on k vertices with off-diagonal entries <= off_cap
// and diagonal entries in {0, 2, ..., diag_cap}.
inline std::vector<Multigraph> all_matrices(std::size_t k, Mult off_cap, Mult diag_cap) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) slots.emplace_back(i, j);
  }
  std::vector<Mult> digit(slots.size(), 0);
  std::vector<Multigraph> out;
  while (true) {
    Multigraph g(k);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto [i, j] = slots[s];
      g.set(i, j, i == j ? 2 * digit[s] : digit[s]);
    }
    out.push_back(g);
    std::size_t pos = 0;
    while (pos < slots.size()) {
      const auto [i, j] = slots[pos];
      const Mult top = i == j ? diag_cap / 2 : off_cap;
      if (digit[pos] < top) break;
      digit[pos++] = 0;
    }
    if (pos == slots.size()) return out;
    ++digit[pos];
  }
}

// f^dagger(A) from the definition, with overlays enumerated independently.
inline Rational mobius(const std::function<Rational(const Multigraph&)>& f, const Multigraph& a) {
  Rational sum = 0;
  for (const Multigraph& e : all_matrices(a.size(), 1, 2)) {
    Multigraph shifted(a.size());
    std::uint64_t edges = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i; j < a.size(); ++j) {
        shifted.set(i, j, a(i, j) + e(i, j));
        edges += i == j ? e(i, j) / 2 : e(i, j);
      }
    }
    if (edges % 2) sum -= f(shifted);
    else sum += f(shifted);
  }
  return sum;
}

}  // namespace oracle
