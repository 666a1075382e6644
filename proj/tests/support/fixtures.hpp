#pragma once

#include <random>
#include <string>
#include <vector>

#include "mgl/graphon.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace fixtures {

using mgl::Multigraph;
using mgl::Mult;
using mgl::Rational;
using mgl::StepMultigraphon;

inline std::vector<Rational> parse(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  for (const auto& t : text) out.push_back(mgl::parse_rational(t));
  return out;
}

// pairs lists the distributions of cells (1,1), (1,2), ..., (1,m), (2,2), ...;
// diags lists each cell's probabilities of 0, 2, 4, ...
inline StepMultigraphon graphon(const std::vector<std::string>& widths,
                                const std::vector<std::vector<std::string>>& pairs,
                                const std::vector<std::vector<std::string>>& diags) {
  const std::size_t m = widths.size();
  mgl::RawGraphon raw;
  raw.widths = parse(widths);
  raw.pair.assign(m, std::vector<std::vector<Rational>>(m));
  std::size_t p = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      raw.pair[a][b] = parse(pairs[p++]);
      raw.pair[b][a] = raw.pair[a][b];
    }
  }
  for (const auto& d : diags) {
    std::vector<Rational> full;
    for (const auto& v : parse(d)) {
      full.push_back(v);
      full.push_back(0);
    }
    full.pop_back();
    raw.diag.push_back(full);
  }
  return StepMultigraphon::validate(std::move(raw));
}

inline StepMultigraphon two_block() {
  return graphon({"1/3", "2/3"}, {{"1/4", "1/2", "1/4"}, {"1/2", "1/2", "0"}, {"7/10", "1/5", "1/10"}},
                 {{"1/2", "1/2"}, {"1", "0"}});
}

inline Multigraph triangle_with_loop() {
  Multigraph g = mgl::graphs::complete(3);
  g.set(0, 0, 2);
  return g;
}

inline Multigraph path_with_double_edge() {
  Multigraph g = mgl::graphs::path(4);
  g.set(1, 2, 2);
  return g;
}

inline std::vector<StepMultigraphon> graphons() {
  return {
      graphon({"1"}, {{"1/2", "1/2"}}, {{"1"}}),
      graphon({"1"}, {{"1/4", "1/2", "1/4"}}, {{"1/2", "1/2"}}),
      two_block(),
      graphon({"1/2", "1/2"}, {{"0", "1"}, {"1", "0"}, {"0", "1"}}, {{"1"}, {"1"}}),
      graphon({"1/5", "2/5", "2/5"},
              {{"1/10", "3/10", "3/5"}, {"1/2", "1/4", "1/4"}, {"1", "0", "0"},
               {"1/3", "1/3", "1/3"}, {"0", "1/2", "1/2"}, {"9/10", "1/20", "1/20"}},
              {{"1/4", "3/4"}, {"1", "0"}, {"1/2", "1/2"}}),
      graphon({"1/2", "1/4", "1/4"},
              {{"1/8", "1/8", "1/4", "1/2"}, {"1/2", "0", "0", "1/2"}, {"1/4", "1/4", "1/4", "1/4"},
               {"1", "0", "0", "0"}, {"0", "0", "0", "1"}, {"1/3", "0", "2/3", "0"}},
              {{"1/3", "2/3"}, {"1", "0"}, {"0", "1"}}),
      mgl::from_graph(triangle_with_loop()),
      mgl::from_graph(path_with_double_edge()),
      graphon({"1/4", "1/4", "1/4", "1/4"},
              {{"1/2", "1/2"}, {"1/3", "2/3"}, {"1", "0"}, {"1/5", "4/5"}, {"1/4", "3/4"},
               {"3/4", "1/4"}, {"0", "1"}, {"2/3", "1/3"}, {"1/2", "1/2"}, {"1/10", "9/10"}},
              {{"1"}, {"1"}, {"1"}, {"1"}}),
      graphon({"3/4", "1/4"},
              {{"1/2", "1/4", "1/8", "1/8"}, {"0", "1/3", "1/3", "1/3"}, {"1/6", "1/6", "1/6", "1/2"}},
              {{"1/5", "4/5"}, {"3/5", "2/5"}}),
  };
}

// Symmetric matrix with off-diagonal entries uniform in 0..max_mult and
// diagonal entries uniform in {0, 2, ..., 2 floor(max_mult/2)}.
inline Multigraph random_multigraph(std::mt19937_64& rng, std::size_t n, Mult max_mult) {
  Multigraph g(n);
  std::uniform_int_distribution<Mult> off(0, max_mult), loops(0, max_mult / 2);
  for (std::size_t i = 0; i < n; ++i) {
    g.set(i, i, 2 * loops(rng));
    for (std::size_t j = i + 1; j < n; ++j) g.set(i, j, off(rng));
  }
  return g;
}

}  // namespace fixtures
