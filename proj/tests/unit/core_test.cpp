#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mgl/error.hpp"
#include "mgl/multigraph.hpp"
#include "oracles.hpp"

using namespace mgl;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Validate, AcceptsEdgeAndLoop) {
  const Multigraph e = Multigraph::validate({{0, 1}, {1, 0}});
  EXPECT_EQ(e(0, 1), 1u);
  EXPECT_EQ(edge_count(e), 1u);
  const Multigraph l = Multigraph::validate({{2}});
  EXPECT_EQ(edge_count(l), 1u);
}

TEST(Validate, RejectsOddDiagonalAndAsymmetry) {
  EXPECT_EQ(code_of([] { Multigraph::validate({{1}}); }), ErrorCode::kOddDiagonal);
  EXPECT_EQ(code_of([] { Multigraph::validate({{0, 1}, {2, 0}}); }), ErrorCode::kAsymmetricMatrix);
  EXPECT_EQ(code_of([] { Multigraph::validate({{0, 1}}); }), ErrorCode::kDimensionMismatch);
}

TEST(Validate, NamesFirstOffendingPair) {
  try {
    Multigraph::validate({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(1,3)"), std::string::npos) << e.what();
  }
}

TEST(EdgeCount, HalfTheEntrySum) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Multigraph g = fixtures::random_multigraph(rng, 1 + t % 6, 3);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) sum += g(i, j);
    }
    EXPECT_EQ(sum % 2, 0u);
    EXPECT_EQ(edge_count(g), sum / 2);
  }
}

TEST(Order, LeqIsEntrywise) {
  EXPECT_TRUE(leq(graphs::empty(2), graphs::edge(1)));
  EXPECT_TRUE(leq(graphs::edge(1), graphs::edge(2)));
  EXPECT_FALSE(leq(graphs::edge(2), graphs::edge(1)));
  EXPECT_EQ(code_of([] { leq(graphs::empty(1), graphs::empty(2)); }), ErrorCode::kDimensionMismatch);
}

TEST(Enumerate, SizesMatchOracle) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (Mult m = 0; m <= 3; ++m) {
      const auto got = enumerate_Ak(k, Truncation{m, std::nullopt});
      const auto want = oracle::all_matrices(k, m, 2 * (m / 2));
      EXPECT_EQ(got.size(), want.size()) << "k=" << k << " M=" << m;
      EXPECT_EQ(std::set<Multigraph>(got.begin(), got.end()),
                std::set<Multigraph>(want.begin(), want.end()));
    }
  }
}

TEST(Enumerate, EdgeCapAndSizeCap) {
  const auto capped = enumerate_Ak(2, Truncation{2, 1});
  for (const auto& a : capped) EXPECT_LE(edge_count(a), 1u);
  EXPECT_EQ(capped.size(), 4u);  // O_2, edge, loop at 1, loop at 2
  EXPECT_EQ(code_of([] { enumerate_Ak(6, Truncation{3, std::nullopt}, 1000); }),
            ErrorCode::kTruncationTooLarge);
  EXPECT_EQ(enumerate_Ek(3).size(), 64u);
  EXPECT_EQ(code_of([] { enumerate_Ek(7); }), ErrorCode::kTruncationTooLarge);
}

TEST(Canonical, AgreesWithPermutationOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 6;
    const Multigraph g = fixtures::random_multigraph(rng, n, 2);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    const Multigraph h = oracle::permuted(g, p);
    EXPECT_EQ(canonical_form(g), canonical_form(h));
    EXPECT_TRUE(oracle::isomorphic(canonical_form(g), g));
    EXPECT_TRUE(isomorphic(g, h));
  }
}

TEST(Canonical, DistinguishesNonIsomorphicPairs) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4;
    const Multigraph a = fixtures::random_multigraph(rng, n, 1);
    const Multigraph b = fixtures::random_multigraph(rng, n, 1);
    EXPECT_EQ(canonical_form(a) == canonical_form(b), oracle::isomorphic(a, b));
  }
}

TEST(Canonical, IsCanonicalCountsIsomorphismTypes) {
  // Simple graphs on 4 vertices: 11 types; on 3 vertices with loops allowed
  // and entries <= 1: 20 types.
  std::size_t simple4 = 0;
  for (const auto& g : oracle::all_matrices(4, 1, 0)) simple4 += is_canonical(g);
  EXPECT_EQ(simple4, 11u);
  std::size_t looped3 = 0;
  for (const auto& g : oracle::all_matrices(3, 1, 2)) looped3 += is_canonical(g);
  EXPECT_EQ(looped3, 20u);
}

TEST(Canonical, LabeledFormFixesLabels) {
  // Path 1-2-3 with label on vertex 1 versus label on the middle vertex.
  const Multigraph end_labeled = graphs::path(3);
  Multigraph mid_labeled(3);
  mid_labeled.set(0, 1, 1);
  mid_labeled.set(0, 2, 1);
  EXPECT_TRUE(isomorphic(end_labeled, mid_labeled));
  EXPECT_NE(canonical_form_labeled(end_labeled, 1), canonical_form_labeled(mid_labeled, 1));
  Multigraph swapped(3);
  swapped.set(0, 2, 1);
  swapped.set(2, 1, 1);
  EXPECT_EQ(canonical_form_labeled(end_labeled, 1), canonical_form_labeled(swapped, 1));
  EXPECT_EQ(code_of([] { canonical_form(graphs::empty(9)); }),
            ErrorCode::kTooLargeForCanonicalization);
}

TEST(Relabel, PermutationSemantics) {
  const Multigraph p = graphs::path(3);  // 0-1-2
  const Permutation sigma({1, 0, 2});
  const Multigraph h = relabel(p, sigma);
  EXPECT_EQ(h(0, 2), p(1, 2));
  EXPECT_EQ(relabel(h, sigma.inverse()), p);
  EXPECT_EQ(code_of([] { Permutation({0, 0}); }), ErrorCode::kInvalidArgument);
}

TEST(Glue, MaxOnLabelsAndDisjointRest) {
  // Two 1-labeled edges glue into a path centred at the label.
  const KLabeledGraph e(1, graphs::edge(1));
  const KLabeledGraph glued = glue(e, e);
  EXPECT_EQ(glued.graph().size(), 3u);
  EXPECT_TRUE(isomorphic(glued.graph(), [] {
    Multigraph g(3);
    g.set(0, 1, 1);
    g.set(0, 2, 1);
    return g;
  }()));
  // 2-labeled: labeled pair takes the max.
  const KLabeledGraph a(2, graphs::edge(1)), b(2, graphs::edge(2));
  EXPECT_EQ(glue(a, b).graph(), graphs::edge(2));
  EXPECT_EQ(code_of([] { KLabeledGraph(3, graphs::edge(1)); }), ErrorCode::kLabelCountMismatch);
  EXPECT_EQ(code_of([&] { glue(e, a); }), ErrorCode::kLabelCountMismatch);
}

TEST(Glue, CommutesUpToIsomorphism) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const KLabeledGraph a(2, fixtures::random_multigraph(rng, 2 + t % 3, 2));
    const KLabeledGraph b(2, fixtures::random_multigraph(rng, 2 + (t / 3) % 3, 2));
    EXPECT_EQ(canonical_form_labeled(glue(a, b).graph(), 2),
              canonical_form_labeled(glue(b, a).graph(), 2));
  }
}

TEST(Quotient, TwinClassesAndWeights) {
  // K_{2,1} with a loop on the hub: the two leaves are twins.
  Multigraph g(3);
  g.set(0, 1, 1);
  g.set(0, 2, 1);
  g.set(0, 0, 2);
  const QuotientData q = quotient(g);
  ASSERT_EQ(q.classes.size(), 2u);
  EXPECT_EQ(q.classes[1], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(q.weights[0], make_rational(1, 3));
  EXPECT_EQ(q.weights[1], make_rational(2, 3));
  EXPECT_EQ(q.matrix(0, 1), 1u);
  EXPECT_EQ(q.matrix(1, 1), 0u);
  EXPECT_TRUE(isomorphic(reconstruct(q, 3), g));
  EXPECT_EQ(code_of([&] { reconstruct(q, 4); }), ErrorCode::kNonIntegerClassSize);
}

TEST(Quotient, RoundTripOnRandomGraphs) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const Multigraph g = fixtures::random_multigraph(rng, 1 + t % 6, 2);
    const QuotientData q = quotient(g);
    Rational total = 0;
    for (const auto& w : q.weights) total += w;
    EXPECT_EQ(total, 1);
    EXPECT_TRUE(oracle::isomorphic(reconstruct(q, g.size()), g));
  }
}

TEST(Operations, AddSubtractUnion) {
  const Multigraph a = graphs::edge(1), b = graphs::edge(2);
  EXPECT_EQ(add(a, a), b);
  EXPECT_EQ(subtract(b, a), a);
  EXPECT_EQ(entrywise_max(a, b), b);
  const Multigraph u = disjoint_union(a, graphs::loops(1));
  EXPECT_EQ(u.size(), 3u);
  EXPECT_EQ(edge_count(u), 2u);
  const std::vector<std::size_t> verts{0, 0};
  EXPECT_EQ(induced(a, verts), graphs::empty(2));
  const std::vector<std::size_t> bad{5};
  EXPECT_EQ(code_of([&] { induced(a, bad); }), ErrorCode::kRangeViolation);
}
