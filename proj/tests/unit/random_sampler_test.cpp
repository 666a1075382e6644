#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mgl/density.hpp"
#include "mgl/error.hpp"
#include "mgl/graphon.hpp"
#include "mgl/random.hpp"
#include "mgl/sampler.hpp"

using namespace mgl;

namespace {

std::vector<std::size_t> head(std::size_t k) {
  std::vector<std::size_t> v(k);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

bool valid_window(const Multigraph& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w(i, i) % 2 != 0) return false;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w(i, j) != w(j, i)) return false;
    }
  }
  return true;
}

StepMultigraphon one_cell(std::vector<Rational> pair, std::vector<Rational> diag) {
  return constant_graphon(std::move(pair), std::move(diag));
}

}  // namespace

TEST(Philox, KnownAnswerVectors) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, {0, 0}),
            (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 {0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                 {0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, StreamsAreIndependentAndUniform) {
  const CounterRng rng(42);
  EXPECT_EQ(rng.seed(), 42u);
  EXPECT_NE(rng.bits(Stream::kVertex, 0, 0), rng.bits(Stream::kEdge, 0, 0));
  EXPECT_EQ(rng.bits(Stream::kVertex, 3, 7, 1), CounterRng(42).bits(Stream::kVertex, 3, 7, 1));
  double sum = 0;
  std::vector<int> counts(5, 0);
  for (std::uint32_t i = 0; i < 20000; ++i) {
    const double u = rng.uniform(Stream::kAuxiliary, 0, i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    ++counts[rng.below(5, Stream::kAuxiliary, 1, i)];
  }
  EXPECT_NEAR(sum / 20000, 0.5, 4 * std::sqrt(1.0 / 12 / 20000));
  for (int c : counts) EXPECT_NEAR(c, 4000, 4 * std::sqrt(20000 * 0.2 * 0.8));
}

TEST(SampleXG, SpecExamples) {
  EXPECT_EQ(sample_XG(graphs::empty(1), 4, 1).window, graphs::empty(4));
  const ArraySample loop = sample_XG(graphs::loops(1), 2, 1);
  EXPECT_EQ(loop.window, Multigraph::validate({{2, 2}, {2, 2}}));
  EXPECT_EQ(loop.seed, 1u);
  EXPECT_EQ(loop.k, 2u);
  const Estimate e = empirical_density(GraphArray(graphs::edge(1)), graphs::edge(1), Mode::kLeq,
                                       100000, 3);
  EXPECT_NEAR(e.estimate, 0.5, 3 * e.std_error);
}

TEST(SampleXG0, SpecExamples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(sample_XG0(graphs::edge(1), 2, s).window, graphs::edge(1));
    const Multigraph w = sample_XG0(graphs::edge(1), 3, s).window;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w(2, i), 0u);
  }
  const Multigraph g = fixtures::triangle_with_loop();
  std::size_t loops = 0;
  for (std::uint64_t s = 0; s < 3000; ++s) loops += sample_XG0(g, 1, s).window(0, 0) == 2;
  EXPECT_NEAR(loops / 3000.0, 1.0 / 3, 4 * std::sqrt(2.0 / 9 / 3000));
}

TEST(SampleXW, SpecExamples) {
  EXPECT_EQ(sample_XW(one_cell({1}, {1}), 5, 9).window, graphs::empty(5));
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(sample_XW(one_cell({0, 1}, {1}), 2, s).window, graphs::edge(1));
  }
  const Estimate none = empirical_density(GraphonArray(one_cell({0, 1}, {1})), graphs::edge(2),
                                          Mode::kLeq, 1000, 1);
  EXPECT_EQ(none.estimate, 0.0);
}

TEST(SampleXW, GraphOfGraphonMatchesXG) {
  const Multigraph g = fixtures::path_with_double_edge();
  const StatReport r = window_law_test(GraphonArray(from_graph(g)), GraphArray(g), 3, 20000, 5);
  EXPECT_TRUE(r.pass) << r.statistic << " p=" << r.p_value;
}

TEST(Samplers, DeterministicValidAndConsistent) {
  const Multigraph g = fixtures::path_with_double_edge();
  const std::vector<std::shared_ptr<ArrayGenerator>> gens{
      std::make_shared<GraphArray>(g), std::make_shared<InjectiveGraphArray>(g),
      std::make_shared<GraphonArray>(fixtures::two_block()),
      std::make_shared<AldousArray>(encode_representation(fixtures::two_block()))};
  for (const auto& gen : gens) {
    for (std::uint32_t r = 0; r < 30; ++r) {
      const CounterRng rng(77);
      const Multigraph big = gen->window(7, rng, r);
      EXPECT_TRUE(valid_window(big));
      EXPECT_EQ(big, gen->window(7, CounterRng(77), r));
      EXPECT_EQ(induced(big, head(4)), gen->window(4, rng, r)) << gen->describe();
    }
  }
}

TEST(Samplers, ConsistencyProperty) {
  const GraphonArray gen(fixtures::two_block());
  EXPECT_TRUE(consistency_test(gen, 2, 20000, 11).pass);
}

TEST(Aldous, SpecExamples) {
  const Representation half = [](double u1, double u2, double b) -> Mult {
    return b < 0.5 && u1 != u2 ? 1 : 0;
  };
  const Estimate e = empirical_density(AldousArray(half), graphs::edge(1), Mode::kEq, 40000, 2);
  EXPECT_NEAR(e.estimate, 0.5, 4 * e.std_error);
  const Representation zero = [](double, double, double) -> Mult { return 0; };
  EXPECT_EQ(sample_aldous(zero, 4, 1).window, graphs::empty(4));
}

TEST(Aldous, ProbingRejectsBadRepresentations) {
  const Representation asym = [](double u1, double u2, double) -> Mult { return u1 < u2 ? 1 : 0; };
  try {
    AldousArray a(asym);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAsymmetricRepresentation);
  }
  const Representation odd = [](double u1, double u2, double) -> Mult { return u1 == u2 ? 1 : 0; };
  try {
    AldousArray a(odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOddDiagonalRepresentation);
  }
}

TEST(Aldous, EncodingMatchesGraphonSampler) {
  // Ten fixtures at a family-wise level of 0.01.
  for (const auto& w : fixtures::graphons()) {
    const StatReport r = window_law_test(AldousArray(encode_representation(w)), GraphonArray(w), 2,
                                         20000, 13, 0.001);
    EXPECT_TRUE(r.pass) << r.statistic << " p=" << r.p_value;
  }
}

TEST(EmpiricalDensity, AgreesWithExactDensity) {
  const Estimate e = empirical_density(GraphArray(graphs::complete(3)), graphs::edge(1),
                                       Mode::kLeq, 100000, 4);
  EXPECT_NEAR(e.estimate, 2.0 / 3, 3 * e.std_error);
  const Estimate trivial = empirical_density(GraphArray(graphs::complete(3)), graphs::empty(3),
                                             Mode::kLeq, 100, 4);
  EXPECT_EQ(trivial.estimate, 1.0);
  EXPECT_EQ(trivial.std_error, 0.0);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 6; ++t) {
    const Multigraph g = fixtures::random_multigraph(rng, 4, 2);
    const Multigraph f = fixtures::random_multigraph(rng, 2, 1);
    for (Mode mode : {Mode::kLeq, Mode::kEq}) {
      const Estimate est = empirical_density(GraphArray(g), f, mode, 20000, 100 + t);
      const double exact = to_double(
          density(f, g, mode == Mode::kLeq ? DensityVariant::kHomLeq : DensityVariant::kHomEq));
      EXPECT_LE(std::abs(est.estimate - exact), 4 * est.std_error + 1e-12);
    }
  }
}

TEST(Exchangeability, GraphonPassesAdversaryFails) {
  const ExchangeabilityReport ok = exchangeability_test(GraphonArray(fixtures::two_block()), 3,
                                                        20000, 17);
  EXPECT_EQ(ok.per_permutation.size(), 3u);
  EXPECT_TRUE(ok.pass);
  const FunctionArray fixed(
      [](std::size_t k, const CounterRng&, std::uint32_t) {
        Multigraph w(k);
        if (k >= 2) w.set(0, 1, 1);
        return w;
      },
      "fixed edge on {1,2}");
  EXPECT_FALSE(exchangeability_test(fixed, 3, 2000, 17).pass);
  const ExchangeabilityReport single = exchangeability_test(fixed, 1, 100, 17);
  EXPECT_TRUE(single.pass);
  EXPECT_EQ(single.permutations.size(), 1u);
}

TEST(Dissociation, GraphonPassesMixtureFails) {
  const std::vector<std::size_t> left{0, 1}, right{2, 3};
  EXPECT_TRUE(dissociation_test(GraphonArray(fixtures::two_block()), left, right, 20000, 19).pass);
  const MixedRepresentation mixture = [](double alpha, double u1, double u2, double) -> Mult {
    return alpha < 0.5 || u1 == u2 ? 0 : 1;
  };
  const StatReport bad = dissociation_test(AldousArray(mixture), left, right, 20000, 19);
  EXPECT_FALSE(bad.pass);
  const StatReport flat = dissociation_test(GraphonArray(one_cell({1}, {1})), left, right, 100, 19);
  EXPECT_TRUE(flat.pass);
  EXPECT_TRUE(flat.zero_variance);
  const std::vector<std::size_t> overlap{1, 2};
  try {
    dissociation_test(GraphonArray(fixtures::two_block()), left, overlap, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlappingSplit);
  }
}

TEST(StatReport, TextLayout) {
  StatReport r;
  r.test = "demo";
  r.statistic = 1.5;
  r.dof = 2;
  r.p_value = 0.5;
  std::ostringstream out;
  write_report(out, r);
  EXPECT_EQ(out.str(), "test: demo\nstatistic: 1.5\ndof: 2\np_value: 0.5\nverdict: pass\n");
}
