#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mgl/convergence.hpp"
#include "mgl/density.hpp"
#include "mgl/error.hpp"
#include "mgl/graphon.hpp"
#include "mgl/sampler.hpp"

using namespace mgl;

namespace {

StepMultigraphon erdos_renyi(int num, int den) {
  return constant_graphon({make_rational(den - num, den), make_rational(num, den)}, {1});
}

std::vector<SequenceElement> w_random(const StepMultigraphon& w, std::vector<std::size_t> sizes,
                                      std::uint64_t seed) {
  std::vector<SequenceElement> out;
  for (std::size_t n : sizes) out.emplace_back(sample_XW(w, n, seed).window);
  return out;
}

Multigraph cherry() {
  Multigraph g(3);
  g.set(0, 1, 1);
  g.set(0, 2, 1);
  return g;
}

DensityTrajectory scalar_trajectory(const std::vector<double>& values) {
  DensityTrajectory t;
  t.testgraphs = {graphs::edge(1)};
  for (std::size_t s = 0; s < values.size(); ++s) {
    TrajectoryCell c;
    c.value = values[s];
    c.method = CellMethod::kExact;
    t.labels.push_back(s + 1);
    t.values.push_back({c});
  }
  return t;
}

}  // namespace

TEST(Trajectory, ConstantSequenceHasConstantRows) {
  const Multigraph g = fixtures::triangle_with_loop();
  const std::vector<SequenceElement> seq(3, g);
  const auto tests = default_testgraphs();
  const DensityTrajectory t = density_trajectory(seq, tests);
  ASSERT_EQ(t.values.size(), 3u);
  for (std::size_t c = 0; c < tests.size(); ++c) {
    EXPECT_EQ(t.values[0][c].method, CellMethod::kExact);
    EXPECT_EQ(*t.values[0][c].exact, density(tests[c], g, DensityVariant::kHomLeq));
    EXPECT_EQ(t.values[2][c].value, t.values[0][c].value);
  }
  EXPECT_EQ(t.labels, (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_EQ(cauchy_diagnostic(t, 3, 0.0).statistic, 0.0);
}

TEST(Trajectory, EmptyTestgraphList) {
  const std::vector<SequenceElement> seq{graphs::complete(3), graphs::complete(4)};
  const DensityTrajectory t = density_trajectory(seq, {});
  for (const auto& row : t.values) EXPECT_TRUE(row.empty());
  std::ostringstream out;
  write_trajectory_csv(out, t);
  EXPECT_EQ(out.str(), "n,testgraph_id,value,stderr,method\n");
}

TEST(Trajectory, MonteCarloFallbackAndCsv) {
  const std::vector<SequenceElement> seq{graphs::complete(3), fixtures::two_block()};
  const std::vector<Multigraph> tests{graphs::edge(1), graphs::complete(3)};
  TrajectoryOptions opts;
  opts.budget = 10;
  opts.mc_samples = 5000;
  const DensityTrajectory t = density_trajectory(seq, tests, opts);
  EXPECT_EQ(t.values[0][0].method, CellMethod::kExact);
  EXPECT_EQ(t.values[0][1].method, CellMethod::kMonteCarlo);
  EXPECT_NEAR(t.values[0][1].value, 2.0 / 9, 4 * t.values[0][1].std_error);
  EXPECT_EQ(t.labels, (std::vector<std::size_t>{3, 2}));
  std::ostringstream out;
  write_trajectory_csv(out, t);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,testgraph_id,value,stderr,method");
  std::getline(lines, line);
  EXPECT_EQ(line, "3,1,0.66666666666666663,0,exact");
  EXPECT_EQ(density_trajectory(seq, tests, opts).values[0][1].value, t.values[0][1].value);
}

TEST(Trajectory, ErrorCells) {
  const std::vector<SequenceElement> seq{fixtures::two_block(), fixtures::two_block()};
  const std::vector<Multigraph> tests{graphs::edge(1)};
  TrajectoryOptions opts;
  opts.budget = 0;
  opts.mc_samples = 0;
  const DensityTrajectory t = density_trajectory(seq, tests, opts);
  EXPECT_EQ(t.values[0][0].method, CellMethod::kError);
  EXPECT_FALSE(t.values[0][0].error.empty());
  std::ostringstream out;
  write_trajectory_csv(out, t);
  EXPECT_NE(out.str().find("1,1,,,error"), std::string::npos);
}

TEST(Trajectory, DefaultTestgraphsAreCanonicalTypes) {
  const auto tests = default_testgraphs();
  // 1 vertex: 2; 2 vertices: 3 * 2 * 2 labelings up to swap = 9; 3 vertices
  // with entries <= 2 and loops in {0, 2}.
  std::size_t three = 0;
  for (const auto& g : tests) {
    EXPECT_TRUE(is_canonical(g));
    EXPECT_LE(g.max_entry(), 2u);
    three += g.size() == 3;
  }
  EXPECT_EQ(tests.size() - three, 2u + 9u);
  EXPECT_GT(three, 0u);
}

TEST(Cauchy, OscillationExamples) {
  const DiagnosticReport flat = cauchy_diagnostic(scalar_trajectory({0.3, 0.3, 0.3}), 3, 0.01);
  EXPECT_EQ(flat.statistic, 0.0);
  EXPECT_TRUE(flat.pass);
  const DiagnosticReport alt = cauchy_diagnostic(scalar_trajectory({0, 1, 0, 1, 0, 1}), 4, 0.05);
  EXPECT_EQ(alt.statistic, 1.0);
  EXPECT_FALSE(alt.pass);
  std::ostringstream out;
  write_report(out, alt);
  EXPECT_NE(out.str().find("verdict: fail"), std::string::npos);
  EXPECT_NE(out.str().find("heuristic"), std::string::npos);
  EXPECT_THROW(cauchy_diagnostic(scalar_trajectory({1}), 2, 0.1), Error);
}

TEST(Cauchy, RandomGraphsFromMultigraphonStabilize) {
  const StepMultigraphon w = fixtures::two_block();
  const auto seq = w_random(w, {50, 100, 150, 200, 250, 300, 350, 400}, 21);
  const std::vector<Multigraph> tests{graphs::edge(1), cherry(), graphs::edge(2)};
  TrajectoryOptions opts;
  opts.seed = 3;
  const DensityTrajectory t = density_trajectory(seq, tests, opts);
  EXPECT_TRUE(cauchy_diagnostic(t, 4, 0.05).pass);
  EXPECT_NEAR(t.values.back()[0].value, to_double(graphon_density_exact(graphs::edge(1), w, Mode::kLeq)),
              0.05);
}

TEST(Tightness, FixedGraphHasZeroTails) {
  const std::vector<StepMultigraphon> seq(3, from_graph(fixtures::path_with_double_edge()));
  const std::vector<Mult> grid{1, 2, 3, 4};
  const TightnessReport r = tightness_diagnostic(seq, grid);
  EXPECT_GT(r.offdiag[1], 0);
  EXPECT_EQ(r.offdiag[2], 0);
  EXPECT_EQ(r.offdiag[3], 0);
  EXPECT_EQ(r.diag[0], 0);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.pass);
}

TEST(Tightness, EscapingMassFails) {
  std::vector<StepMultigraphon> seq;
  for (Mult n = 1; n <= 12; ++n) {
    std::vector<Rational> p(n + 1, Rational(0));
    p[n] = 1;
    seq.push_back(constant_graphon(p, {1}));
  }
  const std::vector<Mult> grid{1, 2, 4, 8};
  const TightnessReport r = tightness_diagnostic(seq, grid);
  for (const auto& t : r.offdiag) EXPECT_EQ(t, 1);
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.pass);
  std::ostringstream out;
  write_report(out, r);
  EXPECT_NE(out.str().find("8,1,0"), std::string::npos);
}

TEST(Tightness, BoundedMixedSequencePasses) {
  const auto seq = fixtures::graphons();
  const std::vector<Mult> grid{1, 2, 3, 4, 5};
  const TightnessReport r = tightness_diagnostic(seq, grid);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.monotone);
  EXPECT_EQ(r.offdiag.back(), 0);
  EXPECT_THROW(tightness_diagnostic({}, grid), Error);
}

TEST(CrossCheck, ConstantSequenceStabilizes) {
  const std::vector<Multigraph> seq(4, fixtures::triangle_with_loop());
  const std::vector<Multigraph> tests{graphs::edge(1), cherry()};
  const CrossCheckReport r = cross_check(seq, tests, 5000, 1);
  EXPECT_TRUE(r.densities_stable);
  EXPECT_TRUE(r.windows_stable);
  EXPECT_TRUE(r.agree);
}

TEST(CrossCheck, RandomSequenceStabilizes) {
  const StepMultigraphon w = fixtures::two_block();
  std::vector<Multigraph> seq;
  for (std::size_t n : {100, 150, 200, 250}) seq.push_back(sample_XW(w, n, 9).window);
  const std::vector<Multigraph> tests{graphs::edge(1), cherry()};
  const CrossCheckReport r = cross_check(seq, tests, 5000, 2);
  EXPECT_TRUE(r.densities_stable) << r.density_oscillation;
  EXPECT_TRUE(r.windows_stable) << r.window_distance << " > " << r.distance_tol;
  EXPECT_TRUE(r.agree);
}

TEST(CrossCheck, AlternatingSequenceStabilizesNeither) {
  std::vector<Multigraph> seq;
  for (std::size_t i = 0; i < 6; ++i) {
    seq.push_back(sample_XW(i % 2 ? erdos_renyi(4, 5) : erdos_renyi(1, 5), 60 + 10 * i, i).window);
  }
  const std::vector<Multigraph> tests{graphs::edge(1)};
  const CrossCheckReport r = cross_check(seq, tests, 5000, 3);
  EXPECT_FALSE(r.densities_stable);
  EXPECT_FALSE(r.windows_stable);
  EXPECT_TRUE(r.agree);
  std::ostringstream out;
  write_report(out, r);
  EXPECT_NE(out.str().find("verdict: pass"), std::string::npos);
}

TEST(InjectiveGap, BoundHoldsOnRandomGraphs) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 100; ++t) {
    const Multigraph g = fixtures::random_multigraph(rng, 2 + t % 5, 2);
    const Multigraph f = fixtures::random_multigraph(rng, 1 + t % 3, 2);
    const GapCheck c = injective_gap(f, g);
    EXPECT_TRUE(c.holds) << to_string(c.gap) << " > " << to_string(c.bound);
    EXPECT_EQ(c.bound, make_rational(static_cast<std::int64_t>(f.size() * (f.size() - 1) / 2),
                                     static_cast<std::int64_t>(g.size())));
  }
  // O_2 in K_2: t_= = 1/2, injective t_= = 0, bound 1/2: tight.
  const GapCheck tight = injective_gap(graphs::empty(2), graphs::complete(2));
  EXPECT_EQ(tight.gap, make_rational(1, 2));
  EXPECT_TRUE(tight.holds);
}
