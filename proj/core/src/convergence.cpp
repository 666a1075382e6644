#include "mgl/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "mgl/error.hpp"
#include "mgl/sampler.hpp"

namespace mgl {
namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

bool within_budget(std::size_t base, std::size_t k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && total > budget / base) return false;
    total *= base;
  }
  return total <= budget;
}

TrajectoryCell evaluate_cell(const SequenceElement& element, const Multigraph& f,
                             const TrajectoryOptions& options, std::uint64_t seed) {
  TrajectoryCell cell;
  try {
    if (f.size() == 0) {
      cell.exact = Rational(1);
    } else if (const auto* g = std::get_if<Multigraph>(&element)) {
      if (within_budget(g->size(), f.size(), options.budget)) {
        const auto variant = options.mode == Mode::kLeq ? DensityVariant::kHomLeq : DensityVariant::kHomEq;
        cell.exact = density(f, *g, variant, options.budget);
      } else {
        const Estimate e = empirical_density(GraphArray(*g), f, options.mode, options.mc_samples, seed);
        cell.value = e.estimate;
        cell.std_error = e.std_error;
        cell.method = CellMethod::kMonteCarlo;
      }
    } else {
      const auto& w = std::get<StepMultigraphon>(element);
      if (within_budget(w.cells(), f.size(), options.budget)) {
        cell.exact = graphon_density_exact(f, w, options.mode, options.budget);
      } else {
        const Estimate e = empirical_density(GraphonArray(w), f, options.mode, options.mc_samples, seed);
        cell.value = e.estimate;
        cell.std_error = e.std_error;
        cell.method = CellMethod::kMonteCarlo;
      }
    }
    if (cell.exact) {
      cell.value = to_double(*cell.exact);
      cell.method = CellMethod::kExact;
    }
  } catch (const Error& e) {
    cell = TrajectoryCell{};
    cell.error = e.what();
  }
  return cell;
}

double column_oscillation(const DensityTrajectory& t, std::size_t column, std::size_t window) {
  const std::size_t rows = t.values.size();
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t s = rows - window; s < rows; ++s) {
    const TrajectoryCell& c = t.values[s][column];
    if (c.method == CellMethod::kError) continue;
    lo = any ? std::min(lo, c.value) : c.value;
    hi = any ? std::max(hi, c.value) : c.value;
    any = true;
  }
  return hi - lo;
}

}  // namespace

std::string_view to_string(CellMethod method) {
  switch (method) {
    case CellMethod::kExact: return "exact";
    case CellMethod::kMonteCarlo: return "monte_carlo";
    case CellMethod::kError: return "error";
  }
  return "error";
}

DensityTrajectory density_trajectory(std::span<const SequenceElement> sequence,
                                     std::span<const Multigraph> testgraphs,
                                     const TrajectoryOptions& options) {
  DensityTrajectory out;
  out.testgraphs.assign(testgraphs.begin(), testgraphs.end());
  for (std::size_t s = 0; s < sequence.size(); ++s) {
    const auto* g = std::get_if<Multigraph>(&sequence[s]);
    out.labels.push_back(g ? g->size() : s + 1);
    std::vector<TrajectoryCell> row;
    for (std::size_t t = 0; t < testgraphs.size(); ++t) {
      row.push_back(evaluate_cell(sequence[s], testgraphs[t], options,
                                  derive_seed(options.seed, s * testgraphs.size() + t)));
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const DensityTrajectory& trajectory) {
  out << "n,testgraph_id,value,stderr,method\n";
  for (std::size_t s = 0; s < trajectory.values.size(); ++s) {
    for (std::size_t t = 0; t < trajectory.values[s].size(); ++t) {
      const TrajectoryCell& c = trajectory.values[s][t];
      if (c.method == CellMethod::kError) {
        out << fmt::format("{},{},,,error\n", trajectory.labels[s], t + 1);
      } else {
        out << fmt::format("{},{},{:.17g},{:.17g},{}\n", trajectory.labels[s], t + 1, c.value,
                           c.std_error, to_string(c.method));
      }
    }
  }
}

std::vector<Multigraph> default_testgraphs() {
  std::vector<Multigraph> out;
  std::set<Multigraph> seen;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Multigraph& g : enumerate_Ak(n, Truncation{2, std::nullopt})) {
      Multigraph c = canonical_form(g);
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
  }
  return out;
}

void write_report(std::ostream& out, const DiagnosticReport& report) {
  out << "test: " << report.test << '\n';
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    out << fmt::format("value[{}]: {:.6g}\n", i + 1, report.values[i]);
  }
  out << fmt::format("statistic: {:.6g}\ntolerance: {:.6g}\nverdict: {}\n", report.statistic,
                     report.tolerance, report.pass ? "pass" : "fail");
  for (const auto& note : report.notes) out << "note: " << note << '\n';
}

DiagnosticReport cauchy_diagnostic(const DensityTrajectory& trajectory, std::size_t window,
                                   double tol) {
  const std::size_t rows = trajectory.values.size();
  if (rows < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two sequence entries");
  window = std::clamp<std::size_t>(window, 2, rows);
  DiagnosticReport r;
  r.test = "cauchy oscillation";
  r.tolerance = tol;
  for (std::size_t t = 0; t < trajectory.testgraphs.size(); ++t) {
    r.values.push_back(column_oscillation(trajectory, t, window));
    r.statistic = std::max(r.statistic, r.values.back());
  }
  r.pass = r.statistic <= tol;
  r.notes.push_back(fmt::format(
      "finite-data heuristic: max - min over the last {} entries; no claim about the limit", window));
  r.notes.push_back("non-defectiveness of the limit is not probed by this diagnostic");
  return r;
}

TightnessReport tightness_diagnostic(std::span<const StepMultigraphon> sequence,
                                     std::span<const Mult> m_grid, double threshold) {
  if (sequence.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sequence");
  if (m_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty multiplicity grid");
  TightnessReport r;
  r.m_grid.assign(m_grid.begin(), m_grid.end());
  std::sort(r.m_grid.begin(), r.m_grid.end());
  r.threshold = threshold;
  r.offdiag.assign(r.m_grid.size(), Rational(0));
  r.diag.assign(r.m_grid.size(), Rational(0));
  for (const StepMultigraphon& w : sequence) {
    for (std::size_t i = 0; i < r.m_grid.size(); ++i) {
      const TailMass tail = tightness_tail(w, r.m_grid[i]);
      if (i > 0) {
        const TailMass prev = tightness_tail(w, r.m_grid[i - 1]);
        if (tail.offdiag > prev.offdiag || tail.diag > prev.diag) r.monotone = false;
      }
      r.offdiag[i] = std::max(r.offdiag[i], tail.offdiag);
      r.diag[i] = std::max(r.diag[i], tail.diag);
    }
  }
  r.pass = to_double(r.offdiag.back()) <= threshold && to_double(r.diag.back()) <= threshold;
  return r;
}

void write_report(std::ostream& out, const TightnessReport& report) {
  out << "test: tightness\nm,offdiag_tail,diag_tail\n";
  for (std::size_t i = 0; i < report.m_grid.size(); ++i) {
    out << report.m_grid[i] << ',' << to_string(report.offdiag[i]) << ','
        << to_string(report.diag[i]) << '\n';
  }
  out << "monotone: " << (report.monotone ? "yes" : "no") << '\n'
      << fmt::format("threshold: {:g}\n", report.threshold)
      << "verdict: " << (report.pass ? "pass" : "fail") << '\n'
      << "note: finite-data heuristic; tails are maxima over the given sequence only\n";
}

CrossCheckReport cross_check(std::span<const Multigraph> sequence,
                             std::span<const Multigraph> testgraphs, std::size_t samples,
                             std::uint64_t seed, const CrossCheckOptions& options) {
  if (sequence.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two graphs");
  if (testgraphs.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one testgraph");
  if (samples == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  CrossCheckReport r;
  r.density_tol = options.tol;
  const std::size_t window = std::clamp<std::size_t>(options.window, 2, sequence.size());

  std::vector<SequenceElement> elements(sequence.begin(), sequence.end());
  TrajectoryOptions topt;
  topt.budget = options.budget;
  topt.seed = seed;
  const DensityTrajectory traj = density_trajectory(elements, testgraphs, topt);
  for (std::size_t t = 0; t < testgraphs.size(); ++t) {
    r.density_oscillation = std::max(r.density_oscillation, column_oscillation(traj, t, window));
  }

  std::size_t k = 1;
  for (const auto& f : testgraphs) k = std::max(k, f.size());
  std::vector<std::map<std::vector<Mult>, double>> laws;
  for (std::size_t s = sequence.size() - window; s < sequence.size(); ++s) {
    const GraphArray gen(sequence[s]);
    const CounterRng rng(derive_seed(seed ^ 0x5A5A5A5Aull, s));
    std::map<std::vector<Mult>, double> law;
    for (std::size_t r2 = 0; r2 < samples; ++r2) {
      law[gen.window(k, rng, static_cast<std::uint32_t>(r2)).upper_triangle()] += 1.0;
    }
    for (auto& [key, v] : law) v /= static_cast<double>(samples);
    laws.push_back(std::move(law));
  }
  double worst_excess = -1.0;
  r.windows_stable = true;
  for (std::size_t i = 1; i < laws.size(); ++i) {
    std::map<std::vector<Mult>, double> diff = laws[i];
    for (const auto& [key, v] : laws[i - 1]) diff[key] -= v;
    double tv = 0.0;
    for (const auto& [key, v] : diff) tv += std::abs(v);
    tv /= 2.0;
    const double thr = options.tol + 2.0 * std::sqrt(static_cast<double>(diff.size()) /
                                                     static_cast<double>(samples));
    if (tv - thr > worst_excess) {
      worst_excess = tv - thr;
      r.window_distance = tv;
      r.distance_tol = thr;
    }
    if (tv > thr) r.windows_stable = false;
  }
  r.densities_stable = r.density_oscillation <= r.density_tol;
  r.agree = r.densities_stable == r.windows_stable;
  return r;
}

void write_report(std::ostream& out, const CrossCheckReport& report) {
  out << "test: density/array cross-check\n"
      << fmt::format("density_oscillation: {:.6g} (tol {:.6g}) -> {}\n", report.density_oscillation,
                     report.density_tol, report.densities_stable ? "stable" : "unstable")
      << fmt::format("window_distance: {:.6g} (tol {:.6g}) -> {}\n", report.window_distance,
                     report.distance_tol, report.windows_stable ? "stable" : "unstable")
      << "verdict: " << (report.agree ? "pass" : "fail") << '\n'
      << "note: finite-data heuristic over the trailing window\n";
}

GapCheck injective_gap(const Multigraph& f, const Multigraph& g, std::uint64_t budget) {
  GapCheck c;
  const std::size_t k = f.size();
  const std::size_t n = g.size();
  c.gap = density(f, g, DensityVariant::kHomEq, budget) - density(f, g, DensityVariant::kInjEq, budget);
  if (c.gap < 0) c.gap = -c.gap;
  c.bound = make_rational(static_cast<std::int64_t>(k * (k - 1) / 2), static_cast<std::int64_t>(n));
  c.holds = c.gap <= c.bound;
  return c;
}

}  // namespace mgl
