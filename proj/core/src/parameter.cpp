#include "mgl/parameter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "mgl/error.hpp"

namespace mgl {
namespace {

Evaluation exact_value(Rational r) {
  Evaluation e;
  e.value = to_double(r);
  e.exact = std::move(r);
  return e;
}

bool is_miss(const Error& e) {
  return e.code() == ErrorCode::kTableMiss || e.code() == ErrorCode::kTruncationExceeded;
}

std::string graph_label(const Multigraph& g) {
  std::string out = fmt::format("n={} [", g.size());
  const auto upper = g.upper_triangle();
  for (std::size_t i = 0; i < upper.size(); ++i) out += fmt::format("{}{}", i ? "," : "", upper[i]);
  return out + "]";
}

}  // namespace

GraphParameter GraphParameter::from_graph(Multigraph g, Mode mode, std::uint64_t budget) {
  GraphParameter p;
  p.backend_ = Backend::kGraph;
  p.mode_ = mode;
  p.graph_ = std::make_shared<const Multigraph>(std::move(g));
  p.name_ = fmt::format("t_{}(., G) with |V(G)|={}", to_string(mode), p.graph_->size());
  const auto variant = mode == Mode::kLeq ? DensityVariant::kHomLeq : DensityVariant::kHomEq;
  p.eval_ = [g = p.graph_, variant, budget](const Multigraph& f) {
    if (f.size() == 0) return exact_value(1);
    return exact_value(density(f, *g, variant, budget));
  };
  if (mode == Mode::kLeq) {
    p.dagger_ = [g = p.graph_, budget](const Multigraph& a) {
      if (a.size() == 0) return exact_value(1);
      return exact_value(density(a, *g, DensityVariant::kHomEq, budget));
    };
  }
  return p;
}

GraphParameter GraphParameter::from_graphon(StepMultigraphon w, Mode mode, std::uint64_t budget) {
  GraphParameter p;
  p.backend_ = Backend::kGraphon;
  p.mode_ = mode;
  p.graphon_ = std::make_shared<const StepMultigraphon>(std::move(w));
  p.name_ = fmt::format("t_{}(., W) with {} cells", to_string(mode), p.graphon_->cells());
  p.eval_ = [w = p.graphon_, mode, budget](const Multigraph& f) {
    if (f.size() == 0) return exact_value(1);
    return exact_value(graphon_density_exact(f, *w, mode, budget));
  };
  if (mode == Mode::kLeq) {
    p.dagger_ = [w = p.graphon_, budget](const Multigraph& a) {
      if (a.size() == 0) return exact_value(1);
      return exact_value(graphon_density_exact(a, *w, Mode::kEq, budget));
    };
  }
  return p;
}

GraphParameter GraphParameter::from_table(std::vector<ParameterTable> tables) {
  struct Indexed {
    ParameterTable table;
    std::map<Multigraph, Rational> by_canonical;
  };
  auto indexed = std::make_shared<std::vector<Indexed>>();
  for (auto& t : tables) {
    Indexed entry{std::move(t), {}};
    if (entry.table.k <= kDefaultCanonicalCap) {
      for (const auto& [key, value] : entry.table.entries) {
        entry.by_canonical.emplace(canonical_form(key), value);
      }
    }
    indexed->push_back(std::move(entry));
  }
  GraphParameter p;
  p.backend_ = Backend::kTable;
  p.name_ = fmt::format("table ({} section{})", indexed->size(), indexed->size() == 1 ? "" : "s");
  p.eval_ = [indexed](const Multigraph& f) {
    for (const auto& t : *indexed) {
      if (t.table.k != f.size()) continue;
      if (auto v = t.table.lookup(f)) return exact_value(*v);
      if (!t.by_canonical.empty()) {
        if (auto it = t.by_canonical.find(canonical_form(f)); it != t.by_canonical.end()) {
          return exact_value(it->second);
        }
      }
    }
    for (const auto& t : *indexed) {
      if (t.table.k == f.size() && t.table.default_value) return exact_value(*t.table.default_value);
    }
    if (f.size() == 0) return exact_value(1);
    throw Error(ErrorCode::kTableMiss, "no table entry for " + graph_label(f));
  };
  return p;
}

GraphParameter GraphParameter::from_function(std::function<Rational(const Multigraph&)> fn,
                                             std::string name) {
  GraphParameter p;
  p.backend_ = Backend::kFunction;
  p.name_ = std::move(name);
  p.eval_ = [fn = std::move(fn)](const Multigraph& f) { return exact_value(fn(f)); };
  return p;
}

GraphParameter GraphParameter::from_estimate(std::shared_ptr<const ArrayGenerator> generator,
                                             Mode mode, std::size_t samples, std::uint64_t seed) {
  if (!generator) throw Error(ErrorCode::kInvalidArgument, "null generator");
  GraphParameter p;
  p.backend_ = Backend::kEstimate;
  p.mode_ = mode;
  p.name_ = fmt::format("empirical t_{} from {} (N={}, seed={})", to_string(mode),
                        generator->describe(), samples, seed);
  p.eval_ = [generator, mode, samples, seed](const Multigraph& f) {
    if (f.size() == 0) return exact_value(1);
    const Estimate est = empirical_density(*generator, f, mode, samples, seed);
    Evaluation e;
    e.value = est.estimate;
    e.std_error = est.std_error;
    return e;
  };
  return p;
}

Evaluation GraphParameter::evaluate(const Multigraph& f) const { return eval_(f); }

Rational GraphParameter::exact(const Multigraph& f) const {
  Evaluation e = eval_(f);
  if (!e.exact) throw Error(ErrorCode::kInvalidArgument, name_ + " has no exact values");
  return *e.exact;
}

Evaluation GraphParameter::mobius(const Multigraph& a) const {
  if (dagger_) return dagger_(a);
  if (is_exact()) {
    return exact_value(mobius_transform([this](const Multigraph& g) { return exact(g); }, a));
  }
  double variance = 0.0;
  const double value = mobius_transform(
      [&](const Multigraph& g) {
        const Evaluation e = evaluate(g);
        variance += e.std_error * e.std_error;
        return e.value;
      },
      a);
  Evaluation out;
  out.value = value;
  out.std_error = std::sqrt(variance);
  return out;
}

bool relabel_invariant(const GraphParameter& f, std::span<const Multigraph> graphs, double tol) {
  for (const Multigraph& g : graphs) {
    const double base = f(g);
    for (const Permutation& tau : default_permutations(g.size())) {
      if (std::abs(f(relabel(g, tau)) - base) > tol) return false;
    }
  }
  return true;
}

ConnectionMatrix connection_matrix(const GraphParameter& f, std::size_t k,
                                   std::span<const KLabeledGraph> basis) {
  ConnectionMatrix out;
  out.k = k;
  out.basis.assign(basis.begin(), basis.end());
  const auto b = static_cast<Eigen::Index>(basis.size());
  for (const auto& g : basis) {
    if (g.labels() != k) {
      throw Error(ErrorCode::kLabelCountMismatch,
                  fmt::format("basis element has {} labels, expected {}", g.labels(), k));
    }
  }
  out.entries.resize(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = i; j < b; ++j) {
      const Evaluation e = f.evaluate(glue(basis[i], basis[j]).graph());
      out.entries(i, j) = e.value;
      out.entries(j, i) = e.value;
      if (i != j && e.exact) {
        const Evaluation mirror = f.evaluate(glue(basis[j], basis[i]).graph());
        if (!mirror.exact || *mirror.exact != *e.exact) {
          throw Error(ErrorCode::kNonSymmetricInput,
                      fmt::format("f(F{}F{}) != f(F{}F{})", i + 1, j + 1, j + 1, i + 1));
        }
      }
    }
  }
  return out;
}

std::vector<KLabeledGraph> connection_basis(std::size_t k, std::size_t unlabeled, Mult max_mult,
                                            std::size_t cap) {
  std::map<Multigraph, Multigraph> seen;
  std::vector<Multigraph> found;
  for (std::size_t u = 0; u <= unlabeled; ++u) {
    const std::size_t n = k + u;
    if (n == 0) continue;
    for (const Multigraph& g : enumerate_Ak(n, Truncation{max_mult, std::nullopt})) {
      Multigraph key = canonical_form_labeled(g, k);
      if (seen.emplace(key, g).second) found.push_back(std::move(key));
    }
  }
  std::sort(found.begin(), found.end(), [](const Multigraph& a, const Multigraph& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (edge_count(a) != edge_count(b)) return edge_count(a) < edge_count(b);
    return a.upper_triangle() < b.upper_triangle();
  });
  if (found.size() > cap) found.resize(cap);
  std::vector<KLabeledGraph> out;
  out.reserve(found.size());
  for (auto& g : found) out.emplace_back(k, std::move(g));
  return out;
}

void write_connection_csv(std::ostream& out, const ConnectionMatrix& m) {
  out << "row,col,value\n";
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      out << fmt::format("{},{},{:.17g}\n", i + 1, j + 1, m.entries(i, j));
    }
  }
}

PsdResult psd_check(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kNonSymmetricInput, "matrix is not square");
  PsdResult r;
  if (m.size() == 0) {
    r.is_psd = true;
    return r;
  }
  r.max_norm = m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, r.max_norm)) {
        throw Error(ErrorCode::kNonSymmetricInput,
                    fmt::format("M({},{}) != M({},{})", i + 1, j + 1, j + 1, i + 1));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.is_psd = r.min_eigenvalue >= -tol * r.max_norm;
  return r;
}

bool ParameterReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void write_report(std::ostream& out, const ParameterReport& report) {
  for (const Verdict& v : report.verdicts) {
    out << v.name << ": " << (v.pass ? "pass" : "fail");
    if (v.heuristic) out << " (heuristic)";
    if (!v.detail.empty()) out << " -- " << v.detail;
    out << '\n';
  }
  out << "verdict: " << (report.pass() ? "pass" : "fail") << '\n';
}

namespace {

Verdict check_normalization(const GraphParameter& f, double tol) {
  Verdict v{"normalization", false, false, {}};
  try {
    const Evaluation e = f.evaluate(graphs::empty(1));
    v.pass = std::abs(e.value - 1.0) <= tol + 4.0 * e.std_error;
    v.detail = fmt::format("f(O_1) = {}", e.exact ? to_string(*e.exact) : fmt::format("{:.6g}", e.value));
  } catch (const Error& e) {
    v.detail = e.what();
  }
  return v;
}

Verdict check_multiplicativity(const GraphParameter& f, std::size_t k, const Truncation& trunc,
                               const ParameterCheckOptions& options) {
  Verdict v{"multiplicativity", true, false, {}};
  const std::size_t total = std::max<std::size_t>(k, 2);
  std::vector<std::pair<Multigraph, Multigraph>> pairs;
  for (std::size_t a = 1; 2 * a <= total; ++a) {
    const auto left = enumerate_Ak(a, trunc);
    for (std::size_t b = a; a + b <= total; ++b) {
      const auto right = enumerate_Ak(b, trunc);
      for (const auto& x : left) {
        for (const auto& y : right) pairs.emplace_back(x, y);
      }
    }
  }
  if (pairs.size() > options.max_pairs) {
    const CounterRng rng(options.seed);
    for (std::size_t i = 0; i < options.max_pairs; ++i) {
      const std::size_t j =
          i + rng.below(pairs.size() - i, Stream::kAuxiliary, 0, static_cast<std::uint32_t>(i));
      std::swap(pairs[i], pairs[j]);
    }
    pairs.resize(options.max_pairs);
  }
  std::size_t tested = 0, skipped = 0;
  double worst = 0.0;
  std::string witness;
  for (const auto& [a, b] : pairs) {
    try {
      const Evaluation fa = f.evaluate(a), fb = f.evaluate(b);
      const Evaluation fab = f.evaluate(disjoint_union(a, b));
      ++tested;
      double gap = 0.0;
      bool ok = true;
      if (fa.exact && fb.exact && fab.exact) {
        const Rational d = *fab.exact - *fa.exact * *fb.exact;
        gap = std::abs(to_double(d));
        ok = gap <= options.tol;
      } else {
        gap = std::abs(fab.value - fa.value * fb.value);
        const double se = fab.std_error + fa.std_error * std::abs(fb.value) +
                          fb.std_error * std::abs(fa.value);
        ok = gap <= options.tol + 4.0 * se;
      }
      if (gap > worst) worst = gap;
      if (!ok && v.pass) {
        v.pass = false;
        witness = fmt::format("; f(A+B) != f(A)f(B) for A={}, B={}", graph_label(a), graph_label(b));
      }
    } catch (const Error& e) {
      if (!is_miss(e)) throw;
      ++skipped;
    }
  }
  if (tested == 0) v.pass = false;
  v.detail = fmt::format("{} disjoint pairs tested, {} not evaluable, max gap {:.3g}{}", tested,
                         skipped, worst, witness);
  return v;
}

Verdict check_defect(const GraphParameter& f, const ParameterCheckOptions& options) {
  Verdict v{"non-defectiveness", true, true, {}};
  const std::pair<const char*, Multigraph> seeds[] = {{"edge", graphs::edge(1)},
                                                      {"loop", graphs::loops(1)}};
  std::vector<std::string> parts;
  for (const auto& [name, seed] : seeds) {
    bool reached = false;
    std::string note;
    for (std::size_t step = 0; step <= options.inflation_steps && !reached; ++step) {
      Multigraph a(seed.size());
      const Mult scale = Mult{1} << step;
      for (std::size_t i = 0; i < seed.size(); ++i) {
        for (std::size_t j = i; j < seed.size(); ++j) a.set(i, j, seed(i, j) * scale);
      }
      try {
        const Evaluation e = f.evaluate(a);
        if (e.value + 4.0 * e.std_error < options.defect_threshold) {
          reached = true;
          note = fmt::format("{}: f({}x) = {:.3g} below {:g}", name, scale, e.value,
                             options.defect_threshold);
        } else {
          note = fmt::format("{}: f({}x) = {:.3g}", name, scale, e.value);
        }
      } catch (const Error& e) {
        if (!is_miss(e)) throw;
        note = fmt::format("{}: inconclusive, f({}x) not evaluable", name, scale);
        break;
      }
    }
    if (!reached) v.pass = false;
    parts.push_back(note);
  }
  v.detail = fmt::format("inflation probe A, 2A, 4A, ...; {}; {}", parts[0], parts[1]);
  return v;
}

Verdict check_mobius(const GraphParameter& f, std::size_t k, const Truncation& trunc,
                     const ParameterCheckOptions& options) {
  Verdict v{"mobius nonnegativity", true, false, {}};
  std::size_t tested = 0, skipped = 0;
  std::optional<double> min_value;
  std::string witness;
  for (const Multigraph& a : enumerate_Ak(k, trunc)) {
    try {
      const Evaluation e = f.mobius(a);
      ++tested;
      if (!min_value || e.value < *min_value) min_value = e.value;
      if (e.value < -options.tol - 4.0 * e.std_error && v.pass) {
        v.pass = false;
        witness = fmt::format("; negative at {}", graph_label(a));
      }
    } catch (const Error& e) {
      if (!is_miss(e)) throw;
      ++skipped;
    }
  }
  if (tested == 0) v.pass = false;
  v.detail = fmt::format("{} matrices in A_{} tested, {} not evaluable, min f-dagger {}", tested, k,
                         skipped, min_value ? fmt::format("{:.6g}", *min_value) : "n/a") +
             witness;
  return v;
}

}  // namespace

ParameterReport check_parameter(const GraphParameter& f, std::size_t k,
                                const Truncation& truncation,
                                const ParameterCheckOptions& options) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  ParameterReport report;
  report.verdicts.push_back(check_normalization(f, options.tol));
  report.verdicts.push_back(check_multiplicativity(f, k, truncation, options));
  report.verdicts.push_back(check_defect(f, options));
  report.verdicts.push_back(check_mobius(f, k, truncation, options));
  return report;
}

namespace {

ConsistentSequence latent_sequence(const StepMultigraphon& w, std::size_t n_max,
                                   std::uint64_t seed) {
  const CounterRng rng(seed);
  ConsistentSequence out;
  out.route = SequenceRoute::kLatent;
  std::vector<std::size_t> cell;
  Multigraph current;
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto idx = static_cast<std::uint32_t>(n);
    cell.push_back(w.cell_of(rng.uniform(Stream::kSequence, 0, idx, 0)));
    Multigraph next(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) next.set(i, j, current(i, j));
    }
    for (std::size_t j = 0; j <= n; ++j) {
      const double u = rng.uniform(Stream::kSequence, 0, idx, static_cast<std::uint32_t>(j + 1));
      const auto& cdf = j == n ? w.diag_cdf(cell[n]) : w.pair_cdf(cell[j], cell[n]);
      next.set(j, n, inverse_cdf(cdf, u));
    }
    out.graphs.push_back(next);
    out.dropped_mass.push_back(0.0);
    current = std::move(next);
  }
  return out;
}

void extensions(const Multigraph& base, const Truncation& trunc, std::vector<Multigraph>& out) {
  const std::size_t n = base.size();
  const Mult diag_cap = 2 * (trunc.max_mult / 2);
  std::vector<Mult> row(n, 0);
  const std::uint64_t base_edges = edge_count(base);
  while (true) {
    for (Mult d = 0; d <= diag_cap; d += 2) {
      std::uint64_t e = base_edges + d / 2;
      for (Mult r : row) e += r;
      if (trunc.max_edges && e > *trunc.max_edges) continue;
      Multigraph g(n + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) g.set(i, j, base(i, j));
        g.set(i, n, row[i]);
      }
      g.set(n, n, d);
      out.push_back(std::move(g));
    }
    std::size_t pos = 0;
    while (pos < n && row[pos] == trunc.max_mult) row[pos++] = 0;
    if (pos == n) break;
    ++row[pos];
  }
}

ConsistentSequence enumerated_sequence(const GraphParameter& f, std::size_t n_max,
                                       const Truncation& trunc, std::uint64_t seed,
                                       const SequenceOptions& options) {
  if (n_max > kDefaultOverlayCap) {
    throw Error(ErrorCode::kTruncationTooLarge,
                fmt::format("enumeration route supports n <= {}, asked for {}", kDefaultOverlayCap,
                            n_max));
  }
  const CounterRng rng(seed);
  for (std::size_t attempt = 0; attempt <= options.max_restarts; ++attempt) {
    ConsistentSequence out;
    out.route = SequenceRoute::kEnumeration;
    out.restarts = attempt;
    Multigraph current(0);
    double current_mass = 1.0;
    bool restart = false;
    for (std::size_t n = 0; n < n_max && !restart; ++n) {
      std::vector<Multigraph> candidates;
      extensions(current, trunc, candidates);
      std::vector<double> mass(candidates.size());
      double kept = 0.0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        double q = f.mobius(candidates[c]).value;
        if (q < -options.negative_tol) {
          throw Error(ErrorCode::kNegativeMobiusMass,
                      fmt::format("f-dagger = {:.6g} at {}", q, graph_label(candidates[c])));
        }
        mass[c] = std::max(q, 0.0);
        kept += mass[c];
      }
      if (current_mass <= 0.0 || kept <= 0.0) {
        restart = true;
        break;
      }
      const double dropped = 1.0 - kept / current_mass;
      if (std::abs(dropped) > options.max_dropped) {
        throw Error(ErrorCode::kResidualTooLarge,
                    fmt::format("step {}: conditional mass outside the truncation is {:.3g}", n + 1,
                                dropped));
      }
      out.dropped_mass.push_back(dropped);
      const double u = rng.uniform(Stream::kSequence, static_cast<std::uint32_t>(attempt),
                                   static_cast<std::uint32_t>(n)) *
                       kept;
      double running = 0.0;
      std::size_t pick = candidates.size();
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (mass[c] <= 0.0) continue;
        running += mass[c];
        pick = c;
        if (u < running) break;
      }
      current = candidates[pick];
      current_mass = mass[pick];
      out.graphs.push_back(current);
    }
    if (!restart) return out;
  }
  throw Error(ErrorCode::kZeroConditional,
              fmt::format("zero conditional mass after {} restarts", options.max_restarts));
}

}  // namespace

ConsistentSequence sample_consistent_sequence(const GraphParameter& f, std::size_t n_max,
                                              const Truncation& truncation, std::uint64_t seed,
                                              const SequenceOptions& options) {
  const bool latent_ok =
      f.mode() == Mode::kLeq && (f.backend() == GraphParameter::Backend::kGraph ||
                                 f.backend() == GraphParameter::Backend::kGraphon);
  SequenceRoute route = options.route;
  if (route == SequenceRoute::kAuto) {
    route = latent_ok ? SequenceRoute::kLatent : SequenceRoute::kEnumeration;
  }
  if (route == SequenceRoute::kLatent) {
    if (!latent_ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the latent route needs t_<= of a graph or a step multigraphon");
    }
    if (f.graphon()) return latent_sequence(*f.graphon(), n_max, seed);
    return latent_sequence(from_graph(*f.graph()), n_max, seed);
  }
  return enumerated_sequence(f, n_max, truncation, seed, options);
}

QuadraticFormCheck reflection_witness(const StepMultigraphon& w, std::size_t k,
                                      std::span<const KLabeledGraph> basis,
                                      std::span<const double> v, std::size_t samples,
                                      std::uint64_t seed) {
  if (v.size() != basis.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient vector and basis differ in length");
  }
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  std::vector<std::vector<std::size_t>> where(basis.size());
  std::size_t width = k;
  for (std::size_t m = 0; m < basis.size(); ++m) {
    if (basis[m].labels() != k) {
      throw Error(ErrorCode::kLabelCountMismatch, "basis element with the wrong label count");
    }
    if (basis[m].unlabeled() != 0) {
      throw Error(ErrorCode::kInvalidArgument, "witness basis must be fully labeled");
    }
    for (std::size_t t = 0; t < basis[m].graph().size(); ++t) {
      where[m].push_back(t < k ? t : width++);
    }
  }
  QuadraticFormCheck out;
  out.samples = samples;
  const ConnectionMatrix cm = connection_matrix(GraphParameter::from_graphon(w), k, basis);
  const Eigen::Map<const Eigen::VectorXd> vec(v.data(), static_cast<Eigen::Index>(v.size()));
  out.exact = vec.dot(cm.entries * vec);

  const GraphonArray gen(w);
  const CounterRng rng(seed);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t r = 0; r < samples; ++r) {
    const Multigraph x = gen.window(std::max<std::size_t>(width, 1), rng, static_cast<std::uint32_t>(r));
    double s = 0.0;
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const Multigraph& g = basis[m].graph();
      bool below = true;
      for (std::size_t i = 0; i < g.size() && below; ++i) {
        for (std::size_t j = i; j < g.size() && below; ++j) {
          below = g(i, j) <= x(where[m][i], where[m][j]);
        }
      }
      if (below) s += v[m];
    }
    const double y = s * s;
    const double delta = y - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (y - mean);
  }
  out.estimate = mean;
  out.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return out;
}

}  // namespace mgl
