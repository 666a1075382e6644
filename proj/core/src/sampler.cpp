#include "mgl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "mgl/error.hpp"

namespace mgl {
namespace {

std::uint32_t index32(std::size_t i) { return static_cast<std::uint32_t>(i); }

}  // namespace

ArraySample ArrayGenerator::sample(std::size_t k, std::uint64_t seed,
                                   std::uint32_t replicate) const {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "window size must be positive");
  CounterRng rng(seed);
  return ArraySample{k, window(k, rng, replicate), seed, replicate, describe()};
}

GraphArray::GraphArray(Multigraph g) : g_(std::move(g)) {
  if (g_.size() == 0) throw Error(ErrorCode::kInvalidArgument, "graph has no vertices");
}

Multigraph GraphArray::window(std::size_t k, const CounterRng& rng,
                              std::uint32_t replicate) const {
  std::vector<std::size_t> xi(k);
  for (std::size_t i = 0; i < k; ++i) {
    xi[i] = rng.below(g_.size(), Stream::kVertex, replicate, index32(i));
  }
  return induced(g_, xi);
}

std::string GraphArray::describe() const {
  return fmt::format("X_G (n={}, e={})", g_.size(), edge_count(g_));
}

InjectiveGraphArray::InjectiveGraphArray(Multigraph g) : g_(std::move(g)) {
  if (g_.size() == 0) throw Error(ErrorCode::kInvalidArgument, "graph has no vertices");
}

Multigraph InjectiveGraphArray::window(std::size_t k, const CounterRng& rng,
                                       std::uint32_t replicate) const {
  const std::size_t n = g_.size();
  const std::size_t t = std::min(k, n);
  // Partial Fisher-Yates: position i only depends on draws 0..i.
  std::vector<std::size_t> rho(n);
  std::iota(rho.begin(), rho.end(), std::size_t{0});
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = i + rng.below(n - i, Stream::kPermutation, replicate, index32(i));
    std::swap(rho[i], rho[j]);
  }
  rho.resize(t);
  Multigraph out(k);
  const Multigraph head = induced(g_, rho);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i; j < t; ++j) out.set(i, j, head(i, j));
  }
  return out;
}

std::string InjectiveGraphArray::describe() const {
  return fmt::format("X0_G (n={}, e={})", g_.size(), edge_count(g_));
}

GraphonArray::GraphonArray(StepMultigraphon w) : w_(std::move(w)) {}

Multigraph GraphonArray::window(std::size_t k, const CounterRng& rng,
                                std::uint32_t replicate) const {
  std::vector<std::size_t> cell(k);
  for (std::size_t i = 0; i < k; ++i) {
    cell[i] = w_.cell_of(rng.uniform(Stream::kVertex, replicate, index32(i)));
  }
  Multigraph out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double beta = rng.uniform(Stream::kEdge, replicate, index32(i), index32(j));
      const auto& cdf = i == j ? w_.diag_cdf(cell[i]) : w_.pair_cdf(cell[i], cell[j]);
      out.set(i, j, inverse_cdf(cdf, beta));
    }
  }
  return out;
}

std::string GraphonArray::describe() const {
  return fmt::format("X_W (step, m={}, M={})", w_.cells(), w_.cap());
}

SampledGraphonArray::SampledGraphonArray(SampledMultigraphon w) : w_(std::move(w)) {
  w_.check();
}

Multigraph SampledGraphonArray::window(std::size_t k, const CounterRng& rng,
                                       std::uint32_t replicate) const {
  std::vector<double> u(k);
  for (std::size_t i = 0; i < k; ++i) u[i] = rng.uniform(Stream::kVertex, replicate, index32(i));
  Multigraph out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double beta = rng.uniform(Stream::kEdge, replicate, index32(i), index32(j));
      std::vector<double> p = i == j ? w_.diag_kernel(u[i]) : w_.kernel(u[i], u[j]);
      std::partial_sum(p.begin(), p.end(), p.begin());
      out.set(i, j, inverse_cdf(p, beta));
    }
  }
  return out;
}

std::string SampledGraphonArray::describe() const {
  return fmt::format("X_W (sampled, M={})", w_.cap);
}

LatentVariables draw_latents(const CounterRng& rng, std::uint32_t replicate, std::size_t k,
                             bool with_alpha) {
  LatentVariables z;
  if (with_alpha) z.alpha = rng.uniform(Stream::kAlpha, replicate, 0);
  z.u.resize(k);
  z.beta.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    z.u[i] = rng.uniform(Stream::kVertex, replicate, index32(i));
    for (std::size_t j = i; j < k; ++j) {
      z.beta[i].push_back(rng.uniform(Stream::kEdge, replicate, index32(i), index32(j)));
    }
  }
  return z;
}

namespace {

void probe_representation(const MixedRepresentation& f, std::size_t probes) {
  CounterRng rng(0x5eed0fa1d05ull);
  for (std::size_t p = 0; p < probes; ++p) {
    const auto r = index32(p);
    const double a = rng.uniform(Stream::kAuxiliary, r, 0);
    const double u1 = rng.uniform(Stream::kAuxiliary, r, 1);
    const double u2 = rng.uniform(Stream::kAuxiliary, r, 2);
    const double b = rng.uniform(Stream::kAuxiliary, r, 3);
    if (f(a, u1, u2, b) != f(a, u2, u1, b)) {
      throw Error(ErrorCode::kAsymmetricRepresentation,
                  fmt::format("g({:.6f},{:.6f},{:.6f}) != g({:.6f},{:.6f},{:.6f})", u1, u2, b, u2,
                              u1, b));
    }
    if (const Mult d = f(a, u1, u1, b); d % 2 != 0) {
      throw Error(ErrorCode::kOddDiagonalRepresentation,
                  fmt::format("g({:.6f},{:.6f},{:.6f}) = {}", u1, u1, b, d));
    }
  }
}

}  // namespace

AldousArray::AldousArray(Representation g, std::size_t probes)
    : f_([g = std::move(g)](double, double u1, double u2, double b) { return g(u1, u2, b); }),
      mixed_(false) {
  probe_representation(f_, probes);
}

AldousArray::AldousArray(MixedRepresentation f, std::size_t probes)
    : f_(std::move(f)), mixed_(true) {
  probe_representation(f_, probes);
}

Multigraph AldousArray::window(std::size_t k, const CounterRng& rng,
                               std::uint32_t replicate) const {
  const LatentVariables z = draw_latents(rng, replicate, k, mixed_);
  const double alpha = z.alpha.value_or(0.0);
  Multigraph out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) out.set(i, j, f_(alpha, z.u[i], z.u[j], z.beta_at(i, j)));
  }
  return out;
}

std::string AldousArray::describe() const {
  return mixed_ ? "Aldous f(alpha,U_i,U_j,beta_ij)" : "Aldous g(U_i,U_j,beta_ij)";
}

FunctionArray::FunctionArray(WindowFn fn, std::string name)
    : fn_(std::move(fn)), name_(std::move(name)) {}

Multigraph FunctionArray::window(std::size_t k, const CounterRng& rng,
                                 std::uint32_t replicate) const {
  Multigraph out = fn_(k, rng, replicate);
  if (out.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "window function returned the wrong size");
  }
  return out;
}

Representation encode_representation(const StepMultigraphon& w) {
  return [w](double u1, double u2, double b) {
    const std::size_t a = w.cell_of(u1);
    if (u1 == u2) return inverse_cdf(w.diag_cdf(a), b);
    return inverse_cdf(w.pair_cdf(a, w.cell_of(u2)), b);
  };
}

ArraySample sample_XG(const Multigraph& g, std::size_t k, std::uint64_t seed) {
  return GraphArray(g).sample(k, seed);
}

ArraySample sample_XG0(const Multigraph& g, std::size_t k, std::uint64_t seed) {
  return InjectiveGraphArray(g).sample(k, seed);
}

ArraySample sample_XW(const StepMultigraphon& w, std::size_t k, std::uint64_t seed) {
  return GraphonArray(w).sample(k, seed);
}

ArraySample sample_XW(const SampledMultigraphon& w, std::size_t k, std::uint64_t seed) {
  return SampledGraphonArray(w).sample(k, seed);
}

ArraySample sample_aldous(const Representation& g, std::size_t k, std::uint64_t seed) {
  return AldousArray(g).sample(k, seed);
}

ArraySample sample_aldous(const MixedRepresentation& f, std::size_t k, std::uint64_t seed) {
  return AldousArray(f).sample(k, seed);
}

Estimate empirical_density(const ArrayGenerator& gen, const Multigraph& a, Mode mode,
                           std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  const CounterRng rng(seed);
  std::vector<std::size_t> identity(a.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  std::size_t hits = 0;
  for (std::size_t r = 0; r < samples; ++r) {
    if (a.size() == 0 || indicator(a, gen.window(a.size(), rng, index32(r)), identity, mode)) {
      ++hits;
    }
  }
  Estimate e;
  e.samples = samples;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

void write_report(std::ostream& out, const StatReport& report) {
  out << "test: " << report.test << '\n'
      << "statistic: " << fmt::format("{:.6g}", report.statistic) << '\n'
      << "dof: " << report.dof << '\n'
      << "p_value: " << fmt::format("{:.6g}", report.p_value) << '\n'
      << "verdict: " << (report.pass ? "pass" : "fail") << '\n';
  if (report.zero_variance) out << "note: zero variance (degenerate sample)\n";
  for (const auto& note : report.notes) out << "note: " << note << '\n';
}

namespace {

using Category = std::vector<Mult>;

double chi_square_p_value(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

StatReport finish(std::string name, double statistic, std::size_t dof, double significance) {
  StatReport r;
  r.test = std::move(name);
  r.statistic = statistic;
  r.dof = dof;
  r.p_value = chi_square_p_value(statistic, dof);
  r.pass = r.p_value >= significance;
  return r;
}

// Maps each observation to a margin category index; categories observed
// fewer than `threshold` times are pooled, and an undersized pool is merged
// into the smallest kept category.
std::vector<std::size_t> pooled_labels(const std::vector<Category>& obs, std::size_t threshold,
                                       std::size_t& category_count) {
  std::map<Category, std::size_t> counts;
  for (const auto& c : obs) ++counts[c];
  std::map<Category, std::size_t> index;
  std::size_t pooled = 0;
  std::size_t next = 0;
  std::size_t smallest = 0;
  std::size_t smallest_count = SIZE_MAX;
  for (const auto& [c, n] : counts) {
    if (n >= threshold) {
      if (n < smallest_count) {
        smallest_count = n;
        smallest = next;
      }
      index[c] = next++;
    } else {
      pooled += n;
    }
  }
  std::size_t pool_index = next;
  if (pooled > 0) {
    if (next > 0 && pooled < threshold) pool_index = smallest;
    else ++next;
  }
  category_count = next;
  std::vector<std::size_t> labels;
  labels.reserve(obs.size());
  for (const auto& c : obs) {
    auto it = index.find(c);
    labels.push_back(it == index.end() ? pool_index : it->second);
  }
  return labels;
}

std::vector<Category> collect_windows(const ArrayGenerator& gen, std::size_t k,
                                      const CounterRng& rng, std::size_t first,
                                      std::size_t count,
                                      const std::function<Multigraph(const Multigraph&)>& map) {
  std::vector<Category> out;
  out.reserve(count);
  for (std::size_t r = first; r < first + count; ++r) {
    out.push_back(map(gen.window(k, rng, index32(r))).upper_triangle());
  }
  return out;
}

}  // namespace

StatReport chi_square_homogeneity(const std::vector<Category>& sample_a,
                                  const std::vector<Category>& sample_b, double significance,
                                  std::string name) {
  if (sample_a.empty() || sample_b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "homogeneity test needs two nonempty samples");
  }
  std::vector<Category> all(sample_a);
  all.insert(all.end(), sample_b.begin(), sample_b.end());
  std::size_t categories = 0;
  const auto labels = pooled_labels(all, 10, categories);
  std::vector<double> count_a(categories, 0.0), count_b(categories, 0.0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    (i < sample_a.size() ? count_a : count_b)[labels[i]] += 1.0;
  }
  const double na = static_cast<double>(sample_a.size());
  const double nb = static_cast<double>(sample_b.size());
  double statistic = 0.0;
  for (std::size_t c = 0; c < categories; ++c) {
    const double total = count_a[c] + count_b[c];
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    statistic += (count_a[c] - ea) * (count_a[c] - ea) / ea + (count_b[c] - eb) * (count_b[c] - eb) / eb;
  }
  StatReport r = finish(std::move(name), statistic, categories > 0 ? categories - 1 : 0, significance);
  r.zero_variance = categories <= 1;
  r.notes.push_back(fmt::format("categories after pooling: {}", categories));
  return r;
}

StatReport chi_square_independence(const std::vector<Category>& left,
                                   const std::vector<Category>& right, double significance,
                                   std::string name) {
  if (left.size() != right.size() || left.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "independence test needs paired observations");
  }
  const std::size_t n = left.size();
  const std::size_t threshold = std::max<std::size_t>(5, n / 100);
  std::size_t rows = 0, cols = 0;
  const auto lr = pooled_labels(left, threshold, rows);
  const auto lc = pooled_labels(right, threshold, cols);
  StatReport r;
  if (rows <= 1 || cols <= 1) {
    r = finish(std::move(name), 0.0, 0, significance);
    r.zero_variance = true;
    return r;
  }
  std::vector<double> joint(rows * cols, 0.0), row_sum(rows, 0.0), col_sum(cols, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    joint[lr[i] * cols + lc[i]] += 1.0;
    row_sum[lr[i]] += 1.0;
    col_sum[lc[i]] += 1.0;
  }
  double statistic = 0.0;
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      const double e = row_sum[a] * col_sum[b] / static_cast<double>(n);
      const double d = joint[a * cols + b] - e;
      statistic += d * d / e;
    }
  }
  r = finish(std::move(name), statistic, (rows - 1) * (cols - 1), significance);
  r.notes.push_back(fmt::format("table {}x{} after pooling", rows, cols));
  return r;
}

std::vector<Permutation> default_permutations(std::size_t k) {
  if (k <= 1) return {Permutation::identity(k)};
  std::vector<Permutation> out;
  std::vector<std::size_t> swap01(k), shift(k), reverse(k);
  for (std::size_t i = 0; i < k; ++i) {
    swap01[i] = i;
    shift[i] = (i + 1) % k;
    reverse[i] = k - 1 - i;
  }
  std::swap(swap01[0], swap01[1]);
  out.emplace_back(swap01);
  if (k > 2) {
    out.emplace_back(shift);
    out.emplace_back(reverse);
  }
  return out;
}

ExchangeabilityReport exchangeability_test(const ArrayGenerator& gen, std::size_t k,
                                           std::size_t samples, std::uint64_t seed,
                                           std::span<const Permutation> permutations,
                                           double significance) {
  ExchangeabilityReport report;
  if (permutations.empty()) report.permutations = default_permutations(k);
  else report.permutations.assign(permutations.begin(), permutations.end());
  const CounterRng rng(seed);
  const auto plain = collect_windows(gen, k, rng, 0, samples,
                                     [](const Multigraph& w) { return w; });
  for (std::size_t t = 0; t < report.permutations.size(); ++t) {
    const Permutation& tau = report.permutations[t];
    if (tau.size() != k) throw Error(ErrorCode::kDimensionMismatch, "permutation size differs from k");
    const auto moved = collect_windows(gen, k, rng, (t + 1) * samples, samples,
                                       [&](const Multigraph& w) { return relabel(w, tau); });
    std::string name = "exchangeability tau=(";
    for (std::size_t i = 0; i < k; ++i) name += (i ? " " : "") + std::to_string(tau(i) + 1);
    name += ")";
    report.per_permutation.push_back(chi_square_homogeneity(plain, moved, significance, name));
    report.pass = report.pass && report.per_permutation.back().pass;
  }
  return report;
}

StatReport dissociation_test(const ArrayGenerator& gen, std::span<const std::size_t> left,
                             std::span<const std::size_t> right, std::size_t samples,
                             std::uint64_t seed, double significance) {
  if (left.empty() || right.empty() || left.size() > 2 || right.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "index sets must have one or two elements");
  }
  for (std::size_t i : left) {
    if (std::find(right.begin(), right.end(), i) != right.end()) {
      throw Error(ErrorCode::kOverlappingSplit, fmt::format("index {} is in both sets", i + 1));
    }
  }
  std::size_t k = 0;
  for (std::size_t i : left) k = std::max(k, i + 1);
  for (std::size_t i : right) k = std::max(k, i + 1);
  const CounterRng rng(seed);
  std::vector<Category> a, b;
  a.reserve(samples);
  b.reserve(samples);
  for (std::size_t r = 0; r < samples; ++r) {
    const Multigraph w = gen.window(k, rng, index32(r));
    a.push_back(induced(w, left).upper_triangle());
    b.push_back(induced(w, right).upper_triangle());
  }
  return chi_square_independence(a, b, significance, "dissociation");
}

StatReport consistency_test(const ArrayGenerator& gen, std::size_t k, std::size_t samples,
                            std::uint64_t seed, double significance) {
  const CounterRng rng(seed);
  std::vector<std::size_t> head(k);
  std::iota(head.begin(), head.end(), std::size_t{0});
  std::vector<Category> restricted, direct;
  for (std::size_t r = 0; r < samples; ++r) {
    restricted.push_back(induced(gen.window(k + 1, rng, index32(r)), head).upper_triangle());
    direct.push_back(gen.window(k, rng, index32(samples + r)).upper_triangle());
  }
  return chi_square_homogeneity(restricted, direct, significance, "consistency");
}

StatReport window_law_test(const ArrayGenerator& a, const ArrayGenerator& b, std::size_t k,
                           std::size_t samples, std::uint64_t seed, double significance) {
  const CounterRng rng(seed);
  auto id = [](const Multigraph& w) { return w; };
  return chi_square_homogeneity(collect_windows(a, k, rng, 0, samples, id),
                                collect_windows(b, k, rng, samples, samples, id), significance,
                                "window law");
}

}  // namespace mgl
