#include "mgl/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include <fmt/format.h>

#include "mgl/error.hpp"

namespace mgl {
namespace {

// Exact sum first; otherwise accept a double-precision sum within tolerance.
bool check_sum(const std::vector<Rational>& values, ErrorCode code, const std::string& what,
               bool& exact) {
  Rational sum = 0;
  for (const Rational& v : values) {
    if (v < 0) throw Error(code, what + " has a negative entry");
    sum += v;
  }
  if (sum == 1) return true;
  if (std::abs(to_double(sum) - 1.0) <= kNormalizationTolerance) {
    exact = false;
    return true;
  }
  throw Error(code, what + " sums to " + fmt::format("{:.15g}", to_double(sum)));
}

std::vector<double> cdf_of(const std::vector<Rational>& p) {
  std::vector<double> cdf(p.size());
  Rational running = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    running += p[i];
    cdf[i] = to_double(running);
  }
  return cdf;
}

Rational tail_of(const std::vector<Rational>& p, Mult l) {
  Rational sum = 0;
  for (std::size_t i = l; i < p.size(); ++i) sum += p[i];
  return sum;
}

}  // namespace

StepMultigraphon StepMultigraphon::validate(RawGraphon raw) {
  const std::size_t m = raw.widths.size();
  if (m == 0) throw Error(ErrorCode::kWidthsNotNormalized, "no cells");
  if (raw.pair.size() != m || raw.diag.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel arrays do not match the cell count");
  }
  StepMultigraphon w;
  for (std::size_t a = 0; a < m; ++a) {
    if (raw.widths[a] <= 0) {
      throw Error(ErrorCode::kWidthsNotNormalized, fmt::format("cell {} has nonpositive width", a + 1));
    }
  }
  check_sum(raw.widths, ErrorCode::kWidthsNotNormalized, "widths", w.exact_);

  std::size_t support = 1;
  for (std::size_t a = 0; a < m; ++a) {
    if (raw.pair[a].size() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "kernel arrays do not match the cell count");
    }
    support = std::max(support, raw.diag[a].size());
    for (const auto& p : raw.pair[a]) support = std::max(support, p.size());
  }
  for (std::size_t a = 0; a < m; ++a) {
    raw.diag[a].resize(support, 0);
    for (auto& p : raw.pair[a]) p.resize(support, 0);
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (raw.pair[a][b] != raw.pair[b][a]) {
        throw Error(ErrorCode::kAsymmetricKernel, fmt::format("P_{}{} != P_{}{}", a + 1, b + 1, b + 1, a + 1));
      }
      check_sum(raw.pair[a][b], ErrorCode::kDistributionNotNormalized,
                fmt::format("P_{}{}", a + 1, b + 1), w.exact_);
    }
    for (std::size_t l = 1; l < support; l += 2) {
      if (raw.diag[a][l] != 0) {
        throw Error(ErrorCode::kOddDiagonalMass,
                    fmt::format("D_{}({}) = {}", a + 1, l, to_string(raw.diag[a][l])));
      }
    }
    check_sum(raw.diag[a], ErrorCode::kDistributionNotNormalized, fmt::format("D_{}", a + 1), w.exact_);
  }

  w.widths_ = raw.widths;
  w.pair_ = raw.pair;
  w.diag_ = raw.diag;
  w.cap_ = static_cast<Mult>(support - 1);
  Rational running = 0;
  for (const Rational& width : w.widths_) {
    running += width;
    w.cumulative_.push_back(to_double(running));
  }
  w.cumulative_.back() = 1.0;
  w.pair_cdf_.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) w.pair_cdf_[a].push_back(cdf_of(w.pair_[a][b]));
    w.diag_cdf_.push_back(cdf_of(w.diag_[a]));
  }
  w.raw_ = std::move(raw);
  return w;
}

Rational StepMultigraphon::pair_tail(std::size_t a, std::size_t b, Mult l) const {
  return tail_of(pair_[a][b], l);
}

Rational StepMultigraphon::diag_tail(std::size_t a, Mult l) const {
  return tail_of(diag_[a], l);
}

std::size_t StepMultigraphon::cell_of(double x) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

Mult inverse_cdf(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t l = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  while (l > 0 && cdf[l] == cdf[l - 1]) --l;
  return static_cast<Mult>(l);
}

StepMultigraphon from_graph(const Multigraph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "graph has no vertices");
  const std::size_t support = g.max_entry() + 1u;
  RawGraphon raw;
  raw.widths.assign(n, make_rational(1, static_cast<std::int64_t>(n)));
  raw.pair.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(support, 0)));
  raw.diag.assign(n, std::vector<Rational>(support, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) raw.pair[a][b][g(a, b)] = 1;
    raw.diag[a][g(a, a)] = 1;
  }
  return StepMultigraphon::validate(std::move(raw));
}

StepMultigraphon constant_graphon(std::vector<Rational> pair, std::vector<Rational> diag) {
  RawGraphon raw;
  raw.widths = {Rational(1)};
  raw.pair = {{std::move(pair)}};
  raw.diag = {std::move(diag)};
  return StepMultigraphon::validate(std::move(raw));
}

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) compensation += (sum - t) + x;
    else compensation += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + compensation; }
};

template <class T>
struct Accumulator {
  T total = 0;
  void add(const T& x) { total += x; }
  T value() const { return total; }
};

template <>
struct Accumulator<double> {
  NeumaierSum s;
  void add(double x) { s.add(x); }
  double value() const { return s.value(); }
};

template <class T>
T convert(const Rational& r) {
  if constexpr (std::is_same_v<T, double>) return to_double(r);
  else return r;
}

// Depth-first sum over cell assignments; factor tables are indexed by the
// multiplicities that actually occur in F.
template <class T>
T cell_sum(const Multigraph& f, const StepMultigraphon& w, Mode mode, std::uint64_t budget) {
  const std::size_t k = f.size();
  const std::size_t m = w.cells();
  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (assignments > budget / m) {
      throw Error(ErrorCode::kBudgetExceeded,
                  fmt::format("{}^{} cell assignments exceed the budget of {}", m, k, budget));
    }
    assignments *= m;
  }
  const Mult top = f.max_entry();
  auto factor = [&](const std::vector<Rational>& p, Mult l) -> Rational {
    if (mode == Mode::kLeq) return tail_of(p, l);
    return l < p.size() ? p[l] : Rational(0);
  };
  std::vector<T> width(m);
  std::vector<std::vector<std::vector<T>>> pair(m, std::vector<std::vector<T>>(m));
  std::vector<std::vector<T>> diag(m);
  for (std::size_t a = 0; a < m; ++a) {
    width[a] = convert<T>(w.width(a));
    for (Mult l = 0; l <= top; ++l) diag[a].push_back(convert<T>(factor(w.diag(a), l)));
    for (std::size_t b = 0; b < m; ++b) {
      for (Mult l = 0; l <= top; ++l) pair[a][b].push_back(convert<T>(factor(w.pair(a, b), l)));
    }
  }
  Accumulator<T> acc;
  std::vector<std::size_t> cell(k);
  auto dfs = [&](auto&& self, std::size_t t, const T& partial) -> void {
    if (t == k) {
      acc.add(partial);
      return;
    }
    for (std::size_t c = 0; c < m; ++c) {
      T term = partial * width[c] * diag[c][f(t, t)];
      for (std::size_t s = 0; s < t && term != 0; ++s) term *= pair[cell[s]][c][f(s, t)];
      if (term == 0) continue;
      cell[t] = c;
      self(self, t + 1, term);
    }
  };
  dfs(dfs, 0, T(1));
  return acc.value();
}

}  // namespace

Rational graphon_density_exact(const Multigraph& f, const StepMultigraphon& w, Mode mode,
                               std::uint64_t budget) {
  return cell_sum<Rational>(f, w, mode, budget);
}

double graphon_density(const Multigraph& f, const StepMultigraphon& w, Mode mode,
                       std::uint64_t budget) {
  return cell_sum<double>(f, w, mode, budget);
}

TailMass tightness_tail(const StepMultigraphon& w, Mult m0) {
  TailMass out;
  for (std::size_t a = 0; a < w.cells(); ++a) {
    out.diag += w.width(a) * w.diag_tail(a, m0);
    for (std::size_t b = 0; b < w.cells(); ++b) {
      out.offdiag += w.width(a) * w.width(b) * w.pair_tail(a, b, m0);
    }
  }
  return out;
}

void SampledMultigraphon::check(std::size_t probes) const {
  // Weyl sequences give reproducible, well-spread probe points.
  constexpr double kAlpha1 = 0.6180339887498949;
  constexpr double kAlpha2 = 0.4142135623730951;
  auto check_dist = [&](const std::vector<double>& p, const char* what) {
    if (p.size() != static_cast<std::size_t>(cap) + 1) {
      throw Error(ErrorCode::kDistributionNotNormalized,
                  fmt::format("{} has {} entries, expected {}", what, p.size(), cap + 1));
    }
    double sum = 0.0;
    for (double v : p) {
      if (v < 0) throw Error(ErrorCode::kDistributionNotNormalized, std::string(what) + " is negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance * static_cast<double>(p.size())) {
      throw Error(ErrorCode::kDistributionNotNormalized,
                  fmt::format("{} sums to {:.15g}", what, sum));
    }
  };
  for (std::size_t i = 1; i <= probes; ++i) {
    const double x = std::fmod(kAlpha1 * static_cast<double>(i), 1.0);
    const double y = std::fmod(kAlpha2 * static_cast<double>(i), 1.0);
    const auto pxy = kernel(x, y);
    const auto pyx = kernel(y, x);
    check_dist(pxy, "kernel");
    for (std::size_t l = 0; l < pxy.size(); ++l) {
      if (std::abs(pxy[l] - pyx[l]) > kNormalizationTolerance) {
        throw Error(ErrorCode::kAsymmetricKernel,
                    fmt::format("W({:.6f},{:.6f},{}) != W({:.6f},{:.6f},{})", x, y, l, y, x, l));
      }
    }
    const auto d = diag_kernel(x);
    check_dist(d, "diagonal kernel");
    for (std::size_t l = 1; l < d.size(); l += 2) {
      if (d[l] != 0.0) {
        throw Error(ErrorCode::kOddDiagonalMass, fmt::format("W({:.6f},{:.6f},{}) > 0", x, x, l));
      }
    }
  }
}

}  // namespace mgl
