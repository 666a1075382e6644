#include "mgl/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mgl/error.hpp"

namespace mgl {
namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_same_size(const Multigraph& a, const Multigraph& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " vertices");
  }
}

}  // namespace

Multigraph Multigraph::validate(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] < 0) {
        throw Error(ErrorCode::kInvalidArgument, "negative entry at " + pair_name(i, j));
      }
      if (rows[i][j] != rows[j][i]) {
        throw Error(ErrorCode::kAsymmetricMatrix, "A" + pair_name(i, j) + " != A" + pair_name(j, i));
      }
    }
    if (rows[i][i] % 2 != 0) {
      throw Error(ErrorCode::kOddDiagonal, "A" + pair_name(i, i) + " = " + std::to_string(rows[i][i]));
    }
  }
  Multigraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.adj_[i * n + j] = static_cast<Mult>(rows[i][j]);
  }
  return g;
}

Multigraph Multigraph::from_upper_triangle(std::size_t n, std::span<const Mult> upper) {
  if (upper.size() != n * (n + 1) / 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "upper triangle of a " + std::to_string(n) + "-vertex graph needs " +
                    std::to_string(n * (n + 1) / 2) + " entries, got " +
                    std::to_string(upper.size()));
  }
  Multigraph g(n);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) g.set(i, j, upper[p++]);
  }
  return g;
}

void Multigraph::set(std::size_t i, std::size_t j, Mult m) {
  if (i == j && m % 2 != 0) {
    throw Error(ErrorCode::kOddDiagonal, "A" + pair_name(i, i) + " = " + std::to_string(m));
  }
  adj_[i * n_ + j] = m;
  adj_[j * n_ + i] = m;
}

std::vector<Mult> Multigraph::upper_triangle() const {
  std::vector<Mult> out;
  out.reserve(n_ * (n_ + 1) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

Mult Multigraph::max_entry() const noexcept {
  return adj_.empty() ? 0 : *std::max_element(adj_.begin(), adj_.end());
}

std::size_t MultigraphHash::operator()(const Multigraph& g) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (Mult m : g.row(i)) h = h * 1000003u ^ std::hash<Mult>{}(m);
  }
  return h;
}

std::uint64_t edge_count(const Multigraph& g) noexcept {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (Mult m : g.row(i)) sum += m;
  }
  return sum / 2;
}

bool leq(const Multigraph& a, const Multigraph& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) {
      if (a(i, j) > b(i, j)) return false;
    }
  }
  return true;
}

Multigraph add(const Multigraph& a, const Multigraph& b) {
  require_same_size(a, b);
  Multigraph out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) out.set(i, j, a(i, j) + b(i, j));
  }
  return out;
}

Multigraph subtract(const Multigraph& a, const Multigraph& b) {
  require_same_size(a, b);
  Multigraph out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) {
      if (b(i, j) > a(i, j)) {
        throw Error(ErrorCode::kInvalidArgument, "subtraction below zero at " + pair_name(i, j));
      }
      out.set(i, j, a(i, j) - b(i, j));
    }
  }
  return out;
}

Multigraph entrywise_max(const Multigraph& a, const Multigraph& b) {
  require_same_size(a, b);
  Multigraph out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) out.set(i, j, std::max(a(i, j), b(i, j)));
  }
  return out;
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  const std::size_t n = a.size();
  Multigraph out(n + b.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, a(i, j));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) out.set(n + i, n + j, b(i, j));
  }
  return out;
}

Multigraph induced(const Multigraph& g, std::span<const std::size_t> vertices) {
  Multigraph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.size()) {
      throw Error(ErrorCode::kRangeViolation,
                  "vertex " + std::to_string(vertices[i] + 1) + " of a " +
                      std::to_string(g.size()) + "-vertex graph");
    }
    for (std::size_t j = i; j < vertices.size(); ++j) {
      if (vertices[j] >= g.size()) continue;
      out.set(i, j, g(vertices[i], vertices[j]));
    }
  }
  return out;
}

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
  std::vector<char> seen(map_.size(), 0);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) {
      throw Error(ErrorCode::kInvalidArgument, "mapping is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Multigraph relabel(const Multigraph& g, const Permutation& sigma) {
  if (sigma.size() != g.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation size differs from vertex count");
  }
  Multigraph out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) out.set(i, j, g(sigma(i), sigma(j)));
  }
  return out;
}

namespace {

// Odometer over upper-triangle slots in row-major order, so the output is
// lexicographic in the row-major upper triangle.
std::vector<Multigraph> enumerate_box(std::size_t k, Mult off_max, Mult diag_max,
                                      std::optional<std::uint64_t> max_edges,
                                      std::size_t cap) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) slots.emplace_back(i, j);
  }
  std::vector<Multigraph> out;
  Multigraph current(k);
  // Edge contribution of slot (i,j): A(i,j) for i<j, A(i,i)/2 on the diagonal.
  auto recurse = [&](auto&& self, std::size_t s, std::uint64_t edges) -> void {
    if (s == slots.size()) {
      if (out.size() >= cap) {
        throw Error(ErrorCode::kTruncationTooLarge,
                    "more than " + std::to_string(cap) + " matrices for k=" + std::to_string(k));
      }
      out.push_back(current);
      return;
    }
    const auto [i, j] = slots[s];
    const Mult step = i == j ? 2 : 1;
    const Mult limit = i == j ? diag_max : off_max;
    for (Mult m = 0; m <= limit; m += step) {
      const std::uint64_t e = edges + (i == j ? m / 2 : m);
      if (max_edges && e > *max_edges) break;
      current.set(i, j, m);
      self(self, s + 1, e);
    }
    current.set(i, j, 0);
  };
  recurse(recurse, 0, 0);
  return out;
}

}  // namespace

std::vector<Multigraph> enumerate_Ak(std::size_t k, const Truncation& truncation,
                                     std::size_t cap) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const Mult diag_max = 2 * (truncation.max_mult / 2);
  return enumerate_box(k, truncation.max_mult, diag_max, truncation.max_edges, cap);
}

std::vector<Multigraph> enumerate_Ek(std::size_t k, std::size_t max_k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (k > max_k) {
    throw Error(ErrorCode::kTruncationTooLarge,
                "E_k for k=" + std::to_string(k) + " exceeds the cap k<=" + std::to_string(max_k));
  }
  return enumerate_box(k, 1, 2, std::nullopt, std::size_t{1} << (k * (k + 1) / 2));
}

namespace {

// Branch-and-bound search for the lexicographically smallest column-wise
// upper-triangle serialisation. Once the first t vertices of the relabeling
// are fixed, the first t(t+1)/2 serialised entries are determined, so any
// prefix larger than the incumbent is pruned.
class CanonicalSearch {
 public:
  CanonicalSearch(const Multigraph& g, std::size_t fixed, bool stop_on_improvement)
      : g_(g), n_(g.size()), fixed_(fixed), stop_(stop_on_improvement),
        perm_(n_), used_(n_, 0) {
    current_.reserve(n_ * (n_ + 1) / 2);
  }

  void seed_with_identity() {
    best_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i <= j; ++i) best_.push_back(g_(i, j));
    }
    have_best_ = true;
  }

  void run() { dfs(0, false); }

  bool improved() const { return improved_; }
  const std::vector<std::size_t>& best_perm() const { return best_perm_; }

 private:
  void dfs(std::size_t t, bool less) {
    if (done_) return;
    if (t == n_) {
      if (!have_best_ || less) {
        best_ = current_;
        best_perm_ = perm_;
        have_best_ = true;
        improved_ = true;
        ++version_;
        if (stop_) done_ = true;
      } else if (best_perm_.empty()) {
        best_perm_ = perm_;
      }
      return;
    }
    const std::size_t begin = t < fixed_ ? t : fixed_;
    const std::size_t end = t < fixed_ ? t + 1 : n_;
    const std::size_t offset = t * (t + 1) / 2;
    for (std::size_t v = begin; v < end && !done_; ++v) {
      if (used_[v]) continue;
      for (std::size_t i = 0; i < t; ++i) current_.push_back(g_(perm_[i], v));
      current_.push_back(g_(v, v));
      bool child_less = less;
      bool prune = false;
      if (have_best_ && !less) {
        for (std::size_t p = offset; p <= offset + t; ++p) {
          if (current_[p] != best_[p]) {
            if (current_[p] > best_[p]) prune = true;
            else child_less = true;
            break;
          }
        }
      }
      if (!prune) {
        perm_[t] = v;
        used_[v] = 1;
        const std::size_t before = version_;
        dfs(t + 1, child_less);
        used_[v] = 0;
        // A new incumbent found below shares this prefix.
        if (version_ != before) less = false;
      }
      current_.resize(offset);
    }
  }

  const Multigraph& g_;
  std::size_t n_;
  std::size_t fixed_;
  bool stop_;
  std::vector<std::size_t> perm_;
  std::vector<char> used_;
  std::vector<Mult> current_;
  std::vector<Mult> best_;
  std::vector<std::size_t> best_perm_;
  bool have_best_ = false;
  bool improved_ = false;
  bool done_ = false;
  std::size_t version_ = 0;
};

void require_canonical_size(const Multigraph& g, std::size_t max_n) {
  if (g.size() > max_n) {
    throw Error(ErrorCode::kTooLargeForCanonicalization,
                std::to_string(g.size()) + " vertices exceeds the cap of " + std::to_string(max_n));
  }
}

Multigraph canonical_impl(const Multigraph& g, std::size_t fixed) {
  CanonicalSearch search(g, fixed, false);
  search.seed_with_identity();
  search.run();
  if (!search.improved()) return g;
  return relabel(g, Permutation(search.best_perm()));
}

}  // namespace

Multigraph canonical_form(const Multigraph& g, std::size_t max_n) {
  require_canonical_size(g, max_n);
  return canonical_impl(g, 0);
}

Multigraph canonical_form_labeled(const Multigraph& g, std::size_t k, std::size_t max_n) {
  require_canonical_size(g, max_n);
  if (k > g.size()) throw Error(ErrorCode::kLabelCountMismatch, "more labels than vertices");
  return canonical_impl(g, k);
}

bool is_canonical(const Multigraph& g, std::size_t max_n) {
  require_canonical_size(g, max_n);
  CanonicalSearch search(g, 0, true);
  search.seed_with_identity();
  search.run();
  return !search.improved();
}

bool isomorphic(const Multigraph& a, const Multigraph& b, std::size_t max_n) {
  if (a.size() != b.size() || edge_count(a) != edge_count(b)) return false;
  return canonical_form(a, max_n) == canonical_form(b, max_n);
}

KLabeledGraph::KLabeledGraph(std::size_t k, Multigraph graph) : k_(k), graph_(std::move(graph)) {
  if (k_ > graph_.size()) {
    throw Error(ErrorCode::kLabelCountMismatch,
                std::to_string(k_) + " labels on a " + std::to_string(graph_.size()) +
                    "-vertex graph");
  }
}

KLabeledGraph glue(const KLabeledGraph& f1, const KLabeledGraph& f2) {
  if (f1.labels() != f2.labels()) {
    throw Error(ErrorCode::kLabelCountMismatch,
                std::to_string(f1.labels()) + " vs " + std::to_string(f2.labels()) + " labels");
  }
  const std::size_t k = f1.labels();
  const std::size_t u1 = f1.unlabeled();
  const Multigraph& a1 = f1.graph();
  const Multigraph& a2 = f2.graph();
  Multigraph out(k + u1 + f2.unlabeled());
  // Position of vertex v of part `part` in the glued graph.
  auto place = [&](int part, std::size_t v) { return v < k ? v : (part == 1 ? v : v + u1); };
  for (int part = 1; part <= 2; ++part) {
    const Multigraph& a = part == 1 ? a1 : a2;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i; j < a.size(); ++j) {
        const std::size_t pi = place(part, i);
        const std::size_t pj = place(part, j);
        out.set(pi, pj, std::max(out(pi, pj), a(i, j)));
      }
    }
  }
  return KLabeledGraph(k, std::move(out));
}

QuotientData quotient(const Multigraph& g) {
  const std::size_t n = g.size();
  QuotientData q;
  std::vector<std::size_t> representative;
  for (std::size_t v = 0; v < n; ++v) {
    auto row = g.row(v);
    auto it = std::find_if(representative.begin(), representative.end(), [&](std::size_t r) {
      return std::equal(row.begin(), row.end(), g.row(r).begin());
    });
    if (it == representative.end()) {
      representative.push_back(v);
      q.classes.push_back({v});
    } else {
      q.classes[static_cast<std::size_t>(it - representative.begin())].push_back(v);
    }
  }
  q.matrix = induced(g, representative);
  for (const auto& cls : q.classes) {
    q.weights.push_back(make_rational(static_cast<std::int64_t>(cls.size()),
                                      static_cast<std::int64_t>(n)));
  }
  return q;
}

Multigraph reconstruct(const QuotientData& q, std::size_t n) {
  std::vector<std::size_t> class_of;
  for (std::size_t c = 0; c < q.weights.size(); ++c) {
    const Rational count = q.weights[c] * static_cast<std::int64_t>(n);
    if (denominator(count) != 1 || count <= 0) {
      throw Error(ErrorCode::kNonIntegerClassSize,
                  "class " + std::to_string(c + 1) + " has size " + to_string(count));
    }
    class_of.insert(class_of.end(), numerator(count).convert_to<std::size_t>(), c);
  }
  if (class_of.size() != n) {
    throw Error(ErrorCode::kNonIntegerClassSize, "class sizes do not add up to n");
  }
  return induced(q.matrix, class_of);
}

namespace graphs {

Multigraph empty(std::size_t n) { return Multigraph(n); }

Multigraph edge(Mult multiplicity) {
  Multigraph g(2);
  g.set(0, 1, multiplicity);
  return g;
}

Multigraph loops(std::size_t loop_count) {
  Multigraph g(1);
  g.set(0, 0, static_cast<Mult>(2 * loop_count));
  return g;
}

Multigraph complete(std::size_t n) {
  Multigraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set(i, j, 1);
  }
  return g;
}

Multigraph path(std::size_t vertices) {
  Multigraph g(vertices);
  for (std::size_t i = 0; i + 1 < vertices; ++i) g.set(i, i + 1, 1);
  return g;
}

}  // namespace graphs

}  // namespace mgl
