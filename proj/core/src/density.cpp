#include "mgl/density.hpp"

#include <ostream>
#include <string>

#include <fmt/format.h>

#include "mgl/error.hpp"

namespace mgl {

std::string_view to_string(Mode mode) { return mode == Mode::kLeq ? "leq" : "eq"; }

std::string_view to_string(DensityVariant variant) {
  switch (variant) {
    case DensityVariant::kHomLeq: return "hom_leq";
    case DensityVariant::kHomEq: return "hom_eq";
    case DensityVariant::kInjLeq: return "inj_leq";
    case DensityVariant::kInjEq: return "inj_eq";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "leq") return Mode::kLeq;
  if (text == "eq") return Mode::kEq;
  throw Error(ErrorCode::kParseError, "unknown mode '" + std::string(text) + "'");
}

DensityVariant parse_variant(std::string_view text) {
  for (auto v : {DensityVariant::kHomLeq, DensityVariant::kHomEq, DensityVariant::kInjLeq,
                 DensityVariant::kInjEq}) {
    if (text == to_string(v)) return v;
  }
  throw Error(ErrorCode::kParseError, "unknown density variant '" + std::string(text) + "'");
}

namespace {

inline bool compare(Mult a, Mult b, Mode mode) { return mode == Mode::kLeq ? a <= b : a == b; }

// Number of maps, or nullopt if it exceeds the budget.
std::optional<std::uint64_t> map_count(std::size_t k, std::size_t n, bool injective,
                                       std::uint64_t budget) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t factor = injective ? n - i : n;
    if (factor == 0) return 0;
    if (count > budget / factor) return std::nullopt;
    count *= factor;
  }
  return count;
}

class MapCounter {
 public:
  MapCounter(const Multigraph& f, const Multigraph& g, Mode mode, bool injective)
      : f_(f), g_(g), mode_(mode), injective_(injective), phi_(f.size()), used_(g.size(), 0) {}

  std::uint64_t run() {
    dfs(0);
    return hits_;
  }

 private:
  void dfs(std::size_t t) {
    if (t == f_.size()) {
      ++hits_;
      return;
    }
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (injective_ && used_[v]) continue;
      if (!compare(f_(t, t), g_(v, v), mode_)) continue;
      bool ok = true;
      for (std::size_t s = 0; s < t && ok; ++s) ok = compare(f_(s, t), g_(phi_[s], v), mode_);
      if (!ok) continue;
      phi_[t] = v;
      used_[v] = 1;
      dfs(t + 1);
      used_[v] = 0;
    }
  }

  const Multigraph& f_;
  const Multigraph& g_;
  Mode mode_;
  bool injective_;
  std::vector<std::size_t> phi_;
  std::vector<char> used_;
  std::uint64_t hits_ = 0;
};

}  // namespace

bool indicator(const Multigraph& f, const Multigraph& g, std::span<const std::size_t> phi,
               Mode mode) {
  if (phi.size() != f.size()) {
    throw Error(ErrorCode::kRangeViolation, "map has " + std::to_string(phi.size()) +
                                                " entries for " + std::to_string(f.size()) +
                                                " vertices");
  }
  for (std::size_t v : phi) {
    if (v >= g.size()) {
      throw Error(ErrorCode::kRangeViolation, "image " + std::to_string(v + 1) + " outside [" +
                                                  std::to_string(g.size()) + "]");
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i; j < f.size(); ++j) {
      if (!compare(f(i, j), g(phi[i], phi[j]), mode)) return false;
    }
  }
  return true;
}

Rational density(const Multigraph& f, const Multigraph& g, DensityVariant variant,
                 std::uint64_t budget) {
  const bool injective = is_injective(variant);
  if (g.size() == 0) throw Error(ErrorCode::kInvalidArgument, "target graph has no vertices");
  if (injective && f.size() > g.size()) return 0;
  const auto maps = map_count(f.size(), g.size(), injective, budget);
  if (!maps) {
    throw Error(ErrorCode::kBudgetExceeded,
                fmt::format("{}^{} maps exceed the budget of {}", g.size(), f.size(), budget));
  }
  const std::uint64_t hits = MapCounter(f, g, mode_of(variant), injective).run();
  return Rational(BigInt(hits), BigInt(*maps));
}

DensityTable density_table(std::span<const Multigraph> testgraphs, const Multigraph& g,
                           std::span<const DensityVariant> variants, std::uint64_t budget) {
  DensityTable table;
  table.variants.assign(variants.begin(), variants.end());
  for (const Multigraph& f : testgraphs) {
    auto& row = table.rows.emplace_back();
    for (DensityVariant v : variants) {
      DensityCell cell;
      try {
        cell.value = density(f, g, v, budget);
      } catch (const Error& e) {
        cell.error = e.what();
        cell.code = e.code();
      }
      row.push_back(std::move(cell));
    }
  }
  return table;
}

void write_density_csv(std::ostream& out, const DensityTable& table,
                       std::span<const std::string> names) {
  out << "F,variant,value_num,value_den,value_float\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string name = r < names.size() ? names[r] : std::to_string(r + 1);
    for (std::size_t c = 0; c < table.variants.size(); ++c) {
      const DensityCell& cell = table.rows[r][c];
      out << name << ',' << to_string(table.variants[c]) << ',';
      if (cell.value) {
        out << numerator(*cell.value).str() << ',' << denominator(*cell.value).str() << ','
            << fmt::format("{:.17g}", to_double(*cell.value)) << '\n';
      } else {
        out << "error,," << '\n';
      }
    }
  }
}

}  // namespace mgl
