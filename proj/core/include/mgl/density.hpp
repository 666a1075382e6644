#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/error.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/rational.hpp"

namespace mgl {

/// Comparison used by a homomorphism indicator: A(i,j) <= B(phi i, phi j) or
/// A(i,j) == B(phi i, phi j).
enum class Mode { kLeq, kEq };

/// hom_leq = t_<=, hom_eq = t_=, inj_leq = t^0_<=, inj_eq = t^0_=.
enum class DensityVariant { kHomLeq, kHomEq, kInjLeq, kInjEq };

std::string_view to_string(Mode mode);
std::string_view to_string(DensityVariant variant);
Mode parse_mode(std::string_view text);
DensityVariant parse_variant(std::string_view text);

constexpr Mode mode_of(DensityVariant v) {
  return v == DensityVariant::kHomLeq || v == DensityVariant::kInjLeq ? Mode::kLeq : Mode::kEq;
}
constexpr bool is_injective(DensityVariant v) {
  return v == DensityVariant::kInjLeq || v == DensityVariant::kInjEq;
}

inline constexpr std::uint64_t kDefaultMapBudget = 100'000'000;

/// 1 iff every pair i,j of F satisfies the mode's comparison under phi.
/// Throws RangeViolation if phi is not a total map [k] -> [n].
bool indicator(const Multigraph& f, const Multigraph& g, std::span<const std::size_t> phi,
               Mode mode);

/// Exact homomorphism density by depth-first map enumeration with pruning.
/// Throws BudgetExceeded when the number of maps exceeds `budget`.
Rational density(const Multigraph& f, const Multigraph& g, DensityVariant variant,
                 std::uint64_t budget = kDefaultMapBudget);

struct DensityCell {
  std::optional<Rational> value;
  std::string error;
  std::optional<ErrorCode> code;
};

struct DensityTable {
  std::vector<DensityVariant> variants;
  /// One row per testgraph, one cell per variant.
  std::vector<std::vector<DensityCell>> rows;
};

/// Evaluates every (testgraph, variant) cell; failing cells carry the error
/// text instead of a value.
DensityTable density_table(std::span<const Multigraph> testgraphs, const Multigraph& g,
                           std::span<const DensityVariant> variants,
                           std::uint64_t budget = kDefaultMapBudget);

/// CSV with header "F,variant,value_num,value_den,value_float".
void write_density_csv(std::ostream& out, const DensityTable& table,
                       std::span<const std::string> names);

}  // namespace mgl
