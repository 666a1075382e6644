#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgl {

enum class ErrorCode {
  kAsymmetricMatrix,
  kOddDiagonal,
  kDimensionMismatch,
  kTruncationTooLarge,
  kTooLargeForCanonicalization,
  kLabelCountMismatch,
  kNonIntegerClassSize,
  kTruncationExceeded,
  kEmptyTruncation,
  kMixedVertexCounts,
  kBasisNotClosed,
  kRangeViolation,
  kBudgetExceeded,
  kWidthsNotNormalized,
  kDistributionNotNormalized,
  kAsymmetricKernel,
  kOddDiagonalMass,
  kAsymmetricRepresentation,
  kOddDiagonalRepresentation,
  kOverlappingSplit,
  kTableMiss,
  kNegativeMobiusMass,
  kResidualTooLarge,
  kZeroConditional,
  kNonSymmetricInput,
  kParseError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mgl
