#include "mgl/error.hpp"

namespace mgl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::kOddDiagonal: return "OddDiagonal";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTruncationTooLarge: return "TruncationTooLarge";
    case ErrorCode::kTooLargeForCanonicalization: return "TooLargeForCanonicalization";
    case ErrorCode::kLabelCountMismatch: return "LabelCountMismatch";
    case ErrorCode::kNonIntegerClassSize: return "NonIntegerClassSize";
    case ErrorCode::kTruncationExceeded: return "TruncationExceeded";
    case ErrorCode::kEmptyTruncation: return "EmptyTruncation";
    case ErrorCode::kMixedVertexCounts: return "MixedVertexCounts";
    case ErrorCode::kBasisNotClosed: return "BasisNotClosed";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kWidthsNotNormalized: return "WidthsNotNormalized";
    case ErrorCode::kDistributionNotNormalized: return "DistributionNotNormalized";
    case ErrorCode::kAsymmetricKernel: return "AsymmetricKernel";
    case ErrorCode::kOddDiagonalMass: return "OddDiagonalMass";
    case ErrorCode::kAsymmetricRepresentation: return "AsymmetricRepresentation";
    case ErrorCode::kOddDiagonalRepresentation: return "OddDiagonalRepresentation";
    case ErrorCode::kOverlappingSplit: return "OverlappingSplit";
    case ErrorCode::kTableMiss: return "TableMiss";
    case ErrorCode::kNegativeMobiusMass: return "NegativeMobiusMass";
    case ErrorCode::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::kZeroConditional: return "ZeroConditional";
    case ErrorCode::kNonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mgl
