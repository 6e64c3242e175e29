#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace l1gft {

/// Stable error codes. The numeric value is also the CLI exit status offset,
/// so never reorder existing entries.
enum class ErrorCode : int {
    ParseError = 1,
    AsymmetricWeights,
    NegativeWeight,
    SelfLoop,
    DuplicateEdge,
    DisconnectedGraph,
    IndexOutOfRange,
    InvalidParameter,
    DimensionMismatch,
    ZeroReferenceVariation,
    SingleBlock,
    RankDeficientU,
    GraphTooLarge,
    InfeasibleStep,
    ConvergenceFailure,
    NonOrthonormalBasis,
    ZeroSignal,
    LengthMismatch,
    IoError,
    InternalError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AsymmetricWeights: return "AsymmetricWeights";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroReferenceVariation: return "ZeroReferenceVariation";
    case ErrorCode::SingleBlock: return "SingleBlock";
    case ErrorCode::RankDeficientU: return "RankDeficientU";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::InfeasibleStep: return "InfeasibleStep";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InternalError: return "InternalError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

} // namespace l1gft
