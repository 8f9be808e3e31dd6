#pragma once

#include <stdexcept>
#include <string>

namespace lidartwin {

// Error taxonomy shared by the whole toolkit. The CLI maps categories to
// exit codes: Io -> 1, Validation -> 2.
enum class ErrorCode {
    // I/O and data integrity
    IoError,
    ParseError,
    IncompleteDataset,
    CorruptDataset,
    // validation
    EmptyMesh,
    DegenerateTriangle,
    InvalidScale,
    EmptyResult,
    SpecInconsistent,
    TooManyActors,
    InvalidDistribution,
    SnapshotMismatch,
    EmptyCloud,
    DegenerateBaseline,
    ConfigInvalid,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IncompleteDataset: return "IncompleteDataset";
        case ErrorCode::CorruptDataset: return "CorruptDataset";
        case ErrorCode::EmptyMesh: return "EmptyMesh";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::EmptyResult: return "EmptyResult";
        case ErrorCode::SpecInconsistent: return "SpecInconsistent";
        case ErrorCode::TooManyActors: return "TooManyActors";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::SnapshotMismatch: return "SnapshotMismatch";
        case ErrorCode::EmptyCloud: return "EmptyCloud";
        case ErrorCode::DegenerateBaseline: return "DegenerateBaseline";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

inline bool is_io_error(ErrorCode c) {
    return c == ErrorCode::IoError || c == ErrorCode::ParseError ||
           c == ErrorCode::IncompleteDataset || c == ErrorCode::CorruptDataset;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lidartwin
