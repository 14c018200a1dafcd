#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitw {

enum class ErrorCode {
    DivisionByZero,
    MismatchedParents,
    NonDividingBaseDegree,
    NonDividingDegree,
    ZeroInput,
    CapExceeded,
    NotSquarefree,
    EvenDegreeModel,
    GenusTooSmall,
    MismatchedCurve,
    NotCoprime,
    NotFound,
    VerificationFailed,
    HypothesisFailed,
    NotSmooth,
    MalformedInput,
};

/// Library-wide exception carrying a stable error code for CLI exit mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Search exhausted a finite stage; carries how many candidates were scanned.
class NotFoundError : public Error {
public:
    NotFoundError(const std::string& what, std::uint64_t scanned)
        : Error(ErrorCode::NotFound, what), scanned_(scanned) {}
    std::uint64_t scanned() const { return scanned_; }

private:
    std::uint64_t scanned_;
};

const char* error_code_name(ErrorCode code);

}  // namespace orbitw
