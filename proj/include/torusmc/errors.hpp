#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torusmc {

enum class ErrorKind {
    InvalidArgument,
    SingularSystem,
    MalformedMap,
    NotCellular,
    BadFaceHomology,
    NotClosed,
    NotACirculation,
    CocirculationCheckFailed,
    NotEssentiallyValid,
    EmbeddingFailed,
    NotNormalized,
    NotReciprocalHere,
    ClosureFailure,
    DegenerateStar,
    PathInconsistent,
    NonGeneric,
    ParseError,
    ValidationError,
    IoError,
};

std::string_view kind_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can print a stable "error: <Kind>: <message>" line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace torusmc
