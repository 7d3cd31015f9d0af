#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsurf {

enum class ErrorCode {
    NonPositiveHeight,
    DegenerateSet,
    QuadricViolation,
    ParseError,
    DomainError,
    EvaluationError,
    OutsideDomain,
    NonImmersed,
    HeightViolation,
    WrongCausalClass,
    OrientationUndefined,
    UnitCircleSingularity,
    InfiniteG,
    EquatorialNormal,
    BranchPoint,
    CausalityViolation,
    UnitModulusSingularity,
    DegenerateInput,
    SingularSystem,
    ConstraintViolation,
    NonRealHeight,
    EmptyOutput,
    UnknownFamily,
    ParamConstraint,
    DomainConstraint,
    IoError,
    EmptyGrid,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Base of every failure raised by the library. The code is stable and is what
/// reports and tests match on; the message is for humans.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public GeometryError {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

    /// Byte offset into the source text where parsing stopped.
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class SingularSystemError : public GeometryError {
public:
    SingularSystemError(std::size_t pivot_row, const std::string& detail);

    /// Zero-based row of the vanishing pivot in the assembled real system.
    std::size_t pivot_row() const noexcept { return pivot_row_; }

private:
    std::size_t pivot_row_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace hsurf
