#include "hsurf/errors.hpp"

#include <sstream>

namespace hsurf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::DegenerateSet: return "DegenerateSet";
    case ErrorCode::QuadricViolation: return "QuadricViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NonImmersed: return "NonImmersed";
    case ErrorCode::HeightViolation: return "HeightViolation";
    case ErrorCode::WrongCausalClass: return "WrongCausalClass";
    case ErrorCode::OrientationUndefined: return "OrientationUndefined";
    case ErrorCode::UnitCircleSingularity: return "UnitCircleSingularity";
    case ErrorCode::InfiniteG: return "InfiniteG";
    case ErrorCode::EquatorialNormal: return "EquatorialNormal";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::CausalityViolation: return "CausalityViolation";
    case ErrorCode::UnitModulusSingularity: return "UnitModulusSingularity";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::NonRealHeight: return "NonRealHeight";
    case ErrorCode::EmptyOutput: return "EmptyOutput";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::ParamConstraint: return "ParamConstraint";
    case ErrorCode::DomainConstraint: return "DomainConstraint";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

GeometryError::GeometryError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {

std::string describe_parse(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& detail) {
    std::ostringstream os;
    os << detail << " at byte " << offset;
    if (!expected.empty()) {
        os << "; expected one of:";
        for (const auto& e : expected) os << ' ' << e;
    }
    return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : GeometryError(ErrorCode::ParseError, describe_parse(offset, expected, detail)),
      offset_(offset),
      expected_(std::move(expected)) {}

SingularSystemError::SingularSystemError(std::size_t pivot_row, const std::string& detail)
    : GeometryError(ErrorCode::SingularSystem, detail + " (pivot row " + std::to_string(pivot_row) + ")"),
      pivot_row_(pivot_row) {}

void fail(ErrorCode code, const std::string& what) { throw GeometryError(code, what); }

}  // namespace hsurf
