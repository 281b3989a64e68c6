#include "skan/error.hpp"

namespace skan {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SimplicialIdentityViolation: return "SimplicialIdentityViolation";
    case ErrorKind::DanglingFace: return "DanglingFace";
    case ErrorKind::DegenerateGeneratorListed: return "DegenerateGeneratorListed";
    case ErrorKind::RelationNotSimplicial: return "RelationNotSimplicial";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::VertexNotFound: return "VertexNotFound";
    case ErrorKind::InsufficientDimensionBound: return "InsufficientDimensionBound";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CertificateNotFound: return "CertificateNotFound";
    case ErrorKind::TargetNotKan: return "TargetNotKan";
    case ErrorKind::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorKind::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::ActionNotFree: return "ActionNotFree";
    case ErrorKind::SourceNotKan: return "SourceNotKan";
    case ErrorKind::ProjectionNotFibration: return "ProjectionNotFibration";
    case ErrorKind::CertificateMissing: return "CertificateMissing";
    case ErrorKind::TwistingIdentityViolation: return "TwistingIdentityViolation";
    case ErrorKind::SectionNotFound: return "SectionNotFound";
    case ErrorKind::IntersectionNotContractible: return "IntersectionNotContractible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace skan
