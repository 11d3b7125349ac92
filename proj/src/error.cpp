#include "hypconv/error.hpp"

namespace hypconv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Pole: return "PoleError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::CPole: return "CPole";
    case ErrorCode::TermCapExceeded: return "TermCapExceeded";
    case ErrorCode::NotConvergentAtOne: return "NotConvergentAtOne";
    case ErrorCode::CaseNotApplicable: return "CaseNotApplicable";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::CFNotConverged: return "CFNotConverged";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DerivativeZero: return "DerivativeZero";
    case ErrorCode::LimitNotFinite: return "LimitNotFinite";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hypconv
