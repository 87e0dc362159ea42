#ifndef SHIFTWORD_ERROR_HPP
#define SHIFTWORD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shiftword {

enum class ErrorKind {
  Domain,            // argument outside the documented domain
  Parse,             // measure-spec / word-file syntax error (message carries line:col)
  EmptyResult,       // concatenation with total length 0
  InsufficientPrefix,
  NonStationary,
  NoUniqueStationary,
  WeightError,
  DegenerateOracle,
  VerifyFailure,     // internal re-verification failed; indicates a bug
  LengthTooSmall,
  AuditFailure,
  ScheduleTooShort,
  GenericityFailure, // indicates a bug: the construction proves this cannot fail
  SupportTooLarge,
  BudgetExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::InsufficientPrefix: return "InsufficientPrefix";
    case ErrorKind::NonStationary: return "NonStationary";
    case ErrorKind::NoUniqueStationary: return "NoUniqueStationary";
    case ErrorKind::WeightError: return "WeightError";
    case ErrorKind::DegenerateOracle: return "DegenerateOracle";
    case ErrorKind::VerifyFailure: return "VerifyFailure";
    case ErrorKind::LengthTooSmall: return "LengthTooSmall";
    case ErrorKind::AuditFailure: return "AuditFailure";
    case ErrorKind::ScheduleTooShort: return "ScheduleTooShort";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace shiftword

#endif
