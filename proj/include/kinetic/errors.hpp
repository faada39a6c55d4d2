#pragma once

#include <stdexcept>
#include <string>

namespace kinetic {

enum class ErrorKind {
  Argument,
  Domain,
  Evaluation,
  Capability,
  UnsupportedParameter,
  Configuration,
  Infeasibility,
  KernelRejection,
  ColdGas,
  Parse,
  SearchFailure,
  RunAborted,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& msg) : Error(K, msg) {}
};

using ArgumentError = KindedError<ErrorKind::Argument>;
using DomainError = KindedError<ErrorKind::Domain>;
using EvaluationError = KindedError<ErrorKind::Evaluation>;
using CapabilityError = KindedError<ErrorKind::Capability>;
using UnsupportedParameterError = KindedError<ErrorKind::UnsupportedParameter>;
using ConfigurationError = KindedError<ErrorKind::Configuration>;
using InfeasibilityError = KindedError<ErrorKind::Infeasibility>;
using KernelRejectionError = KindedError<ErrorKind::KernelRejection>;
using ColdGasError = KindedError<ErrorKind::ColdGas>;
using ParseError = KindedError<ErrorKind::Parse>;
using SearchFailureError = KindedError<ErrorKind::SearchFailure>;
using RunAbortedError = KindedError<ErrorKind::RunAborted>;

}  // namespace kinetic
