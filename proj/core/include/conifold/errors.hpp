#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conifold {

/// Failure categories. The CLI maps each category onto one exit code.
enum class ErrorKind {
  Domain,               // argument outside the family's parameter range
  Precondition,         // caller violated an operation's precondition
  Config,               // rejected configuration (degree guard, empty range)
  InternalConsistency,  // an identity that must hold by construction did not
  Numerical,            // iteration failed to converge or methods disagree
  TheoremViolation,     // on-circle root failed the roots-of-unity structure
  VerificationFailure,  // a conifold condition failed beyond tolerance
  LemmaViolation,       // a root escaped the modulus annulus
  OracleMismatch,       // multivariate critical values disagree with g(alpha)
  OracleInconclusive,   // multistart oracle found too few clusters
  Parse,                // malformed report input
  SchemaVersion,        // report written by an incompatible schema
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. Pipeline stages annotate the
/// stage name in flight and rethrow the same object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage);

  /// Root that triggered the failure, when there is one.
  const std::optional<std::complex<double>>& offending_root() const noexcept {
    return offending_root_;
  }
  Error& with_root(std::complex<double> root);

  /// Largest residual seen by a failed root iteration.
  const std::optional<double>& worst_residual() const noexcept {
    return worst_residual_;
  }
  Error& with_residual(double residual);

  const char* what() const noexcept override;

 private:
  void rebuild_message();

  ErrorKind kind_;
  std::string base_message_;
  std::string stage_;
  std::string full_message_;
  std::optional<std::complex<double>> offending_root_;
  std::optional<double> worst_residual_;
};

}  // namespace conifold
