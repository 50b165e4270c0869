#include "conifold/errors.hpp"

#include <fmt/format.h>

namespace conifold {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::InternalConsistency: return "internal-consistency error";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::TheoremViolation: return "theorem violation";
    case ErrorKind::VerificationFailure: return "verification failure";
    case ErrorKind::LemmaViolation: return "lemma violation";
    case ErrorKind::OracleMismatch: return "oracle mismatch";
    case ErrorKind::OracleInconclusive: return "oracle inconclusive";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::SchemaVersion: return "schema-version error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind), base_message_(message) {
  rebuild_message();
}

void Error::set_stage(std::string stage) {
  if (stage_.empty()) {
    stage_ = std::move(stage);
    rebuild_message();
  }
}

Error& Error::with_root(std::complex<double> root) {
  offending_root_ = root;
  rebuild_message();
  return *this;
}

Error& Error::with_residual(double residual) {
  worst_residual_ = residual;
  rebuild_message();
  return *this;
}

const char* Error::what() const noexcept { return full_message_.c_str(); }

void Error::rebuild_message() {
  std::string msg;
  if (!stage_.empty()) msg += fmt::format("[stage {}] ", stage_);
  msg += fmt::format("{}: {}", to_string(kind_), base_message_);
  if (offending_root_) {
    msg += fmt::format(" (root {:.17g}{:+.17g}i)", offending_root_->real(),
                       offending_root_->imag());
  }
  if (worst_residual_) {
    msg += fmt::format(" (worst residual {:.3e})", *worst_residual_);
  }
  full_message_ = std::move(msg);
}

}  // namespace conifold
