#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace curvedef {

enum class ErrKind {
  InvalidInput,
  NumericFailure,
  PathTooClose,
  InvalidRadius,
  MultipleComponent,
  OrderTooHigh,
  InternalInconsistency,
  RankDeficient,
  ProjectionFailure,
  ConstructionFailure,
  SmoothingFailure,
  TrackingFailure,
  NotAtTerminalStratum,
  EnumerationTooLarge,
  ParseError,
};

inline const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::InvalidInput: return "invalid-input";
    case ErrKind::NumericFailure: return "numeric-failure";
    case ErrKind::PathTooClose: return "path-too-close";
    case ErrKind::InvalidRadius: return "invalid-radius";
    case ErrKind::MultipleComponent: return "multiple-component";
    case ErrKind::OrderTooHigh: return "order-too-high";
    case ErrKind::InternalInconsistency: return "internal-inconsistency";
    case ErrKind::RankDeficient: return "rank-deficient";
    case ErrKind::ProjectionFailure: return "projection-failure";
    case ErrKind::ConstructionFailure: return "construction-failure";
    case ErrKind::SmoothingFailure: return "smoothing-failure";
    case ErrKind::TrackingFailure: return "tracking-failure";
    case ErrKind::NotAtTerminalStratum: return "not-at-terminal-stratum";
    case ErrKind::EnumerationTooLarge: return "enumeration-too-large";
    case ErrKind::ParseError: return "parse-error";
  }
  return "unknown";
}

/// Error with a machine-readable kind plus optional numeric payload
/// (residual of the failed solve, rank of a deficient matrix, offending
/// location in the z-plane).
class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrKind kind() const { return kind_; }

  Error& with_residual(double r) { residual_ = r; return *this; }
  Error& with_rank(int r) { rank_ = r; return *this; }
  Error& with_location(std::complex<double> z) { location_ = z; has_location_ = true; return *this; }

  double residual() const { return residual_; }
  int rank() const { return rank_; }
  bool has_location() const { return has_location_; }
  std::complex<double> location() const { return location_; }

 private:
  ErrKind kind_;
  double residual_ = 0.0;
  int rank_ = -1;
  bool has_location_ = false;
  std::complex<double> location_{0.0, 0.0};
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace curvedef
