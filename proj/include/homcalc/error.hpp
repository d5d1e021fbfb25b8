#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homcalc {

/// Failure categories surfaced by the library.  The CLI maps each kind to an
/// exit code (see `exit_code_for`).
enum class ErrorKind {
  IllFormedMap,
  TorsionInDegreeZero,
  NotApplicable,
  NotAnEmbedding,
  InvalidRootDatum,
  UnknownName,
  BadParams,
  ParseError,
  PicNonTrivial,
  HNotConnected,
  HKerCharNotConnected,
  CrossCheckFailed,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllFormedMap: return "IllFormedMap";
    case ErrorKind::TorsionInDegreeZero: return "TorsionInDegreeZero";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotAnEmbedding: return "NotAnEmbedding";
    case ErrorKind::InvalidRootDatum: return "InvalidRootDatum";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PicNonTrivial: return "PicNonTrivial";
    case ErrorKind::HNotConnected: return "HNotConnected";
    case ErrorKind::HKerCharNotConnected: return "HKerCharNotConnected";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
  }
  return "Unknown";
}

/// True for the hypothesis gates of the homotopy theorems.
inline bool is_gate_failure(ErrorKind kind) {
  return kind == ErrorKind::PicNonTrivial || kind == ErrorKind::HNotConnected ||
         kind == ErrorKind::HKerCharNotConnected;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace homcalc
