#pragma once

#include <stdexcept>
#include <string>

namespace quadcomp {

/// Failure categories surfaced by the engine. The CLI maps them onto exit codes.
enum class ErrorKind {
  InvalidInput,          ///< malformed or unsupported input
  InputTooLarge,         ///< exceeds a configured desk-scale bound
  NotCovered,            ///< configuration deliberately left open (not an engine failure)
  CertificationFailure,  ///< an internal verification did not pass
  SearchExhausted,       ///< a bounded search ended without a result
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidInput, what);
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InputTooLarge: return "input-too-large";
    case ErrorKind::NotCovered: return "not-covered-by-paper";
    case ErrorKind::CertificationFailure: return "certification-failure";
    case ErrorKind::SearchExhausted: return "search-exhausted";
  }
  return "unknown";
}

}  // namespace quadcomp
