#pragma once

#include <stdexcept>
#include <string>

namespace nalip {

enum class ErrorKind {
  parse,              // malformed input text or JSON
  degenerate,         // degree zero, shared zero/pole, vanishing resultant
  factored_required,  // operation needs zeros/poles that the map does not carry
  domain,             // argument outside an operation's domain
  internal            // a structural invariant failed; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nalip
