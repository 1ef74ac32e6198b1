#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace witnesskit {

// Domain-level failure carrying a stable machine-readable code. The CLI maps
// these to exit status 2 and reports the code in its JSON error object.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace witnesskit
