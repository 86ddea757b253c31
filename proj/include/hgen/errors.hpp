#pragma once

#include <stdexcept>
#include <string>

namespace hgen {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Invalid argument or malformed input data (bad vector dims, bad format name).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Configuration file or CLI usage problems. Mapped to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Provider transport, authentication, or content failures. Mapped to exit
// code 3. `retriable` distinguishes transport-level failures (may succeed on
// a later run) from content-level refusals.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& message, std::string request_digest,
                bool retriable)
      : Error(message),
        request_digest_(std::move(request_digest)),
        retriable_(retriable) {}

  const std::string& request_digest() const { return request_digest_; }
  bool retriable() const { return retriable_; }

 private:
  std::string request_digest_;
  bool retriable_;
};

// Parse failures for trees, configs, and CSV inputs.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Stage-level pipeline failures. Mapped to exit code 1.
class PipelineError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgen
