#pragma once

#include <stdexcept>
#include <string>

namespace entqa {

/// Broad failure class; the CLI maps each to a distinct exit code.
enum class ErrorCategory { usage, data, network };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  /// Stable machine-readable name, e.g. "ReplayMiss".
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

class UsageError : public Error {
 public:
  UsageError(std::string kind, const std::string& message)
      : Error(ErrorCategory::usage, std::move(kind), message) {}
};

class DataError : public Error {
 public:
  DataError(std::string kind, const std::string& message)
      : Error(ErrorCategory::data, std::move(kind), message) {}
};

class NetworkError : public Error {
 public:
  NetworkError(std::string kind, const std::string& message)
      : Error(ErrorCategory::network, std::move(kind), message) {}
};

}  // namespace entqa
