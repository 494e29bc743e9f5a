#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace galt {

// Failure classes reported by the command-line front-end as distinct exit codes.
enum class ErrorClass { Config, Io, DegenerateData, Numerical };

std::string_view to_string(ErrorClass c) noexcept;

// All library failures are thrown as galt::Error. `name()` is the stable
// machine-readable identifier (e.g. "AllRowsEmpty", "NotPSD").
class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, std::string name, const std::string& message)
      : std::runtime_error(message), class_(error_class), name_(std::move(name)) {}

  ErrorClass error_class() const noexcept { return class_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorClass class_;
  std::string name_;
};

inline std::string_view to_string(ErrorClass c) noexcept {
  switch (c) {
    case ErrorClass::Config: return "config";
    case ErrorClass::Io: return "io";
    case ErrorClass::DegenerateData: return "degenerate-data";
    case ErrorClass::Numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace galt
