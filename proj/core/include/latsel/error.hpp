#pragma once

#include <stdexcept>
#include <string>

namespace latsel {

// Broad failure classes; the CLI maps Config/Input to exit code 2 and
// everything else to exit code 1.
enum class ErrorKind {
  Config,    // invalid configuration value
  Input,     // malformed or inconsistent input data
  Internal,  // violated internal assumption
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::Config, msg); }
inline Error input_error(const std::string& msg) { return Error(ErrorKind::Input, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::Internal, msg); }

}  // namespace latsel
