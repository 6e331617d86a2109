#pragma once

#include <stdexcept>
#include <string>

namespace collabrec {

/// Failure category. Maps onto HTTP status codes in the service and exit
/// codes in the command line tool.
enum class ErrorKind {
  validation,    // 400 / exit 1
  unauthorized,  // 401
  forbidden,     // 403
  not_found,     // 404
  conflict,      // 409
  runtime,       // 500 / exit 2
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return {ErrorKind::validation, what}; }
inline Error runtime_error(const std::string& what) { return {ErrorKind::runtime, what}; }

}  // namespace collabrec
