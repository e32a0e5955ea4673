#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rheo {

enum class ErrorCode {
  invalid_argument,
  validation,
  input_format,
  io,
  resource_limit,
};

std::string_view to_string(ErrorCode code);

// Every error carries a machine-readable code and the field or file path it
// concerns. what() renders as "<code> <path>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string path, std::string message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string path_;
  std::string message_;
};

[[noreturn]] void throw_invalid_argument(std::string path, std::string message);
[[noreturn]] void throw_validation(std::string path, std::string message);
[[noreturn]] void throw_input_format(std::string path, std::string message);
[[noreturn]] void throw_io(std::string path, std::string message);
[[noreturn]] void throw_resource_limit(std::string path, std::string message);

}  // namespace rheo
