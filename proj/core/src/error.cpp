#include "rheo/error.hpp"

namespace rheo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::validation: return "validation_error";
    case ErrorCode::input_format: return "input_format_error";
    case ErrorCode::io: return "io_error";
    case ErrorCode::resource_limit: return "resource_limit";
  }
  return "unknown";
}

namespace {
std::string render(ErrorCode code, const std::string& path, const std::string& message) {
  std::string out(to_string(code));
  if (!path.empty()) {
    out += ' ';
    out += path;
  }
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, std::string path, std::string message)
    : std::runtime_error(render(code, path, message)),
      code_(code),
      path_(std::move(path)),
      message_(std::move(message)) {}

void throw_invalid_argument(std::string path, std::string message) {
  throw Error(ErrorCode::invalid_argument, std::move(path), std::move(message));
}
void throw_validation(std::string path, std::string message) {
  throw Error(ErrorCode::validation, std::move(path), std::move(message));
}
void throw_input_format(std::string path, std::string message) {
  throw Error(ErrorCode::input_format, std::move(path), std::move(message));
}
void throw_io(std::string path, std::string message) {
  throw Error(ErrorCode::io, std::move(path), std::move(message));
}
void throw_resource_limit(std::string path, std::string message) {
  throw Error(ErrorCode::resource_limit, std::move(path), std::move(message));
}

}  // namespace rheo
