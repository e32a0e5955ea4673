#include "rheo/format.hpp"

#include <charconv>
#include <cmath>

namespace rheo {

void append_real(std::string& out, double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::string format_real(double v) {
  std::string out;
  append_real(out, v);
  return out;
}

bool parse_real(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last && std::isfinite(out);
}

}  // namespace rheo
