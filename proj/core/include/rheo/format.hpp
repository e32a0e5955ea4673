#pragma once

#include <string>
#include <string_view>

namespace rheo {

// Shortest decimal text that parses back to the same double. Independent of
// the process locale; negative zero is written as "0".
std::string format_real(double v);
void append_real(std::string& out, double v);

// Strict, locale-independent parse of a complete token.
bool parse_real(std::string_view text, double& out);

}  // namespace rheo
