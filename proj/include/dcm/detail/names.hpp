#pragma once

#include <cctype>
#include <string>
#include <string_view>

namespace dcm::detail {

// Lower-case with '_', '-' and ' ' removed, so "LeCun_Tanh" == "lecuntanh".
inline std::string normalize_name(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace dcm::detail
