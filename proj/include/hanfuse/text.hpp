#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hanfuse {

// Decodes UTF-8 into Unicode scalars. Throws MalformedLine on invalid bytes.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(char32_t ch);
std::string encode_utf8(std::u32string_view text);

// CJK unified ideograph blocks (base, extension A/B.., compatibility).
bool is_cjk(char32_t ch);

// Splits on a single delimiter; keeps empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

}  // namespace hanfuse
