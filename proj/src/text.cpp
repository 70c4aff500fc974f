#include "hanfuse/text.hpp"

#include "hanfuse/error.hpp"

namespace hanfuse {

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail(ErrorKind::MalformedLine, "invalid UTF-8 lead byte");
    }
    if (i + len > text.size())
      fail(ErrorKind::MalformedLine, "truncated UTF-8 sequence");
    for (size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80)
        fail(ErrorKind::MalformedLine, "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    // reject overlong encodings and surrogates
    static const char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (len > 1 && cp < kMin[len])
      fail(ErrorKind::MalformedLine, "overlong UTF-8 encoding");
    if (cp >= 0xD800 && cp <= 0xDFFF)
      fail(ErrorKind::MalformedLine, "UTF-8 encoded surrogate");
    if (cp > 0x10FFFF)
      fail(ErrorKind::MalformedLine, "code point out of range");
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t ch) {
  std::string out;
  if (ch < 0x80) {
    out.push_back(static_cast<char>(ch));
  } else if (ch < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else if (ch < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t ch : text) out += encode_utf8(ch);
  return out;
}

bool is_cjk(char32_t ch) {
  return (ch >= 0x4E00 && ch <= 0x9FFF) ||    // unified ideographs
         (ch >= 0x3400 && ch <= 0x4DBF) ||    // extension A
         (ch >= 0x20000 && ch <= 0x2EBEF) ||  // extensions B..F
         (ch >= 0xF900 && ch <= 0xFAFF);      // compatibility ideographs
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace hanfuse
