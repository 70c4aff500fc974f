#include "hanfuse/glyph.hpp"

#include "hanfuse/text.hpp"

namespace hanfuse {

int glyph_alphabet_index(char letter) {
  if (letter < 'a' || letter > 'y')
    fail(ErrorKind::InvalidLetter,
         std::string("no character root for letter '") + letter + "'");
  return letter - 'a';
}

GlyphVector encode_glyph(char32_t ch, const WubiTable& table, Mode mode) {
  GlyphVector vec;
  const std::string* code = table.find(ch);
  if (!code) {
    if (mode == Mode::Strict)
      fail(ErrorKind::UnknownCharacter,
           encode_utf8(ch) + " has no Five-Strokes code");
    return vec;  // lenient: zero vector
  }
  for (char letter : *code) vec.values[glyph_alphabet_index(letter)] += 1.0;
  return vec;
}

}  // namespace hanfuse
