#pragma once

#include <array>

#include "hanfuse/tables.hpp"

namespace hanfuse {

// Glyph embedding: sum of one-hot root letters over the character's
// Five-Strokes code. Index i stands for letter 'a'+i; 'z' carries no root,
// so the space is 25-dimensional.
struct GlyphVector {
  static constexpr int kDim = 25;
  std::array<double, kDim> values{};

  double l1() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

// 'a'..'y' -> 0..24; throws InvalidLetter for 'z' or anything else.
int glyph_alphabet_index(char letter);

GlyphVector encode_glyph(char32_t ch, const WubiTable& table, Mode mode);

}  // namespace hanfuse
