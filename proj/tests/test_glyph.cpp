#include <cmath>

#include "doctest.h"
#include "hanfuse/glyph.hpp"
#include "hanfuse/similarity.hpp"
#include "oracles.hpp"

using namespace hanfuse;

TEST_CASE("alphabet index covers a..y and rejects z") {
  CHECK(glyph_alphabet_index('a') == 0);
  CHECK(glyph_alphabet_index('y') == 24);
  CHECK_THROWS_AS(glyph_alphabet_index('z'), Error);
  CHECK_THROWS_AS(glyph_alphabet_index('A'), Error);
  CHECK_THROWS_AS(glyph_alphabet_index('0'), Error);
}

TEST_CASE("glyph vector sums one-hot roots with multiplicity") {
  WubiTable table;
  table.entries[U'某'] = "aa";
  table.entries[U'桥'] = "abcd";

  GlyphVector two_a = encode_glyph(U'某', table, Mode::Strict);
  CHECK(two_a.values[0] == 2.0);
  CHECK(two_a.l1() == 2.0);

  GlyphVector four = encode_glyph(U'桥', table, Mode::Strict);
  for (int i = 0; i < 4; ++i) CHECK(four.values[i] == 1.0);
  CHECK(four.l1() == 4.0);

  CHECK_THROWS_AS(encode_glyph(U'无', table, Mode::Strict), Error);
  GlyphVector zero = encode_glyph(U'无', table, Mode::Lenient);
  CHECK(zero.l1() == 0.0);
}

TEST_CASE("anagram codes collide, equal codes coincide") {
  WubiTable table;
  table.entries[U'一'] = "abdc";
  table.entries[U'二'] = "dcab";
  table.entries[U'三'] = "abdc";
  GlyphVector a = encode_glyph(U'一', table, Mode::Strict);
  GlyphVector b = encode_glyph(U'二', table, Mode::Strict);
  GlyphVector c = encode_glyph(U'三', table, Mode::Strict);
  CHECK(a.values == b.values);
  CHECK(a.values == c.values);
}

TEST_CASE("bundled table: L1 equals code length, distances bounded by sqrt(32)") {
  const oracles::Fixture& fx = oracles::fixture();
  for (const auto& [ch, code] : fx.wubi.entries) {
    GlyphVector vec = encode_glyph(ch, fx.wubi, Mode::Strict);
    CHECK(vec.l1() == static_cast<double>(code.size()));
  }
  // exhaustive pair scan over the bundled inventory
  const double bound = std::sqrt(32.0) + 1e-12;
  std::vector<GlyphVector> all;
  for (char32_t ch : fx.inventory.characters)
    all.push_back(encode_glyph(ch, fx.wubi, Mode::Strict));
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      double d = l2_distance(all[i].values.data(), all[j].values.data(),
                             GlyphVector::kDim);
      CHECK(d <= bound);
    }
}

// Frozen from the curated codes: 浦 igey vs 傅 wgef share {g,e}, so the
// squared distance is 4; 桥 stdj is fully disjoint from igey, squared 8.
TEST_CASE("glyph similarity separates shared-component characters") {
  const oracles::Fixture& fx = oracles::fixture();
  double pu_fu = distance(U'浦', U'傅', FeatureSpace::Glyph, fx.feat);
  double pu_qiao = distance(U'浦', U'桥', FeatureSpace::Glyph, fx.feat);
  CHECK(pu_fu == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pu_qiao == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(pu_fu < pu_qiao);
}
