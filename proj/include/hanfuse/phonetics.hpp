#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "hanfuse/tables.hpp"

namespace hanfuse {

// The canonical pinyin initials. Two-letter initials come first so that
// longest-prefix matching resolves "zh" before "z".
inline constexpr std::array<std::string_view, 23> kPinyinInitials = {
    "zh", "ch", "sh", "b", "p", "m", "f", "d", "t", "n", "l", "g",
    "k",  "h",  "j",  "q", "x", "r", "z", "c", "s", "y", "w"};

bool is_pinyin_initial(std::string_view s);

struct SyllableParts {
  std::string initial;  // "" for zero-initial syllables
  std::string final;
  int tone = 0;  // 0 = neutral
};

enum class Nasal { None, N, Ng };

// Initial -> standard-form base letters (0..2 of a..z) plus a binary
// phonetic weight. Pairs like ts/ts' share letters and differ in weight.
struct InitialTable {
  struct Entry {
    std::string letters;
    double weight = 0.0;
  };
  std::map<std::string, Entry> entries;
  std::vector<std::string> warnings;

  // "" maps to no letters, weight 0; anything else must be in the table.
  Entry get(const std::string& initial) const;
};

// Final -> single-vowel multiset (letters over a,o,e,i,u,v) plus an
// optional nasal coda.
struct FinalTable {
  struct Entry {
    std::string vowels;
    Nasal nasal = Nasal::None;
  };
  std::map<std::string, Entry> entries;
  std::vector<std::string> warnings;

  bool contains(const std::string& final) const { return entries.count(final) != 0; }
};

struct PhoneticSystem {
  InitialTable initials;
  FinalTable finals;
};

InitialTable load_initial_table(const std::string& path);
FinalTable load_final_table(const std::string& path);
PhoneticSystem load_phonetic_system(const std::string& initials_path,
                                    const std::string& finals_path);

// Layout:
//   dims  0..25  initial letter multi-hot over a..z
//   dim   26     phonetic weight
//   dims 27..32  vowel multi-hot over (a, o, e, i, u, u-umlaut)
//   dims 33..34  nasal one-hot (n, ng)
//   dims 35..38  tone one-hot (tones 1..4; neutral tone is all-zero)
struct PhoneticVector {
  static constexpr int kDim = 39;
  static constexpr int kWeightDim = 26;
  static constexpr int kVowelOffset = 27;
  static constexpr int kNasalOffset = 33;
  static constexpr int kToneOffset = 35;

  std::array<double, kDim> values{};
};

// Splits a syllable into (initial, final, tone). The one-argument form
// validates the [a-zv]+[0-4] shape and the initial/final split only; the
// two-argument form additionally requires the final to be mapped.
SyllableParts parse_syllable(std::string_view syllable);
SyllableParts parse_syllable(std::string_view syllable, const FinalTable& finals);

// Initial -> (standard-form letters, weight); "" -> ("", 0).
std::pair<std::string, double> map_initial(const std::string& initial,
                                           const InitialTable& table);

PhoneticVector encode_syllable(std::string_view syllable, const PhoneticSystem& system);
PhoneticVector encode_phonetic(char32_t ch, const PinyinTable& table,
                               const PhoneticSystem& system, Mode mode);

}  // namespace hanfuse
