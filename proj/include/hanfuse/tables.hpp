#pragma once

#include <map>
#include <string>
#include <vector>

#include "hanfuse/error.hpp"

namespace hanfuse {

// Five-Strokes code table: character -> 1..4 letters over a..y ('z' has no
// character root assigned to it).
struct WubiTable {
  std::map<char32_t, std::string> entries;
  std::vector<std::string> warnings;

  bool contains(char32_t ch) const { return entries.count(ch) != 0; }
  const std::string* find(char32_t ch) const {
    auto it = entries.find(ch);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// Pinyin table: character -> syllables like "cao3" ('v' stands for the
// u-umlaut vowel, trailing digit 0..4 is the tone, 0 = neutral). For
// polyphones the first listed syllable is the canonical reading.
struct PinyinTable {
  std::map<char32_t, std::vector<std::string>> entries;
  std::vector<std::string> warnings;

  bool contains(char32_t ch) const { return entries.count(ch) != 0; }
  const std::string* canonical(char32_t ch) const {
    auto it = entries.find(ch);
    return it == entries.end() ? nullptr : &it->second.front();
  }
};

// Static per-character semantic vectors (word2vec text format).
struct SemanticTable {
  int dimension = 0;
  std::map<char32_t, std::vector<double>> vectors;
  std::vector<std::string> warnings;

  bool contains(char32_t ch) const { return vectors.count(ch) != 0; }
  const std::vector<double>* find(char32_t ch) const {
    auto it = vectors.find(ch);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

struct CharacterInventory {
  struct Coverage {
    bool has_wubi = false;
    bool has_pinyin = false;
    bool has_semantic = false;
  };

  // characters in both the wubi and pinyin tables, code-point ascending
  std::vector<char32_t> characters;
  std::map<char32_t, Coverage> coverage;

  size_t size() const { return characters.size(); }
  bool contains(char32_t ch) const { return coverage.count(ch) != 0; }
};

WubiTable load_wubi_table(const std::string& path);
PinyinTable load_pinyin_table(const std::string& path);
SemanticTable load_semantic_table(const std::string& path);

// Round-trip serializers (same formats the loaders accept).
void save_wubi_table(const WubiTable& table, const std::string& path);
void save_pinyin_table(const PinyinTable& table, const std::string& path);
void save_semantic_table(const SemanticTable& table, const std::string& path);

CharacterInventory build_inventory(const WubiTable& wubi,
                                   const PinyinTable& pinyin,
                                   const SemanticTable& semantic);

}  // namespace hanfuse
