#include "hanfuse/phonetics.hpp"

#include <algorithm>
#include <fstream>

#include "hanfuse/text.hpp"

namespace hanfuse {

bool is_pinyin_initial(std::string_view s) {
  return std::find(kPinyinInitials.begin(), kPinyinInitials.end(), s) !=
         kPinyinInitials.end();
}

SyllableParts parse_syllable(std::string_view syllable) {
  if (syllable.size() < 2)
    fail(ErrorKind::InvalidSyllable,
         "syllable \"" + std::string(syllable) + "\" too short");
  char tone_ch = syllable.back();
  if (tone_ch < '0' || tone_ch > '4')
    fail(ErrorKind::InvalidSyllable,
         "syllable \"" + std::string(syllable) + "\" must end in a tone digit 0..4");
  std::string_view body = syllable.substr(0, syllable.size() - 1);
  for (char c : body) {
    if (c < 'a' || c > 'z')
      fail(ErrorKind::InvalidSyllable,
           "syllable \"" + std::string(syllable) + "\" has non-letter body");
  }

  SyllableParts parts;
  parts.tone = tone_ch - '0';
  // longest-prefix match over the initial inventory (zh/ch/sh before z/c/s)
  for (std::string_view initial : kPinyinInitials) {
    if (body.size() >= initial.size() && body.substr(0, initial.size()) == initial) {
      parts.initial = std::string(initial);
      body.remove_prefix(initial.size());
      break;
    }
  }
  if (body.empty())
    fail(ErrorKind::InvalidSyllable,
         "syllable \"" + std::string(syllable) + "\" has an empty final");
  parts.final = std::string(body);
  return parts;
}

SyllableParts parse_syllable(std::string_view syllable, const FinalTable& finals) {
  SyllableParts parts = parse_syllable(syllable);
  if (!finals.contains(parts.final))
    fail(ErrorKind::InvalidSyllable,
         "final \"" + parts.final + "\" of \"" + std::string(syllable) +
             "\" is not in the final table");
  return parts;
}

InitialTable::Entry InitialTable::get(const std::string& initial) const {
  if (initial.empty()) return Entry{"", 0.0};
  auto it = entries.find(initial);
  if (it == entries.end())
    fail(ErrorKind::UnknownInitial, "initial \"" + initial + "\" has no mapping");
  return it->second;
}

std::pair<std::string, double> map_initial(const std::string& initial,
                                           const InitialTable& table) {
  InitialTable::Entry e = table.get(initial);
  return {e.letters, e.weight};
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string loc(const std::string& path, int lineno) {
  return path + ":" + std::to_string(lineno);
}

}  // namespace

InitialTable load_initial_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  InitialTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 3)
      fail(ErrorKind::MalformedLine,
           loc(path, lineno) + ": expected initial<TAB>letters<TAB>weight");
    std::string initial(fields[0]);
    if (!is_pinyin_initial(initial))
      fail(ErrorKind::UnknownInitial,
           loc(path, lineno) + ": \"" + initial + "\" is not a pinyin initial");
    std::string letters(fields[1]);
    if (letters == "-") letters.clear();
    if (letters.size() > 2)
      fail(ErrorKind::MalformedLine,
           loc(path, lineno) + ": standard form has at most two letters");
    for (char c : letters)
      if (c < 'a' || c > 'z')
        fail(ErrorKind::MalformedLine,
             loc(path, lineno) + ": letters must be lowercase a..z");
    double weight;
    if (fields[2] == "0")
      weight = 0.0;
    else if (fields[2] == "1")
      weight = 1.0;
    else
      fail(ErrorKind::MalformedLine, loc(path, lineno) + ": weight must be 0 or 1");
    auto [it, inserted] = table.entries.emplace(initial, InitialTable::Entry{letters, weight});
    if (!inserted) {
      table.warnings.push_back(loc(path, lineno) + ": duplicate initial \"" + initial +
                               "\", keeping last");
      it->second = InitialTable::Entry{letters, weight};
    }
  }
  return table;
}

FinalTable load_final_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  FinalTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 3)
      fail(ErrorKind::MalformedLine,
           loc(path, lineno) + ": expected final<TAB>vowels<TAB>nasal");
    std::string final(fields[0]);
    if (final.empty())
      fail(ErrorKind::MalformedLine, loc(path, lineno) + ": empty final");
    for (char c : final)
      if (c < 'a' || c > 'z')
        fail(ErrorKind::MalformedLine,
             loc(path, lineno) + ": final must be lowercase letters");
    std::string vowels(fields[1]);
    if (vowels.empty())
      fail(ErrorKind::MalformedLine, loc(path, lineno) + ": vowel set must be non-empty");
    for (char c : vowels)
      if (std::string_view("aoeiuv").find(c) == std::string_view::npos)
        fail(ErrorKind::MalformedLine,
             loc(path, lineno) + ": vowel '" + std::string(1, c) +
                 "' outside a,o,e,i,u,v");
    Nasal nasal;
    if (fields[2] == "-")
      nasal = Nasal::None;
    else if (fields[2] == "n")
      nasal = Nasal::N;
    else if (fields[2] == "ng")
      nasal = Nasal::Ng;
    else
      fail(ErrorKind::MalformedLine, loc(path, lineno) + ": nasal must be -, n, or ng");
    auto [it, inserted] = table.entries.emplace(final, FinalTable::Entry{vowels, nasal});
    if (!inserted) {
      table.warnings.push_back(loc(path, lineno) + ": duplicate final \"" + final +
                               "\", keeping last");
      it->second = FinalTable::Entry{vowels, nasal};
    }
  }
  return table;
}

PhoneticSystem load_phonetic_system(const std::string& initials_path,
                                    const std::string& finals_path) {
  return PhoneticSystem{load_initial_table(initials_path), load_final_table(finals_path)};
}

PhoneticVector encode_syllable(std::string_view syllable, const PhoneticSystem& system) {
  SyllableParts parts = parse_syllable(syllable, system.finals);
  PhoneticVector vec;

  InitialTable::Entry initial = system.initials.get(parts.initial);
  for (char c : initial.letters) vec.values[c - 'a'] += 1.0;
  vec.values[PhoneticVector::kWeightDim] = initial.weight;

  const FinalTable::Entry& final = system.finals.entries.at(parts.final);
  static constexpr std::string_view kVowelOrder = "aoeiuv";
  for (char c : final.vowels)
    vec.values[PhoneticVector::kVowelOffset + kVowelOrder.find(c)] += 1.0;
  if (final.nasal == Nasal::N)
    vec.values[PhoneticVector::kNasalOffset] = 1.0;
  else if (final.nasal == Nasal::Ng)
    vec.values[PhoneticVector::kNasalOffset + 1] = 1.0;

  if (parts.tone >= 1) vec.values[PhoneticVector::kToneOffset + parts.tone - 1] = 1.0;
  return vec;
}

PhoneticVector encode_phonetic(char32_t ch, const PinyinTable& table,
                               const PhoneticSystem& system, Mode mode) {
  const std::string* syllable = table.canonical(ch);
  if (!syllable) {
    if (mode == Mode::Strict)
      fail(ErrorKind::UnknownCharacter, encode_utf8(ch) + " has no pinyin reading");
    return PhoneticVector{};  // lenient: zero vector
  }
  return encode_syllable(*syllable, system);
}

}  // namespace hanfuse
