#include "hanfuse/tables.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hanfuse/phonetics.hpp"
#include "hanfuse/text.hpp"

namespace hanfuse {

namespace {

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool skip_line(const std::string& line) {
  return line.empty() || line[0] == '#';
}

std::string loc(const std::string& path, int lineno) {
  return path + ":" + std::to_string(lineno);
}

// A table key must be exactly one CJK scalar.
char32_t parse_key_char(std::string_view field, const std::string& where) {
  std::u32string decoded = decode_utf8(field);
  if (decoded.size() != 1)
    fail(ErrorKind::NotSingleChar,
         where + ": key must be a single character, got \"" + std::string(field) + "\"");
  if (!is_cjk(decoded[0]))
    fail(ErrorKind::NotSingleChar,
         where + ": key is not a CJK ideograph: \"" + std::string(field) + "\"");
  return decoded[0];
}

double parse_double(std::string_view token, const std::string& where) {
  std::string buf(token);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str() || *end != '\0')
    fail(ErrorKind::ParseFloatError, where + ": bad float \"" + buf + "\"");
  return value;
}

}  // namespace

WubiTable load_wubi_table(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  WubiTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (skip_line(line)) continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2)
      fail(ErrorKind::MalformedLine,
           loc(path, lineno) + ": expected 2 tab-separated fields, got " +
               std::to_string(fields.size()));
    char32_t ch = parse_key_char(fields[0], loc(path, lineno));
    std::string code(fields[1]);
    if (code.empty() || code.size() > 4)
      fail(ErrorKind::InvalidCode,
           loc(path, lineno) + ": code length must be 1..4, got \"" + code + "\"");
    for (char c : code) {
      if (c < 'a' || c > 'y')
        fail(ErrorKind::InvalidCode,
             loc(path, lineno) + ": code letter '" + std::string(1, c) +
                 "' outside a..y in \"" + code + "\"");
    }
    auto [it, inserted] = table.entries.emplace(ch, code);
    if (!inserted) {
      table.warnings.push_back(loc(path, lineno) + ": duplicate entry for " +
                               encode_utf8(ch) + ", keeping last code \"" + code + "\"");
      it->second = code;
    }
  }
  return table;
}

PinyinTable load_pinyin_table(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  PinyinTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (skip_line(line)) continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2)
      fail(ErrorKind::MalformedLine,
           loc(path, lineno) + ": expected 2 tab-separated fields, got " +
               std::to_string(fields.size()));
    char32_t ch = parse_key_char(fields[0], loc(path, lineno));
    std::vector<std::string> syllables;
    for (std::string_view part : split_fields(fields[1], ',')) {
      std::string syllable(part);
      // validates the [a-zv]+[0-4] pattern and the initial/final split;
      // final inventory membership is checked by the phonetic encoder
      try {
        parse_syllable(syllable);
      } catch (const Error& e) {
        fail(ErrorKind::InvalidSyllable, loc(path, lineno) + ": " + e.what());
      }
      syllables.push_back(std::move(syllable));
    }
    if (syllables.empty())
      fail(ErrorKind::MalformedLine, loc(path, lineno) + ": no syllables");
    auto [it, inserted] = table.entries.emplace(ch, syllables);
    if (!inserted) {
      table.warnings.push_back(loc(path, lineno) + ": duplicate entry for " +
                               encode_utf8(ch) + ", keeping last reading");
      it->second = std::move(syllables);
    }
  }
  return table;
}

SemanticTable load_semantic_table(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  SemanticTable table;
  std::string line;
  int lineno = 0;

  // header: <count> <dimension>
  long declared_count = -1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (skip_line(line)) continue;
    std::istringstream header(line);
    long count = 0, dim = 0;
    if (!(header >> count >> dim) || !(header >> std::ws).eof() || count < 0 || dim <= 0)
      fail(ErrorKind::BadHeader,
           loc(path, lineno) + ": header must be \"<count> <dimension>\", got \"" + line + "\"");
    declared_count = count;
    table.dimension = static_cast<int>(dim);
    break;
  }
  if (declared_count < 0) fail(ErrorKind::BadHeader, path + ": missing header line");

  long body_rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (skip_line(line)) continue;
    ++body_rows;
    std::istringstream row(line);
    std::string key;
    row >> key;
    // pre-trained vocabularies carry non-character tokens; skip them
    std::u32string decoded = decode_utf8(key);
    bool usable_key = decoded.size() == 1 && is_cjk(decoded[0]);
    if (!usable_key)
      table.warnings.push_back(loc(path, lineno) + ": skipping non-character key \"" + key + "\"");
    std::vector<double> values;
    values.reserve(table.dimension);
    std::string token;
    while (row >> token) values.push_back(parse_double(token, loc(path, lineno)));
    if (static_cast<int>(values.size()) != table.dimension)
      fail(ErrorKind::DimensionMismatch,
           loc(path, lineno) + ": row has " + std::to_string(values.size()) +
               " values, header declares " + std::to_string(table.dimension));
    if (!usable_key) continue;
    char32_t ch = decoded[0];
    auto it = table.vectors.find(ch);
    if (it != table.vectors.end()) {
      table.warnings.push_back(loc(path, lineno) + ": duplicate vector for " +
                               encode_utf8(ch) + ", keeping last");
      it->second = std::move(values);
    } else {
      table.vectors.emplace(ch, std::move(values));
    }
  }
  if (declared_count != body_rows)
    table.warnings.push_back(path + ": header declares " + std::to_string(declared_count) +
                             " rows, file has " + std::to_string(body_rows));
  return table;
}

namespace {

std::ofstream create_or_fail(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  return out;
}

// shortest representation that parses back to the same double
std::string format_value(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

void save_wubi_table(const WubiTable& table, const std::string& path) {
  std::ofstream out = create_or_fail(path);
  for (const auto& [ch, code] : table.entries)
    out << encode_utf8(ch) << '\t' << code << '\n';
}

void save_pinyin_table(const PinyinTable& table, const std::string& path) {
  std::ofstream out = create_or_fail(path);
  for (const auto& [ch, syllables] : table.entries) {
    out << encode_utf8(ch) << '\t';
    for (size_t i = 0; i < syllables.size(); ++i) {
      if (i) out << ',';
      out << syllables[i];
    }
    out << '\n';
  }
}

void save_semantic_table(const SemanticTable& table, const std::string& path) {
  std::ofstream out = create_or_fail(path);
  out << table.vectors.size() << ' ' << table.dimension << '\n';
  for (const auto& [ch, values] : table.vectors) {
    out << encode_utf8(ch);
    for (double v : values) out << ' ' << format_value(v);
    out << '\n';
  }
}

CharacterInventory build_inventory(const WubiTable& wubi,
                                   const PinyinTable& pinyin,
                                   const SemanticTable& semantic) {
  CharacterInventory inv;
  // std::map iteration is already code-point ascending
  for (const auto& [ch, code] : wubi.entries) {
    if (!pinyin.contains(ch)) continue;
    CharacterInventory::Coverage cov;
    cov.has_wubi = true;
    cov.has_pinyin = true;
    cov.has_semantic = semantic.contains(ch);
    inv.characters.push_back(ch);
    inv.coverage.emplace(ch, cov);
  }
  if (inv.characters.empty())
    fail(ErrorKind::EmptyIntersection,
         "no character appears in both the wubi and pinyin tables");
  return inv;
}

}  // namespace hanfuse
