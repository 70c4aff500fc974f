#include "hanfuse/similarity.hpp"

#include <algorithm>
#include <numeric>

#include "hanfuse/text.hpp"

namespace hanfuse {

const char* feature_space_name(FeatureSpace space) {
  switch (space) {
    case FeatureSpace::Semantic: return "semantic";
    case FeatureSpace::Glyph: return "glyph";
    case FeatureSpace::Phonetic: return "phonetic";
  }
  return "?";
}

FeatureSpace parse_feature_space(const std::string& name) {
  if (name == "semantic") return FeatureSpace::Semantic;
  if (name == "glyph") return FeatureSpace::Glyph;
  if (name == "phonetic") return FeatureSpace::Phonetic;
  fail(ErrorKind::MalformedLine, "unknown feature space \"" + name + "\"");
}

int Featurizer::dim(FeatureSpace space) const {
  switch (space) {
    case FeatureSpace::Semantic: return semantic ? semantic->dimension : 0;
    case FeatureSpace::Glyph: return GlyphVector::kDim;
    case FeatureSpace::Phonetic: return PhoneticVector::kDim;
  }
  return 0;
}

bool Featurizer::encodable(char32_t ch, FeatureSpace space) const {
  switch (space) {
    case FeatureSpace::Semantic: return semantic && semantic->contains(ch);
    case FeatureSpace::Glyph: return wubi && wubi->contains(ch);
    case FeatureSpace::Phonetic: return pinyin && pinyin->contains(ch);
  }
  return false;
}

std::vector<double> Featurizer::encode(char32_t ch, FeatureSpace space, Mode mode) const {
  switch (space) {
    case FeatureSpace::Semantic: {
      const std::vector<double>* vec = semantic ? semantic->find(ch) : nullptr;
      if (vec) return *vec;
      if (mode == Mode::Strict)
        fail(ErrorKind::UnknownCharacter, encode_utf8(ch) + " has no semantic vector");
      return std::vector<double>(dim(space), 0.0);
    }
    case FeatureSpace::Glyph: {
      GlyphVector g = encode_glyph(ch, *wubi, mode);
      return std::vector<double>(g.values.begin(), g.values.end());
    }
    case FeatureSpace::Phonetic: {
      PhoneticVector p = encode_phonetic(ch, *pinyin, *phonetics, mode);
      return std::vector<double>(p.values.begin(), p.values.end());
    }
  }
  return {};
}

double distance(char32_t c1, char32_t c2, FeatureSpace space, const Featurizer& feat) {
  std::vector<double> a = feat.encode(c1, space, Mode::Strict);
  std::vector<double> b = feat.encode(c2, space, Mode::Strict);
  return l2_distance(a.data(), b.data(), static_cast<int>(a.size()));
}

int SpaceIndex::find(char32_t ch) const {
  auto it = std::lower_bound(chars.begin(), chars.end(), ch);
  if (it == chars.end() || *it != ch) return -1;
  return static_cast<int>(it - chars.begin());
}

SpaceIndex build_space_index(FeatureSpace space, const CharacterInventory& inventory,
                             const Featurizer& feat) {
  SpaceIndex index;
  index.space = space;
  for (char32_t ch : inventory.characters)
    if (feat.encodable(ch, space)) index.chars.push_back(ch);
  index.embeddings = Matrix(static_cast<int>(index.chars.size()), feat.dim(space));
  for (int i = 0; i < index.embeddings.rows; ++i) {
    std::vector<double> row = feat.encode(index.chars[i], space, Mode::Strict);
    std::copy(row.begin(), row.end(), index.embeddings.row(i));
  }
  return index;
}

void distance_scan(const SpaceIndex& index, const double* query, double* out, Exec exec) {
  const Matrix& m = index.embeddings;
  parallel_for(m.rows, exec,
               [&](int i) { out[i] = l2_distance(m.row(i), query, m.cols); });
}

NeighborList knn(char32_t query, int k, const SpaceIndex& index, Exec exec) {
  NeighborList result;
  result.query = query;
  result.space = index.space;
  if (k < 0) fail(ErrorKind::KTooLarge, "k must be non-negative");

  int qi = index.find(query);
  std::vector<double> query_vec;
  if (qi < 0) {
    fail(ErrorKind::UnknownCharacter,
         encode_utf8(query) + " is not encodable in the " +
             feature_space_name(index.space) + " space");
  }
  const double* q = index.embeddings.row(qi);

  int candidates = index.embeddings.rows - 1;
  if (k > candidates)
    fail(ErrorKind::KTooLarge, "k=" + std::to_string(k) + " exceeds the " +
                                   std::to_string(candidates) + " available candidates");
  if (k == 0) return result;

  std::vector<double> dist(index.embeddings.rows);
  distance_scan(index, q, dist.data(), exec);

  // chars[] is code-point ascending, so a stable sort on distance alone
  // realizes the (distance, code point) tie-break.
  std::vector<int> order(index.embeddings.rows);
  std::iota(order.begin(), order.end(), 0);
  order.erase(order.begin() + qi);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });

  result.neighbors.reserve(k);
  for (int i = 0; i < k; ++i)
    result.neighbors.push_back(Neighbor{index.chars[order[i]], dist[order[i]]});
  return result;
}

NeighborList knn(char32_t query, FeatureSpace space, int k,
                 const CharacterInventory& inventory, const Featurizer& feat,
                 Exec exec) {
  SpaceIndex index = build_space_index(space, inventory, feat);
  return knn(query, k, index, exec);
}

}  // namespace hanfuse
