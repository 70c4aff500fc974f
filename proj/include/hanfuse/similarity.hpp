#pragma once

#include <string>
#include <vector>

#include "hanfuse/glyph.hpp"
#include "hanfuse/matrix.hpp"
#include "hanfuse/parallel.hpp"
#include "hanfuse/phonetics.hpp"
#include "hanfuse/tables.hpp"

namespace hanfuse {

enum class FeatureSpace { Semantic, Glyph, Phonetic };

const char* feature_space_name(FeatureSpace space);
FeatureSpace parse_feature_space(const std::string& name);

// Bundles the loaded tables and encodes any character in any space.
struct Featurizer {
  const WubiTable* wubi = nullptr;
  const PinyinTable* pinyin = nullptr;
  const PhoneticSystem* phonetics = nullptr;
  const SemanticTable* semantic = nullptr;

  int dim(FeatureSpace space) const;
  bool encodable(char32_t ch, FeatureSpace space) const;
  // Strict mode throws UnknownCharacter; lenient mode yields a zero vector.
  std::vector<double> encode(char32_t ch, FeatureSpace space, Mode mode) const;
};

struct Neighbor {
  char32_t ch;
  double distance;
};

struct NeighborList {
  char32_t query = 0;
  FeatureSpace space = FeatureSpace::Glyph;
  std::vector<Neighbor> neighbors;  // distance ascending, code point tie-break
};

// L2 distance between two characters' embeddings in one space (strict).
double distance(char32_t c1, char32_t c2, FeatureSpace space, const Featurizer& feat);

// Precomputed embedding rows for the inventory characters encodable in one
// space; the unit the scan kernels operate on.
struct SpaceIndex {
  FeatureSpace space = FeatureSpace::Glyph;
  std::vector<char32_t> chars;  // code-point ascending
  Matrix embeddings;            // row i = embedding of chars[i]

  int find(char32_t ch) const;  // -1 if absent
};

SpaceIndex build_space_index(FeatureSpace space, const CharacterInventory& inventory,
                             const Featurizer& feat);

// out[i] = L2 distance from query to row i. Rows are independent, so the
// parallel path is bit-identical to the serial reference.
void distance_scan(const SpaceIndex& index, const double* query, double* out,
                   Exec exec);

// k nearest neighbors by exhaustive scan; ties broken by ascending code
// point; the query character itself is excluded.
NeighborList knn(char32_t query, int k, const SpaceIndex& index,
                 Exec exec = Exec::Serial);
NeighborList knn(char32_t query, FeatureSpace space, int k,
                 const CharacterInventory& inventory, const Featurizer& feat,
                 Exec exec = Exec::Serial);

}  // namespace hanfuse
