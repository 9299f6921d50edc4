#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "normalize.hpp"

namespace tt {

// Term <-> dense id bijection. Ids are assigned in lexicographic term order
// so every downstream tie-break and iteration is reproducible.
struct Vocabulary {
  std::unordered_map<std::string, int> term_to_id;
  std::vector<std::string> id_to_term;
  std::vector<int> doc_freq;

  int size() const { return static_cast<int>(id_to_term.size()); }

  int id_of(const std::string& term) const {
    auto it = term_to_id.find(term);
    return it == term_to_id.end() ? -1 : it->second;
  }

  bool operator==(const Vocabulary& other) const {
    return id_to_term == other.id_to_term && doc_freq == other.doc_freq;
  }
};

// Admits terms whose document frequency lies in [min_df, max_df_ratio * D].
Vocabulary build_vocab(const std::vector<TokenizedDoc>& docs, int min_df, double max_df_ratio);

}  // namespace tt
