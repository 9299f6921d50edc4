#include "vocab.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "error.hpp"

namespace tt {

Vocabulary build_vocab(const std::vector<TokenizedDoc>& docs, int min_df, double max_df_ratio) {
  if (min_df < 1) fail(errc::config, "min_df must be >= 1");
  if (!(max_df_ratio > 0.0 && max_df_ratio <= 1.0)) {
    fail(errc::config, "max_df_ratio must be in (0, 1]");
  }
  // std::map keeps terms lexicographically sorted for id assignment
  std::map<std::string, int> df;
  std::unordered_set<std::string> in_doc;
  for (const auto& doc : docs) {
    in_doc.clear();
    for (const auto& token : doc.tokens) {
      if (in_doc.insert(token).second) ++df[token];
    }
  }
  const double max_df = max_df_ratio * static_cast<double>(docs.size());
  Vocabulary vocab;
  for (const auto& [term, freq] : df) {
    if (freq >= min_df && static_cast<double>(freq) <= max_df) {
      vocab.term_to_id.emplace(term, vocab.size());
      vocab.id_to_term.push_back(term);
      vocab.doc_freq.push_back(freq);
    }
  }
  if (vocab.id_to_term.empty()) {
    fail(errc::data, "vocabulary is empty after document-frequency filtering");
  }
  return vocab;
}

}  // namespace tt
