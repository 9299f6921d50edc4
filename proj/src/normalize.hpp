#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpus.hpp"

namespace tt {

struct TokenizedDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
  bool empty_after_normalize = false;

  bool operator==(const TokenizedDoc&) const = default;
};

struct NormalizeConfig {
  std::unordered_set<std::string> stopwords;           // union of the active sets
  std::unordered_map<std::string, std::string> lemmas;  // surface form -> lemma
  bool strip_urls = true;
  bool strip_media_tags = true;
  bool keep_hashtags = true;   // '#b17' -> 'b17'; false drops hashtag tokens
  bool keep_mentions = false;  // '@user' tokens are noise by default
  bool fold_diacritics = false;
  int min_token_len = 2;  // in code points

  // Loads one-word-per-line stopword files and a surface<TAB>lemma table.
  void load_stopword_file(const std::string& path);
  void load_lemma_file(const std::string& path);

  // Warnings for data problems that would break normalize invariants
  // (e.g. a lemma target that is itself a stopword).
  std::vector<std::string> validate() const;
};

// Splits on whitespace/punctuation and lowercases. '@'-mentions, '#'-tags
// and URLs survive as single tokens; everything else loses punctuation.
std::vector<std::string> tokenize(const std::string& text);

std::vector<std::string> strip_noise(const std::vector<std::string>& tokens,
                                     const NormalizeConfig& config);
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const NormalizeConfig& config);
std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const NormalizeConfig& config);

// tokenize -> strip_noise -> remove_stopwords -> lemmatize per document.
// Documents that end up empty are retained with the flag set.
std::vector<TokenizedDoc> normalize_pipeline(const Corpus& corpus, const NormalizeConfig& config);

bool is_url_token(const std::string& token);
bool is_media_token(const std::string& token);

void save_tokens(const std::vector<TokenizedDoc>& docs, const std::string& path);
std::vector<TokenizedDoc> load_tokens(const std::string& path);

}  // namespace tt
