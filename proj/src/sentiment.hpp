#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "normalize.hpp"

namespace tt {

struct LexiconEntry {
  int polarity = 0;  // -1, 0, +1
  std::string pos_tag;
  std::string target;
};

// Flat polarity lexicon. Line grammar:
//   head1,head2,....PoS=<tag>;TG=<target>;POL:N0=<-1|0|1>[;<extra fields>]
// Every head on a line shares the line's polarity. Heads containing spaces
// are multi-word expressions, matched later as contiguous token n-grams.
// Only the N0 polarity is read. Heads are lowercased on load.
struct SentimentLexicon {
  std::unordered_map<std::string, LexiconEntry> entries;
  size_t skipped_lines = 0;  // malformed lines, counted and dropped

  std::vector<std::string> multiword_heads() const;
};

// Blank lines and '#' comments are allowed and not counted as malformed.
// A later entry for the same head overwrites an earlier one.
SentimentLexicon parse_lexicon(const std::string& path);
SentimentLexicon parse_lexicon_text(const std::string& text);

// Exact lemma lookup, no stemming; nullopt when the lemma is unknown.
std::optional<int> classify_token(const SentimentLexicon& lexicon, const std::string& lemma);

struct PolarWord {
  std::string lemma;
  int polarity = 0;
  long long frequency = 0;
};

struct PolarWordRanking {
  std::vector<PolarWord> ranked;  // frequency desc, ties by ascending lemma
  std::string warning;            // set when no polar word occurs at all
};

// Corpus frequency of every polar (nonzero polarity) lexicon lemma, top n.
// Single-word lemmas count token occurrences; multi-word expressions count
// contiguous n-gram occurrences (overlaps included). Neutral entries are
// never ranked. Lemmas that never occur are omitted.
PolarWordRanking top_polar_words(const std::vector<TokenizedDoc>& docs,
                                 const SentimentLexicon& lexicon, int n);

void save_polar_ranking(const PolarWordRanking& ranking, const std::string& path,
                        uint64_t config_hash = 0);
PolarWordRanking load_polar_ranking(const std::string& path, uint64_t* config_hash = nullptr);

}  // namespace tt
