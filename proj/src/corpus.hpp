#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tt {

// One post. `hashtags` holds lowercase tags without the '#' sigil; when the
// input record carries no hashtag field they are extracted from the text.
struct Document {
  std::string id;
  std::string author_id;
  std::string created_at;  // ISO-8601, possibly empty
  std::string text;
  std::vector<std::string> hashtags;
  std::string lang_hint;  // 2-letter code or empty

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::map<std::string, std::string> source_meta;

  size_t size() const { return documents.size(); }
};

// Field-name mapping for line-delimited JSON corpora. Only `id` and `text`
// are required in the input; the rest default to the canonical names.
struct CorpusSchema {
  std::string id = "id";
  std::string text = "text";
  std::string author = "author_id";
  std::string created = "created_at";
  std::string hashtags = "hashtags";
  std::string lang = "lang_hint";
};

struct LoadResult {
  Corpus corpus;
  size_t skipped_lines = 0;
};

LoadResult load_corpus(const std::string& path, const CorpusSchema& schema = {});
void save_corpus(const Corpus& corpus, const std::string& path);

// Retains exactly the documents whose hashtags intersect `tags`; order is
// preserved. Tags must be lowercase and the set non-empty.
Corpus filter_by_hashtags(const Corpus& corpus, const std::set<std::string>& tags);

struct CorpusStats {
  size_t documents = 0;
  size_t distinct_authors = 0;
  std::map<std::string, size_t> per_day;      // YYYY-MM-DD -> count ("unknown" when undated)
  std::map<std::string, size_t> per_hashtag;  // tag -> count
};

CorpusStats corpus_stats(const Corpus& corpus);

// Lowercases, strips a leading '#', rejects tags containing whitespace or
// further '#' characters. Returns nullopt for unusable tags.
std::optional<std::string> normalize_hashtag(const std::string& raw);

std::vector<std::string> extract_hashtags_from_text(const std::string& text);

}  // namespace tt
