#include "corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

namespace tt {

using nlohmann::json;

std::optional<std::string> normalize_hashtag(const std::string& raw) {
  std::string tag = utf8_lower(trim(raw));
  if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
  if (tag.empty()) return std::nullopt;
  for (char c : tag) {
    if (c == '#' || static_cast<unsigned char>(c) <= ' ') return std::nullopt;
  }
  return tag;
}

std::vector<std::string> extract_hashtags_from_text(const std::string& text) {
  std::vector<std::string> tags;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    if (word.size() < 2 || word.front() != '#') continue;
    // trim trailing punctuation like "#B17!" before normalizing
    size_t end = word.size();
    while (end > 1 && !std::isalnum(static_cast<unsigned char>(word[end - 1])) &&
           static_cast<unsigned char>(word[end - 1]) < 0x80) {
      --end;
    }
    if (auto tag = normalize_hashtag(word.substr(0, end))) {
      tags.push_back(*tag);
    }
  }
  return tags;
}

namespace {

bool looks_like_date(const std::string& s) {
  if (s.size() < 10) return false;
  for (size_t i = 0; i < 10; ++i) {
    if (i == 4 || i == 7) {
      if (s[i] != '-') return false;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

// Parses one JSONL record into a Document. Returns false for lines that
// cannot become a valid document (those are skipped, not fatal).
bool parse_line(const std::string& line, const CorpusSchema& schema, Document& doc) {
  json rec = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!rec.is_object()) return false;

  if (!rec.contains(schema.id) || !rec.contains(schema.text)) return false;
  const auto& id = rec[schema.id];
  const auto& text = rec[schema.text];
  if (!text.is_string()) return false;

  if (id.is_string()) {
    doc.id = id.get<std::string>();
  } else if (id.is_number_integer()) {
    doc.id = std::to_string(id.get<long long>());
  } else {
    return false;
  }
  if (doc.id.empty()) return false;

  doc.text = text.get<std::string>();
  if (trim(doc.text).empty()) return false;

  if (rec.contains(schema.author) && rec[schema.author].is_string()) {
    doc.author_id = rec[schema.author].get<std::string>();
  }
  if (rec.contains(schema.created) && rec[schema.created].is_string()) {
    std::string created = rec[schema.created].get<std::string>();
    if (!created.empty() && !looks_like_date(created)) return false;
    doc.created_at = std::move(created);
  }
  if (rec.contains(schema.lang) && rec[schema.lang].is_string()) {
    doc.lang_hint = rec[schema.lang].get<std::string>();
  }

  if (rec.contains(schema.hashtags) && rec[schema.hashtags].is_array()) {
    for (const auto& item : rec[schema.hashtags]) {
      if (!item.is_string()) continue;
      if (auto tag = normalize_hashtag(item.get<std::string>())) {
        doc.hashtags.push_back(*tag);
      }
    }
  } else {
    doc.hashtags = extract_hashtags_from_text(doc.text);
  }
  return true;
}

}  // namespace

LoadResult load_corpus(const std::string& path, const CorpusSchema& schema) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open corpus file: " + path);

  LoadResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    Document doc;
    if (!parse_line(line, schema, doc)) {
      ++result.skipped_lines;
      continue;
    }
    if (!seen_ids.insert(doc.id).second) {
      fail(errc::data, "duplicate document id '" + doc.id + "' at line " + std::to_string(lineno));
    }
    result.corpus.documents.push_back(std::move(doc));
  }
  if (result.corpus.documents.empty()) {
    fail(errc::data, "no valid records in corpus file: " + path);
  }
  result.corpus.source_meta["input_path"] = path;
  result.corpus.source_meta["skipped_lines"] = std::to_string(result.skipped_lines);
  return result;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write corpus file: " + path);
  for (const auto& doc : corpus.documents) {
    json rec;
    rec["id"] = doc.id;
    rec["text"] = doc.text;
    if (!doc.author_id.empty()) rec["author_id"] = doc.author_id;
    if (!doc.created_at.empty()) rec["created_at"] = doc.created_at;
    rec["hashtags"] = doc.hashtags;
    if (!doc.lang_hint.empty()) rec["lang_hint"] = doc.lang_hint;
    out << rec.dump() << '\n';
  }
  if (!out) fail(errc::io, "write failed: " + path);
}

Corpus filter_by_hashtags(const Corpus& corpus, const std::set<std::string>& tags) {
  if (tags.empty()) fail(errc::config, "hashtag filter requires a non-empty tag set");
  for (const auto& tag : tags) {
    if (tag != utf8_lower(tag)) fail(errc::config, "hashtag filter tags must be lowercase: " + tag);
  }
  Corpus out;
  out.source_meta = corpus.source_meta;
  for (const auto& doc : corpus.documents) {
    for (const auto& tag : doc.hashtags) {
      if (tags.count(tag)) {
        out.documents.push_back(doc);
        break;
      }
    }
  }
  std::string filter;
  for (const auto& tag : tags) {
    if (!filter.empty()) filter += ',';
    filter += tag;
  }
  out.source_meta["hashtag_filter"] = filter;
  if (out.documents.empty()) out.source_meta["warning"] = "hashtag filter matched no documents";
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.documents = corpus.documents.size();
  std::unordered_set<std::string> authors;
  for (const auto& doc : corpus.documents) {
    if (!doc.author_id.empty()) authors.insert(doc.author_id);
    const std::string day = looks_like_date(doc.created_at) ? doc.created_at.substr(0, 10) : "unknown";
    ++stats.per_day[day];
    for (const auto& tag : doc.hashtags) ++stats.per_hashtag[tag];
  }
  stats.distinct_authors = authors.size();
  return stats;
}

}  // namespace tt
