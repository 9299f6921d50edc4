#include "normalize.hpp"

#include <fstream>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

namespace tt {

using nlohmann::json;

bool is_url_token(const std::string& token) {
  return token.rfind("http://", 0) == 0 || token.rfind("https://", 0) == 0 ||
         token.rfind("www.", 0) == 0;
}

bool is_media_token(const std::string& token) {
  return token.rfind("pic.twitter.com", 0) == 0;
}

namespace {

bool is_word_cp(uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
           cp == '_';
  }
  return !is_unicode_punct(cp);
}

bool starts_url(std::string_view rest) {
  return rest.rfind("http://", 0) == 0 || rest.rfind("https://", 0) == 0 ||
         rest.rfind("www.", 0) == 0 || rest.rfind("pic.twitter.com", 0) == 0;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& raw) {
  const std::string text = utf8_lower(raw);
  std::vector<std::string> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    // URLs and media links run to the next whitespace, punctuation intact
    if (starts_url(std::string_view(text).substr(i))) {
      size_t j = i;
      while (j < n && static_cast<unsigned char>(text[j]) > ' ') ++j;
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    uint32_t cp;
    const size_t len = utf8_decode(text, i, cp);
    if ((cp == '#' || cp == '@') && i + len < n) {
      uint32_t next;
      const size_t next_len = utf8_decode(text, i + len, next);
      if (is_word_cp(next)) {
        std::string token;
        utf8_append(token, cp);
        size_t j = i + len;
        utf8_append(token, next);
        j += next_len;
        while (j < n) {
          uint32_t c;
          const size_t l = utf8_decode(text, j, c);
          if (!is_word_cp(c)) break;
          utf8_append(token, c);
          j += l;
        }
        tokens.push_back(std::move(token));
        i = j;
        continue;
      }
    }
    if (is_word_cp(cp)) {
      std::string token;
      size_t j = i;
      while (j < n) {
        uint32_t c;
        const size_t l = utf8_decode(text, j, c);
        if (!is_word_cp(c)) break;
        utf8_append(token, c);
        j += l;
      }
      tokens.push_back(std::move(token));
      i = j;
      continue;
    }
    i += len;  // separator
  }
  return tokens;
}

std::vector<std::string> strip_noise(const std::vector<std::string>& tokens,
                                     const NormalizeConfig& config) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (is_media_token(token)) {
      if (config.strip_media_tags) continue;
    } else if (is_url_token(token)) {
      if (config.strip_urls) continue;
    }
    std::string kept = token;
    if (!kept.empty() && kept.front() == '#') {
      if (!config.keep_hashtags) continue;
      kept.erase(0, 1);
    } else if (!kept.empty() && kept.front() == '@') {
      if (!config.keep_mentions) continue;
    }
    if (config.fold_diacritics) kept = utf8_fold_diacritics(kept);
    if (kept.empty()) continue;
    if (utf8_length(kept) < static_cast<size_t>(config.min_token_len)) continue;
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const NormalizeConfig& config) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!config.stopwords.count(token)) out.push_back(token);
  }
  return out;
}

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const NormalizeConfig& config) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto it = config.lemmas.find(token);
    out.push_back(it != config.lemmas.end() ? it->second : token);
  }
  return out;
}

std::vector<TokenizedDoc> normalize_pipeline(const Corpus& corpus, const NormalizeConfig& config) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    TokenizedDoc td;
    td.doc_id = doc.id;
    td.tokens = lemmatize(remove_stopwords(strip_noise(tokenize(doc.text), config), config), config);
    td.empty_after_normalize = td.tokens.empty();
    docs.push_back(std::move(td));
  }
  return docs;
}

void NormalizeConfig::load_stopword_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open stopword file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim(line);
    if (!word.empty()) stopwords.insert(utf8_lower(word));
  }
}

void NormalizeConfig::load_lemma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open lemma dictionary: " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(errc::data,
           "lemma dictionary line " + std::to_string(lineno) + " is not surface<TAB>lemma: " + path);
    }
    const std::string surface = utf8_lower(trim(line.substr(0, tab)));
    const std::string lemma = utf8_lower(trim(line.substr(tab + 1)));
    if (surface.empty() || lemma.empty()) {
      fail(errc::data, "empty field in lemma dictionary at line " + std::to_string(lineno));
    }
    lemmas[surface] = lemma;
  }
}

std::vector<std::string> NormalizeConfig::validate() const {
  std::vector<std::string> warnings;
  for (const auto& [surface, lemma] : lemmas) {
    if (stopwords.count(lemma)) {
      warnings.push_back("lemma target '" + lemma + "' (from '" + surface +
                         "') is a stopword; normalized output will not be idempotent");
    }
    auto it = lemmas.find(lemma);
    if (it != lemmas.end() && it->second != lemma) {
      warnings.push_back("lemma target '" + lemma + "' is itself remapped to '" + it->second + "'");
    }
  }
  return warnings;
}

void save_tokens(const std::vector<TokenizedDoc>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write tokens file: " + path);
  for (const auto& doc : docs) {
    json rec;
    rec["doc_id"] = doc.doc_id;
    rec["tokens"] = doc.tokens;
    if (doc.empty_after_normalize) rec["empty"] = true;
    out << rec.dump() << '\n';
  }
  if (!out) fail(errc::io, "write failed: " + path);
}

std::vector<TokenizedDoc> load_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open tokens file: " + path);
  std::vector<TokenizedDoc> docs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (!rec.is_object() || !rec.contains("doc_id") || !rec.contains("tokens")) {
      fail(errc::data, "malformed tokens record at line " + std::to_string(lineno) + ": " + path);
    }
    TokenizedDoc doc;
    doc.doc_id = rec["doc_id"].get<std::string>();
    doc.tokens = rec["tokens"].get<std::vector<std::string>>();
    doc.empty_after_normalize = rec.value("empty", false);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace tt
