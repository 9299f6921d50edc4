#include "sentiment.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace tt {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool parse_polarity(const std::string& raw, int* out) {
  const std::string v = trim(raw);
  if (v == "1" || v == "+1") {
    *out = 1;
  } else if (v == "-1") {
    *out = -1;
  } else if (v == "0") {
    *out = 0;
  } else {
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> SentimentLexicon::multiword_heads() const {
  std::vector<std::string> out;
  for (const auto& [head, entry] : entries) {
    if (head.find(' ') != std::string::npos) out.push_back(head);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SentimentLexicon parse_lexicon_text(const std::string& text) {
  SentimentLexicon lex;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    const size_t mark = line.find(".PoS=");
    if (mark == std::string::npos || mark == 0) {
      ++lex.skipped_lines;
      continue;
    }
    const auto fields = split(line.substr(mark + 5), ';');
    LexiconEntry entry;
    entry.pos_tag = trim(fields[0]);
    bool have_pol = false;
    for (size_t i = 1; i < fields.size(); ++i) {
      const std::string field = trim(fields[i]);
      if (field.rfind("TG=", 0) == 0) {
        entry.target = field.substr(3);
      } else if (field.rfind("POL:N0=", 0) == 0) {
        have_pol = parse_polarity(field.substr(7), &entry.polarity);
      }
    }
    if (!have_pol) {
      ++lex.skipped_lines;
      continue;
    }

    bool any_head = false;
    for (const auto& raw_head : split(line.substr(0, mark), ',')) {
      const std::string head = utf8_lower(trim(raw_head));
      if (head.empty()) continue;
      any_head = true;
      lex.entries[head] = entry;  // later lines win
    }
    if (!any_head) ++lex.skipped_lines;
  }
  if (lex.entries.empty()) fail(errc::data, "lexicon has no parseable entries");
  return lex;
}

SentimentLexicon parse_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open lexicon: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon_text(buf.str());
}

std::optional<int> classify_token(const SentimentLexicon& lexicon, const std::string& lemma) {
  auto it = lexicon.entries.find(lemma);
  if (it == lexicon.entries.end()) return std::nullopt;
  return it->second.polarity;
}

PolarWordRanking top_polar_words(const std::vector<TokenizedDoc>& docs,
                                 const SentimentLexicon& lexicon, int n) {
  if (n < 1) fail(errc::config, "polar ranking size must be >= 1");

  std::vector<std::vector<std::string>> mwes;
  std::vector<std::string> mwe_heads;
  for (const auto& head : lexicon.multiword_heads()) {
    if (lexicon.entries.at(head).polarity == 0) continue;
    std::vector<std::string> parts = split(head, ' ');
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const std::string& p) { return p.empty(); }),
                parts.end());
    if (parts.size() < 2) continue;
    mwes.push_back(std::move(parts));
    mwe_heads.push_back(head);
  }

  std::unordered_map<std::string, long long> counts;
  std::mutex merge_mu;
  parallel_for(docs.size(), [&](size_t lo, size_t hi) {
    std::unordered_map<std::string, long long> local;
    for (size_t d = lo; d < hi; ++d) {
      const auto& toks = docs[d].tokens;
      for (const auto& token : toks) {
        auto it = lexicon.entries.find(token);
        if (it != lexicon.entries.end() && it->second.polarity != 0) ++local[token];
      }
      for (size_t m = 0; m < mwes.size(); ++m) {
        const auto& parts = mwes[m];
        if (toks.size() < parts.size()) continue;
        for (size_t i = 0; i + parts.size() <= toks.size(); ++i) {
          if (std::equal(parts.begin(), parts.end(), toks.begin() + i)) {
            ++local[mwe_heads[m]];
          }
        }
      }
    }
    std::lock_guard<std::mutex> lock(merge_mu);
    for (const auto& [lemma, c] : local) counts[lemma] += c;
  });

  PolarWordRanking ranking;
  ranking.ranked.reserve(counts.size());
  for (const auto& [lemma, freq] : counts) {
    ranking.ranked.push_back({lemma, lexicon.entries.at(lemma).polarity, freq});
  }
  std::sort(ranking.ranked.begin(), ranking.ranked.end(),
            [](const PolarWord& a, const PolarWord& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.lemma < b.lemma;
            });
  if (ranking.ranked.size() > static_cast<size_t>(n)) ranking.ranked.resize(n);
  if (ranking.ranked.empty()) {
    ranking.warning = "no polar lexicon word occurs in the corpus";
  }
  return ranking;
}

void save_polar_ranking(const PolarWordRanking& ranking, const std::string& path,
                        uint64_t config_hash) {
  json j;
  j["schema"] = "tweettopics/polar_words@1";
  j["config_hash"] = config_hash;
  j["ranked"] = json::array();
  for (const auto& w : ranking.ranked) {
    j["ranked"].push_back(
        {{"lemma", w.lemma}, {"polarity", w.polarity}, {"frequency", w.frequency}});
  }
  j["warning"] = ranking.warning;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write polar ranking: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

PolarWordRanking load_polar_ranking(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open polar ranking: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != "tweettopics/polar_words@1") {
    fail(errc::data, "not a polar ranking file: " + path);
  }
  if (config_hash) *config_hash = j.value("config_hash", 0ULL);
  PolarWordRanking ranking;
  for (const auto& w : j["ranked"]) {
    ranking.ranked.push_back({w["lemma"].get<std::string>(), w["polarity"].get<int>(),
                              w["frequency"].get<long long>()});
  }
  ranking.warning = j.value("warning", "");
  return ranking;
}

}  // namespace tt
