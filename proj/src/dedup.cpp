#include "dedup.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <json.hpp>

#include "error.hpp"
#include "hash.hpp"
#include "rng.hpp"

namespace tt {

using nlohmann::json;

namespace {

constexpr int kMinhashFuncs = 128;
constexpr int kLshBands = 32;
constexpr int kLshRows = 4;  // bands * rows == funcs

// Fixed seeds make the minhash family stable across runs and platforms.
std::array<uint64_t, kMinhashFuncs> minhash_seeds() {
  std::array<uint64_t, kMinhashFuncs> seeds{};
  uint64_t state = 0x7a3c1f2b9d5e8461ULL;
  for (auto& s : seeds) s = splitmix64(state);
  return seeds;
}

std::array<uint64_t, kMinhashFuncs> minhash_signature(const std::vector<uint64_t>& shingles,
                                                      const std::array<uint64_t, kMinhashFuncs>& seeds) {
  std::array<uint64_t, kMinhashFuncs> sig;
  sig.fill(UINT64_MAX);
  for (uint64_t sh : shingles) {
    for (int i = 0; i < kMinhashFuncs; ++i) {
      const uint64_t h = mix64(sh ^ seeds[i]);
      if (h < sig[i]) sig[i] = h;
    }
  }
  return sig;
}

}  // namespace

std::vector<uint64_t> shingle_set(const std::vector<std::string>& tokens, int k) {
  std::vector<uint64_t> shingles;
  if (tokens.empty()) return shingles;
  const size_t n = tokens.size();
  if (n < static_cast<size_t>(k)) {
    shingles.push_back(fingerprint_tokens(tokens));
  } else {
    shingles.reserve(n - k + 1);
    for (size_t i = 0; i + k <= n; ++i) {
      uint64_t h = kFnvBasis;
      for (size_t j = i; j < i + k; ++j) {
        h = fnv1a64(tokens[j], h);
        h = fnv1a64_byte(0x1f, h);
      }
      shingles.push_back(h);
    }
  }
  std::sort(shingles.begin(), shingles.end());
  shingles.erase(std::unique(shingles.begin(), shingles.end()), shingles.end());
  return shingles;
}

double jaccard(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

DedupReport find_repetition_clusters(const std::vector<TokenizedDoc>& docs, int min_size,
                                     double near_threshold, int shingle_k,
                                     const std::unordered_map<std::string, std::string>& authors) {
  if (min_size < 2) fail(errc::config, "dedup min_size must be >= 2");
  if (!(near_threshold > 0.0 && near_threshold <= 1.0)) {
    fail(errc::config, "dedup near_threshold must be in (0, 1]");
  }
  if (shingle_k < 1) fail(errc::config, "dedup shingle_k must be >= 1");

  DedupReport report;
  report.min_size = min_size;
  report.near_threshold = near_threshold;
  report.shingle_k = shingle_k;
  if (docs.empty()) return report;

  // exact clusters by fingerprint; representatives keep first-seen order
  std::vector<uint64_t> fps(docs.size());
  std::unordered_map<uint64_t, std::vector<size_t>> groups;
  std::vector<size_t> reps;
  for (size_t i = 0; i < docs.size(); ++i) {
    fps[i] = fingerprint_tokens(docs[i].tokens);
    auto [it, inserted] = groups.try_emplace(fps[i]);
    if (inserted) reps.push_back(i);
    it->second.push_back(i);
  }

  for (size_t rep : reps) {
    const auto& members = groups[fps[rep]];
    if (members.size() < static_cast<size_t>(min_size)) continue;
    RepetitionCluster cluster;
    cluster.fingerprint = fps[rep];
    cluster.size = members.size();
    std::unordered_set<std::string> seen_authors;
    size_t anonymous = 0;
    for (size_t idx : members) {
      cluster.doc_ids.push_back(docs[idx].doc_id);
      auto it = authors.find(docs[idx].doc_id);
      if (it != authors.end() && !it->second.empty()) {
        seen_authors.insert(it->second);
      } else {
        ++anonymous;
      }
    }
    cluster.distinct_authors = seen_authors.size() + anonymous;
    report.clusters.push_back(std::move(cluster));
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const RepetitionCluster& a, const RepetitionCluster& b) {
              if (a.size != b.size) return a.size > b.size;
              return a.fingerprint < b.fingerprint;
            });
  for (const auto& cluster : report.clusters) report.total_removed += cluster.size - 1;

  // near-duplicates among representatives of distinct texts
  const auto seeds = minhash_seeds();
  std::vector<std::vector<uint64_t>> shingles(reps.size());
  std::vector<std::array<uint64_t, kMinhashFuncs>> sigs(reps.size());
  for (size_t r = 0; r < reps.size(); ++r) {
    shingles[r] = shingle_set(docs[reps[r]].tokens, shingle_k);
    if (!shingles[r].empty()) sigs[r] = minhash_signature(shingles[r], seeds);
  }

  std::unordered_map<uint64_t, std::vector<size_t>> buckets;
  std::vector<std::pair<size_t, size_t>> candidates;
  for (int band = 0; band < kLshBands; ++band) {
    buckets.clear();
    for (size_t r = 0; r < reps.size(); ++r) {
      if (shingles[r].empty()) continue;
      uint64_t h = kFnvBasis ^ static_cast<uint64_t>(band);
      for (int row = 0; row < kLshRows; ++row) {
        const uint64_t v = sigs[r][band * kLshRows + row];
        for (int byte = 0; byte < 8; ++byte) h = fnv1a64_byte((v >> (8 * byte)) & 0xff, h);
      }
      buckets[h].push_back(r);
    }
    for (const auto& [h, bucket] : buckets) {
      if (bucket.size() < 2) continue;
      for (size_t i = 0; i < bucket.size(); ++i) {
        for (size_t j = i + 1; j < bucket.size(); ++j) {
          candidates.emplace_back(bucket[i], bucket[j]);
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (auto [a, b] : candidates) {
    const double j = jaccard(shingles[a], shingles[b]);
    if (j >= near_threshold) {
      report.near_dup_pairs.push_back({docs[reps[a]].doc_id, docs[reps[b]].doc_id, j});
    }
  }
  std::sort(report.near_dup_pairs.begin(), report.near_dup_pairs.end(),
            [](const NearDupPair& a, const NearDupPair& b) {
              if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
              if (a.doc_a != b.doc_a) return a.doc_a < b.doc_a;
              return a.doc_b < b.doc_b;
            });
  return report;
}

std::unordered_set<std::string> removed_doc_ids(const DedupReport& report, PrunePolicy policy) {
  std::unordered_set<std::string> removed;
  for (const auto& cluster : report.clusters) {
    const size_t first_kept = policy == PrunePolicy::keep_first ? 1 : 0;
    for (size_t i = first_kept; i < cluster.doc_ids.size(); ++i) {
      removed.insert(cluster.doc_ids[i]);
    }
  }
  return removed;
}

Corpus prune_corpus(const Corpus& corpus, const DedupReport& report, PrunePolicy policy) {
  std::unordered_set<std::string> known;
  known.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) known.insert(doc.id);
  for (const auto& cluster : report.clusters) {
    for (const auto& id : cluster.doc_ids) {
      if (!known.count(id)) {
        fail(errc::data, "dedup report references unknown document id '" + id + "'");
      }
    }
  }
  const auto removed = removed_doc_ids(report, policy);
  Corpus out;
  out.source_meta = corpus.source_meta;
  for (const auto& doc : corpus.documents) {
    if (!removed.count(doc.id)) out.documents.push_back(doc);
  }
  out.source_meta["dedup_removed"] = std::to_string(corpus.documents.size() - out.documents.size());
  out.source_meta["dedup_policy"] = policy == PrunePolicy::keep_first ? "keep_first" : "drop_all";
  return out;
}

std::vector<TokenizedDoc> prune_tokens(const std::vector<TokenizedDoc>& docs,
                                       const std::unordered_set<std::string>& removed) {
  std::vector<TokenizedDoc> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    if (!removed.count(doc.doc_id)) out.push_back(doc);
  }
  return out;
}

void save_dedup_report(const DedupReport& report, const std::string& path,
                       uint64_t config_hash) {
  json j;
  j["schema"] = "tweettopics/dedup_report@1";
  j["config_hash"] = config_hash;
  j["min_size"] = report.min_size;
  j["near_threshold"] = report.near_threshold;
  j["shingle_k"] = report.shingle_k;
  j["total_removed"] = report.total_removed;
  j["clusters"] = json::array();
  for (const auto& cluster : report.clusters) {
    json c;
    c["fingerprint"] = cluster.fingerprint;
    c["doc_ids"] = cluster.doc_ids;
    c["distinct_authors"] = cluster.distinct_authors;
    c["size"] = cluster.size;
    j["clusters"].push_back(std::move(c));
  }
  j["near_dup_pairs"] = json::array();
  for (const auto& pair : report.near_dup_pairs) {
    j["near_dup_pairs"].push_back({{"a", pair.doc_a}, {"b", pair.doc_b}, {"jaccard", pair.jaccard}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write dedup report: " + path);
  out << j.dump(2) << '\n';
}

DedupReport load_dedup_report(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open dedup report: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != "tweettopics/dedup_report@1") {
    fail(errc::data, "not a dedup report: " + path);
  }
  if (config_hash) *config_hash = j.value("config_hash", 0ULL);
  DedupReport report;
  report.min_size = j["min_size"].get<int>();
  report.near_threshold = j["near_threshold"].get<double>();
  report.shingle_k = j["shingle_k"].get<int>();
  report.total_removed = j["total_removed"].get<size_t>();
  for (const auto& c : j["clusters"]) {
    RepetitionCluster cluster;
    cluster.fingerprint = c["fingerprint"].get<uint64_t>();
    cluster.doc_ids = c["doc_ids"].get<std::vector<std::string>>();
    cluster.distinct_authors = c["distinct_authors"].get<size_t>();
    cluster.size = c["size"].get<size_t>();
    report.clusters.push_back(std::move(cluster));
  }
  for (const auto& p : j["near_dup_pairs"]) {
    report.near_dup_pairs.push_back({p["a"].get<std::string>(), p["b"].get<std::string>(),
                                     p["jaccard"].get<double>()});
  }
  return report;
}

}  // namespace tt
