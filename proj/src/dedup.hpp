#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpus.hpp"
#include "normalize.hpp"

namespace tt {

struct RepetitionCluster {
  uint64_t fingerprint = 0;
  std::vector<std::string> doc_ids;  // corpus order
  size_t distinct_authors = 0;
  size_t size = 0;
};

struct NearDupPair {
  std::string doc_a;
  std::string doc_b;
  double jaccard = 0.0;
};

struct DedupReport {
  std::vector<RepetitionCluster> clusters;  // size desc, ties by fingerprint
  size_t total_removed = 0;                 // sum of (size - 1), keep-first accounting
  std::vector<NearDupPair> near_dup_pairs;  // jaccard desc, ties by ids
  int min_size = 2;
  double near_threshold = 0.9;
  int shingle_k = 3;
};

enum class PrunePolicy { keep_first, drop_all };

// k-token shingle hashes, sorted and deduplicated. Documents shorter than k
// contribute their whole token sequence as a single shingle.
std::vector<uint64_t> shingle_set(const std::vector<std::string>& tokens, int k);

double jaccard(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b);

// Groups exact duplicates by token fingerprint and finds near-duplicate
// pairs (Jaccard >= near_threshold over k-shingles) among non-identical
// documents. Candidates come from minhash LSH; every reported Jaccard is
// recomputed exactly. Near-dup pairs are reported between the earliest
// document of each distinct text. `authors` maps doc_id -> author_id and
// may be empty (authorless docs each count as a distinct author).
DedupReport find_repetition_clusters(const std::vector<TokenizedDoc>& docs, int min_size,
                                     double near_threshold, int shingle_k = 3,
                                     const std::unordered_map<std::string, std::string>& authors = {});

std::unordered_set<std::string> removed_doc_ids(const DedupReport& report, PrunePolicy policy);

// keep_first retains the earliest document of each cluster, drop_all removes
// whole clusters. Docs outside any cluster are untouched; order preserved.
Corpus prune_corpus(const Corpus& corpus, const DedupReport& report, PrunePolicy policy);

std::vector<TokenizedDoc> prune_tokens(const std::vector<TokenizedDoc>& docs,
                                       const std::unordered_set<std::string>& removed);

void save_dedup_report(const DedupReport& report, const std::string& path,
                       uint64_t config_hash = 0);
DedupReport load_dedup_report(const std::string& path, uint64_t* config_hash = nullptr);

}  // namespace tt
