#pragma once

#include <array>
#include <string>
#include <vector>

#include "embeddings.hpp"
#include "lda.hpp"

namespace tt {

// Jensen-Shannon divergence, natural log, range [0, ln 2]. Inputs must be
// same-length distributions summing to 1 within 1e-9.
double jsd(const std::vector<double>& p, const std::vector<double>& q);

struct Projection {
  std::vector<std::array<double, 2>> coords;
  std::string warning;  // set when fewer than 2 positive eigenvalues exist
};

// Classical MDS (principal coordinates): double-center -1/2 J D^2 J,
// eigendecompose (cyclic Jacobi), keep the two largest positive axes.
// Sign convention: the first coordinate of each axis with magnitude above
// 1e-12 is made positive, so equal inputs give equal outputs.
Projection project_2d(const std::vector<std::vector<double>>& distances);

struct IntertopicMap {
  std::vector<std::array<double, 2>> coords;      // K points
  std::vector<double> areas;                      // topic prevalence, sums to 1
  std::vector<std::vector<double>> distance_matrix;  // jsd between phi rows
  std::string warning;
};

// Distances are jsd between topic-word rows; K >= 2 required.
IntertopicMap build_intertopic_map(const TopicModel& model);

enum class AffinityMode { embedding, bow };

AffinityMode affinity_mode_from(const std::string& name);
std::string to_string(AffinityMode mode);

struct AffinityCell {
  double value = 0.0;
  bool missing = true;  // no computable term pair; value meaningless
  int used = 0;         // terms that entered the mean
  int skipped = 0;      // top words unusable: out of vocabulary, or the
                        // opinion itself under exclude_self
};

struct AffinityMatrix {
  std::vector<std::string> opinions;            // column order as given
  std::vector<std::vector<AffinityCell>> cells;  // K x opinions
  AffinityMode mode = AffinityMode::embedding;
  bool exclude_self = false;
  int top_n = 10;
};

// Affinity of each topic's top_n words with each opinion lemma.
// embedding mode: mean cosine between input vectors, skipping top words
// the embedding does not know. bow mode: cosine between document-level
// co-occurrence rows (topic row = sum of its top words' rows), built from
// the model's own documents. exclude_self drops the opinion word from the
// topic side, which can empty a cell (flagged missing, never zero-filled).
AffinityMatrix opinion_topic_affinity(const TopicModel& model, const EmbeddingModel& emb,
                                      const std::vector<std::string>& opinions, int top_n,
                                      AffinityMode mode, bool exclude_self);

// Highest-affinity opinion per topic; -1 where the whole row is missing.
// Ties keep the earliest opinion in column order.
std::vector<int> affinity_argmax(const AffinityMatrix& matrix);

void save_affinity(const AffinityMatrix& matrix, const std::string& path,
                   uint64_t config_hash = 0);
AffinityMatrix load_affinity(const std::string& path, uint64_t* config_hash = nullptr);

void save_intertopic(const IntertopicMap& map, const std::string& path,
                     uint64_t config_hash = 0);
IntertopicMap load_intertopic(const std::string& path, uint64_t* config_hash = nullptr);

}  // namespace tt
