#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "normalize.hpp"
#include "vocab.hpp"

namespace tt {

struct SkipgramConfig {
  int dim = 100;
  int window = 5;  // effective half-width sampled per position from 1..window
  int negatives = 5;
  int epochs = 5;
  double initial_lr = 0.025;
  int min_count = 5;
  double subsample_t = 1e-5;  // 0 disables subsampling

  void validate() const;
};

struct EmbeddingModel {
  int dim = 0;
  uint64_t seed = 0;
  SkipgramConfig config;
  Vocabulary vocab;                // terms kept after min_count, ids lexicographic
  std::vector<long long> counts;   // corpus frequency per id (drives the sampler)
  std::vector<std::vector<double>> w_in;   // V x dim
  std::vector<std::vector<double>> w_out;  // V x dim
  std::vector<double> epoch_loss;  // mean pair loss per epoch
  std::string warning;             // set when no training pairs existed
};

// Negative-sampling loss of one (center, context, negatives) triple:
// -log sigmoid(u_o . v_c) - sum_i log sigmoid(-u_i . v_c).
double ns_pair_loss(const std::vector<double>& v_c, const std::vector<double>& u_o,
                    const std::vector<std::vector<double>>& u_neg);

// Analytic gradients of ns_pair_loss with respect to every argument.
// Kept separate from the training loop's fused update so tests can compare
// them against finite differences and against an actual SGD step.
void ns_pair_grad(const std::vector<double>& v_c, const std::vector<double>& u_o,
                  const std::vector<std::vector<double>>& u_neg, std::vector<double>& g_vc,
                  std::vector<double>& g_uo, std::vector<std::vector<double>>& g_uneg);

// Deterministic skip-gram training. One PRNG stream seeded from `seed`,
// consumed in a fixed order: first the input-matrix init (ids ascending,
// then components); then per epoch, per document, per token one retention
// draw when subsampling is on, one window-width draw per kept center, and
// per context position `negatives` (slot, coin) draw pairs from the alias
// sampler over unigram^(3/4). Tokens outside the kept vocabulary are
// dropped before any randomness is consumed. Same inputs, same bits.
//
// The learning rate decays linearly from initial_lr to initial_lr/100 over
// all epochs, measured in scanned tokens of the mapped corpus.
EmbeddingModel train_skipgram(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                              const SkipgramConfig& config, uint64_t seed);

// Input vector of a term; errc::not_found for out-of-vocabulary terms.
const std::vector<double>& vector_of(const EmbeddingModel& model, const std::string& term);

// Cosine with the strict contract: zero vectors are an error, result
// clamped to [-1, 1] against rounding.
double cosine_strict(const std::vector<double>& u, const std::vector<double>& v);

// n most similar vocabulary terms by input-vector cosine, query excluded,
// ties by ascending term id. Zero-norm candidates are skipped.
std::vector<std::pair<std::string, double>> nearest(const EmbeddingModel& model,
                                                    const std::string& term, int n);

// Binary little-endian model file with a magic header; exact round-trip.
void save_embedding(const EmbeddingModel& model, const std::string& path,
                    uint64_t config_hash = 0);
EmbeddingModel load_embedding(const std::string& path, uint64_t* config_hash = nullptr);

// The widespread text layout: a "V dim" header line, then one term per
// line followed by its input vector, full round-trip precision.
void export_text(const EmbeddingModel& model, const std::string& path);

}  // namespace tt
