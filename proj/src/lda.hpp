#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vocab.hpp"

namespace tt {

struct LdaParams {
  int k = 5;
  double alpha = 0.0;  // <= 0 selects the 50/K default
  double beta = 0.01;
  int iterations = 1000;
  uint64_t seed = 42;
  bool record_loglik = false;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(k); }
};

// Collapsed Gibbs state. The count tables are the model; phi/theta are
// smoothed views. Documents are stored as vocab-id sequences (out-of-vocab
// tokens were dropped at ingestion into the model).
struct TopicModel {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  int iterations_run = 0;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  std::vector<std::vector<int>> docs;  // word ids per doc
  std::vector<std::vector<int>> z;     // topic assignment per token
  std::vector<std::vector<int>> n_kw;  // K x V
  std::vector<std::vector<int>> n_dk;  // D x K
  std::vector<long long> n_k;          // K
  std::vector<double> loglik;          // per sweep, when recorded

  size_t total_tokens() const;
  // Throws on any violated count invariant (used by tests and debug sweeps).
  void check_counts() const;
};

using SweepObserver = std::function<void(const TopicModel&, int sweep)>;

// One PRNG stream seeded from params.seed, consumed in token order: first
// the uniform initial assignments, then one draw per token per sweep.
// Identical inputs give bit-identical models.
TopicModel train_lda(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                     const LdaParams& params, const SweepObserver& observer = {});

std::vector<std::vector<double>> phi(const TopicModel& model);
std::vector<std::vector<double>> theta(const TopicModel& model);

// Top-n terms of one topic by phi, ties broken by ascending term id.
// Returns at most V entries.
std::vector<std::pair<std::string, double>> top_words(const TopicModel& model, int topic, int n);

// Token-mass share per topic; sums to 1.
std::vector<double> topic_prevalence(const TopicModel& model);

// Standard collapsed joint log likelihood of counts given hyperparameters.
double joint_log_likelihood(const TopicModel& model);

void save_topic_model(const TopicModel& model, const std::string& path, uint64_t config_hash = 0);
TopicModel load_topic_model(const std::string& path, uint64_t* config_hash = nullptr);

}  // namespace tt
