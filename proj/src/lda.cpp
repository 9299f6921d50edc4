#include "lda.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace tt {

using nlohmann::json;

size_t TopicModel::total_tokens() const {
  size_t n = 0;
  for (const auto& doc : docs) n += doc.size();
  return n;
}

void TopicModel::check_counts() const {
  const int v = vocab.size();
  long long grand = 0;
  for (int topic = 0; topic < k; ++topic) {
    long long row = 0;
    for (int w = 0; w < v; ++w) row += n_kw[topic][w];
    if (row != n_k[topic]) fail(errc::internal, "topic-word counts disagree with topic totals");
    grand += n_k[topic];
  }
  if (grand != static_cast<long long>(total_tokens())) {
    fail(errc::internal, "topic totals disagree with corpus token count");
  }
  for (size_t d = 0; d < docs.size(); ++d) {
    long long row = std::accumulate(n_dk[d].begin(), n_dk[d].end(), 0LL);
    if (row != static_cast<long long>(docs[d].size())) {
      fail(errc::internal, "doc-topic counts disagree with document length");
    }
    for (int zi : z[d]) {
      if (zi < 0 || zi >= k) fail(errc::internal, "topic assignment out of range");
    }
  }
}

TopicModel train_lda(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                     const LdaParams& params, const SweepObserver& observer) {
  if (params.k < 1) fail(errc::config, "lda k must be >= 1");
  if (params.effective_alpha() <= 0.0 || params.beta <= 0.0) {
    fail(errc::config, "lda alpha and beta must be positive");
  }
  if (params.iterations < 1) fail(errc::config, "lda iterations must be >= 1");

  TopicModel model;
  model.k = params.k;
  model.alpha = params.effective_alpha();
  model.beta = params.beta;
  model.seed = params.seed;
  model.vocab = vocab;
  model.doc_ids.reserve(docs.size());
  model.docs.reserve(docs.size());
  size_t total = 0;
  for (const auto& doc : docs) {
    std::vector<int> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
      const int id = vocab.id_of(token);
      if (id >= 0) ids.push_back(id);
    }
    total += ids.size();
    model.doc_ids.push_back(doc.doc_id);
    model.docs.push_back(std::move(ids));
  }
  if (total == 0) fail(errc::data, "no in-vocabulary tokens to train on");
  if (static_cast<size_t>(params.k) > total) {
    fail(errc::config, "lda k exceeds the corpus token count");
  }

  const int K = model.k;
  const int V = vocab.size();
  const size_t D = model.docs.size();
  model.n_kw.assign(K, std::vector<int>(V, 0));
  model.n_dk.assign(D, std::vector<int>(K, 0));
  model.n_k.assign(K, 0);
  model.z.resize(D);

  Rng rng(params.seed);
  for (size_t d = 0; d < D; ++d) {
    model.z[d].resize(model.docs[d].size());
    for (size_t n = 0; n < model.docs[d].size(); ++n) {
      const int w = model.docs[d][n];
      const int topic = static_cast<int>(rng.next_bounded(static_cast<uint64_t>(K)));
      model.z[d][n] = topic;
      ++model.n_kw[topic][w];
      ++model.n_dk[d][topic];
      ++model.n_k[topic];
    }
  }

  const double alpha = model.alpha;
  const double beta = model.beta;
  const double v_beta = static_cast<double>(V) * beta;
  std::vector<double> cdf(K);

  for (int sweep = 1; sweep <= params.iterations; ++sweep) {
    for (size_t d = 0; d < D; ++d) {
      auto& zd = model.z[d];
      auto& ndk = model.n_dk[d];
      const auto& words = model.docs[d];
      for (size_t n = 0; n < words.size(); ++n) {
        const int w = words[n];
        const int old_topic = zd[n];
        --model.n_kw[old_topic][w];
        --ndk[old_topic];
        --model.n_k[old_topic];

        double cum = 0.0;
        for (int topic = 0; topic < K; ++topic) {
          cum += (ndk[topic] + alpha) * (model.n_kw[topic][w] + beta) /
                 (static_cast<double>(model.n_k[topic]) + v_beta);
          cdf[topic] = cum;
        }
        const double u = rng.next_double() * cum;
        int new_topic = 0;
        while (new_topic < K - 1 && cdf[new_topic] < u) ++new_topic;

        zd[n] = new_topic;
        ++model.n_kw[new_topic][w];
        ++ndk[new_topic];
        ++model.n_k[new_topic];
      }
    }
    model.iterations_run = sweep;
    if (params.record_loglik) model.loglik.push_back(joint_log_likelihood(model));
#ifndef NDEBUG
    model.check_counts();
#endif
    if (observer) observer(model, sweep);
  }
  return model;
}

std::vector<std::vector<double>> phi(const TopicModel& model) {
  const int V = model.vocab.size();
  const double v_beta = static_cast<double>(V) * model.beta;
  std::vector<std::vector<double>> out(model.k, std::vector<double>(V));
  for (int topic = 0; topic < model.k; ++topic) {
    const double denom = static_cast<double>(model.n_k[topic]) + v_beta;
    for (int w = 0; w < V; ++w) {
      out[topic][w] = (model.n_kw[topic][w] + model.beta) / denom;
    }
  }
  return out;
}

std::vector<std::vector<double>> theta(const TopicModel& model) {
  const double k_alpha = static_cast<double>(model.k) * model.alpha;
  std::vector<std::vector<double>> out(model.docs.size(), std::vector<double>(model.k));
  for (size_t d = 0; d < model.docs.size(); ++d) {
    const double denom = static_cast<double>(model.docs[d].size()) + k_alpha;
    for (int topic = 0; topic < model.k; ++topic) {
      out[d][topic] = (model.n_dk[d][topic] + model.alpha) / denom;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> top_words(const TopicModel& model, int topic, int n) {
  if (topic < 0 || topic >= model.k) fail(errc::config, "topic index out of range");
  if (n < 1) fail(errc::config, "top_words n must be >= 1");
  const int V = model.vocab.size();
  const double denom = static_cast<double>(model.n_k[topic]) + static_cast<double>(V) * model.beta;
  std::vector<int> ids(V);
  std::iota(ids.begin(), ids.end(), 0);
  const auto& row = model.n_kw[topic];
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return a < b;
  });
  const int count = std::min(n, V);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.emplace_back(model.vocab.id_to_term[ids[i]], (row[ids[i]] + model.beta) / denom);
  }
  return out;
}

std::vector<double> topic_prevalence(const TopicModel& model) {
  const auto th = theta(model);
  std::vector<double> prevalence(model.k, 0.0);
  double total = 0.0;
  for (size_t d = 0; d < model.docs.size(); ++d) {
    const double len = static_cast<double>(model.docs[d].size());
    total += len;
    for (int topic = 0; topic < model.k; ++topic) {
      prevalence[topic] += len * th[d][topic];
    }
  }
  if (total > 0.0) {
    for (auto& p : prevalence) p /= total;
  }
  return prevalence;
}

double joint_log_likelihood(const TopicModel& model) {
  const int V = model.vocab.size();
  const double v_beta = static_cast<double>(V) * model.beta;
  const double k_alpha = static_cast<double>(model.k) * model.alpha;
  double ll = 0.0;
  for (int topic = 0; topic < model.k; ++topic) {
    ll += std::lgamma(v_beta) - V * std::lgamma(model.beta);
    for (int w = 0; w < V; ++w) ll += std::lgamma(model.n_kw[topic][w] + model.beta);
    ll -= std::lgamma(static_cast<double>(model.n_k[topic]) + v_beta);
  }
  for (size_t d = 0; d < model.docs.size(); ++d) {
    ll += std::lgamma(k_alpha) - model.k * std::lgamma(model.alpha);
    for (int topic = 0; topic < model.k; ++topic) {
      ll += std::lgamma(model.n_dk[d][topic] + model.alpha);
    }
    ll -= std::lgamma(static_cast<double>(model.docs[d].size()) + k_alpha);
  }
  return ll;
}

void save_topic_model(const TopicModel& model, const std::string& path, uint64_t config_hash) {
  json j;
  j["schema"] = "tweettopics/lda_model@1";
  j["config_hash"] = config_hash;
  j["k"] = model.k;
  j["alpha"] = model.alpha;
  j["beta"] = model.beta;
  j["seed"] = model.seed;
  j["iterations_run"] = model.iterations_run;
  j["v"] = model.vocab.size();
  j["terms"] = model.vocab.id_to_term;
  j["doc_freq"] = model.vocab.doc_freq;
  j["doc_ids"] = model.doc_ids;
  j["docs"] = model.docs;
  j["z"] = model.z;
  j["n_kw"] = model.n_kw;
  j["loglik"] = model.loglik;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write topic model: " + path);
  out << j.dump() << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

TopicModel load_topic_model(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open topic model: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != "tweettopics/lda_model@1") {
    fail(errc::data, "not a topic model file: " + path);
  }
  TopicModel model;
  if (config_hash) *config_hash = j.value("config_hash", 0ULL);
  model.k = j["k"].get<int>();
  model.alpha = j["alpha"].get<double>();
  model.beta = j["beta"].get<double>();
  model.seed = j["seed"].get<uint64_t>();
  model.iterations_run = j["iterations_run"].get<int>();
  model.vocab.id_to_term = j["terms"].get<std::vector<std::string>>();
  model.vocab.doc_freq = j["doc_freq"].get<std::vector<int>>();
  for (int i = 0; i < model.vocab.size(); ++i) {
    model.vocab.term_to_id.emplace(model.vocab.id_to_term[i], i);
  }
  model.doc_ids = j["doc_ids"].get<std::vector<std::string>>();
  model.docs = j["docs"].get<std::vector<std::vector<int>>>();
  model.z = j["z"].get<std::vector<std::vector<int>>>();
  model.n_kw = j["n_kw"].get<std::vector<std::vector<int>>>();
  model.loglik = j["loglik"].get<std::vector<double>>();

  // rebuild the derived tables and verify
  model.n_dk.assign(model.docs.size(), std::vector<int>(model.k, 0));
  model.n_k.assign(model.k, 0);
  for (size_t d = 0; d < model.docs.size(); ++d) {
    if (model.z[d].size() != model.docs[d].size()) {
      fail(errc::data, "assignment/document length mismatch in model file");
    }
    for (size_t n = 0; n < model.docs[d].size(); ++n) {
      ++model.n_dk[d][model.z[d][n]];
      ++model.n_k[model.z[d][n]];
    }
  }
  model.check_counts();
  return model;
}

}  // namespace tt
