#include "embeddings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>

#include "error.hpp"
#include "rng.hpp"
#include "vecmath.hpp"

namespace tt {

static_assert(std::endian::native == std::endian::little,
              "model files are little-endian; big-endian hosts need byte swapping");

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + exp(x)) without overflow; -log(sigmoid(s)) == softplus(-s).
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// Vose alias sampler over fixed weights. Construction walks ids in
// ascending order, so the table is a pure function of the weights.
struct AliasTable {
  std::vector<double> prob;
  std::vector<int> alias;

  explicit AliasTable(const std::vector<double>& weights) {
    const size_t n = weights.size();
    prob.assign(n, 1.0);
    alias.resize(n);
    std::iota(alias.begin(), alias.end(), 0);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0) fail(errc::internal, "alias table needs positive total weight");
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;
    std::vector<int> small, large;
    for (size_t i = n; i-- > 0;) {
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
    }
    while (!small.empty() && !large.empty()) {
      const int s = small.back();
      const int l = large.back();
      small.pop_back();
      large.pop_back();
      prob[s] = scaled[s];
      alias[s] = l;
      scaled[l] += scaled[s] - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // leftovers are numerically 1 and keep prob=1, alias=self
  }

  int draw(Rng& rng) const {
    const int slot = static_cast<int>(rng.next_bounded(prob.size()));
    return rng.next_double() < prob[slot] ? slot : alias[slot];
  }
};

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

constexpr char kMagic[8] = {'T', 'T', 'E', 'M', 'B', 'E', 'D', '1'};

}  // namespace

void SkipgramConfig::validate() const {
  if (dim < 1) fail(errc::config, "embedding dim must be >= 1");
  if (window < 1) fail(errc::config, "embedding window must be >= 1");
  if (negatives < 1) fail(errc::config, "embedding negatives must be >= 1");
  if (epochs < 1) fail(errc::config, "embedding epochs must be >= 1");
  if (initial_lr <= 0.0) fail(errc::config, "embedding initial_lr must be positive");
  if (min_count < 0) fail(errc::config, "embedding min_count must be >= 0");
  if (subsample_t < 0.0) fail(errc::config, "embedding subsample_t must be >= 0");
}

double ns_pair_loss(const std::vector<double>& v_c, const std::vector<double>& u_o,
                    const std::vector<std::vector<double>>& u_neg) {
  double loss = softplus(-dot(v_c, u_o));
  for (const auto& u : u_neg) loss += softplus(dot(v_c, u));
  return loss;
}

void ns_pair_grad(const std::vector<double>& v_c, const std::vector<double>& u_o,
                  const std::vector<std::vector<double>>& u_neg, std::vector<double>& g_vc,
                  std::vector<double>& g_uo, std::vector<std::vector<double>>& g_uneg) {
  const size_t dim = v_c.size();
  g_vc.assign(dim, 0.0);
  g_uo.assign(dim, 0.0);
  g_uneg.assign(u_neg.size(), std::vector<double>(dim, 0.0));

  const double g_pos = sigmoid(dot(v_c, u_o)) - 1.0;
  for (size_t d = 0; d < dim; ++d) {
    g_vc[d] += g_pos * u_o[d];
    g_uo[d] = g_pos * v_c[d];
  }
  for (size_t i = 0; i < u_neg.size(); ++i) {
    const double g_neg = sigmoid(dot(v_c, u_neg[i]));
    for (size_t d = 0; d < dim; ++d) {
      g_vc[d] += g_neg * u_neg[i][d];
      g_uneg[i][d] = g_neg * v_c[d];
    }
  }
}

EmbeddingModel train_skipgram(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab,
                              const SkipgramConfig& config, uint64_t seed) {
  config.validate();
  if (docs.empty()) fail(errc::data, "cannot train embeddings on an empty corpus");

  // corpus frequencies over the supplied vocabulary
  std::vector<long long> freq(vocab.size(), 0);
  for (const auto& doc : docs) {
    for (const auto& token : doc.tokens) {
      const int id = vocab.id_of(token);
      if (id >= 0) ++freq[id];
    }
  }

  // keep terms seen at least max(1, min_count) times; a term that never
  // occurs would only waste a row
  const long long cutoff = std::max(1, config.min_count);
  EmbeddingModel model;
  model.dim = config.dim;
  model.seed = seed;
  model.config = config;
  std::vector<int> remap(vocab.size(), -1);
  for (int id = 0; id < vocab.size(); ++id) {
    if (freq[id] < cutoff) continue;
    remap[id] = model.vocab.size();
    model.vocab.term_to_id.emplace(vocab.id_to_term[id], model.vocab.size());
    model.vocab.id_to_term.push_back(vocab.id_to_term[id]);
    model.vocab.doc_freq.push_back(vocab.doc_freq[id]);
    model.counts.push_back(freq[id]);
  }
  if (model.vocab.size() == 0) {
    fail(errc::data, "embedding vocabulary is empty after min_count filtering");
  }

  std::vector<std::vector<int>> mapped(docs.size());
  size_t total_mapped = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    mapped[d].reserve(docs[d].tokens.size());
    for (const auto& token : docs[d].tokens) {
      const int id = vocab.id_of(token);
      if (id >= 0 && remap[id] >= 0) mapped[d].push_back(remap[id]);
    }
    total_mapped += mapped[d].size();
  }

  const int V = model.vocab.size();
  const int dim = config.dim;
  Rng rng(seed);
  model.w_in.assign(V, std::vector<double>(dim));
  for (auto& row : model.w_in) {
    for (auto& x : row) x = (rng.next_double() - 0.5) / static_cast<double>(dim);
  }
  model.w_out.assign(V, std::vector<double>(dim, 0.0));

  if (total_mapped == 0) {
    model.warning = "no training pairs were generated; model equals its initialization";
    model.epoch_loss.assign(config.epochs, 0.0);
    return model;
  }

  std::vector<double> weights(V);
  for (int i = 0; i < V; ++i) {
    weights[i] = std::pow(static_cast<double>(model.counts[i]), 0.75);
  }
  const AliasTable sampler(weights);

  const double total_span =
      static_cast<double>(total_mapped) * static_cast<double>(config.epochs);
  const double lr_floor = config.initial_lr / 100.0;
  size_t scanned = 0;
  size_t total_pairs = 0;
  std::vector<int> kept;
  std::vector<double> grad_v(dim);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double loss_sum = 0.0;
    size_t pairs = 0;
    for (const auto& seq : mapped) {
      if (seq.empty()) continue;
      // one rate per document, from the fraction of tokens scanned so far
      const double progress = static_cast<double>(scanned) / total_span;
      const double lr = std::max(lr_floor, config.initial_lr * (1.0 - 0.99 * progress));

      kept.clear();
      for (const int id : seq) {
        ++scanned;
        if (config.subsample_t > 0.0) {
          const double r = config.subsample_t * static_cast<double>(total_mapped) /
                           static_cast<double>(model.counts[id]);
          const double keep_p = std::sqrt(r) + r;
          if (rng.next_double() >= keep_p) continue;
        }
        kept.push_back(id);
      }

      const int len = static_cast<int>(kept.size());
      for (int i = 0; i < len; ++i) {
        const int width = 1 + static_cast<int>(rng.next_bounded(config.window));
        const int c = kept[i];
        auto& v_c = model.w_in[c];
        const int lo = std::max(0, i - width);
        const int hi = std::min(len - 1, i + width);
        for (int j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const int o = kept[j];
          std::fill(grad_v.begin(), grad_v.end(), 0.0);

          auto& u_o = model.w_out[o];
          double s = 0.0;
          for (int d = 0; d < dim; ++d) s += u_o[d] * v_c[d];
          const double g_pos = sigmoid(s) - 1.0;
          loss_sum += softplus(-s);
          for (int d = 0; d < dim; ++d) {
            const double old = u_o[d];
            grad_v[d] += g_pos * old;
            u_o[d] = old - lr * g_pos * v_c[d];
          }

          for (int k = 0; k < config.negatives; ++k) {
            const int n_id = sampler.draw(rng);
            if (n_id == o) continue;  // drawn but not updated
            auto& u_n = model.w_out[n_id];
            double sn = 0.0;
            for (int d = 0; d < dim; ++d) sn += u_n[d] * v_c[d];
            const double g_neg = sigmoid(sn);
            loss_sum += softplus(sn);
            for (int d = 0; d < dim; ++d) {
              const double old = u_n[d];
              grad_v[d] += g_neg * old;
              u_n[d] = old - lr * g_neg * v_c[d];
            }
          }

          for (int d = 0; d < dim; ++d) v_c[d] -= lr * grad_v[d];
          ++pairs;
        }
      }
    }
    model.epoch_loss.push_back(pairs > 0 ? loss_sum / static_cast<double>(pairs) : 0.0);
    total_pairs += pairs;
  }

  if (total_pairs == 0) {
    model.warning = "no training pairs were generated; model equals its initialization";
  }
  return model;
}

const std::vector<double>& vector_of(const EmbeddingModel& model, const std::string& term) {
  const int id = model.vocab.id_of(term);
  if (id < 0) fail(errc::not_found, "term not in embedding vocabulary: " + term);
  return model.w_in[id];
}

double cosine_strict(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) fail(errc::config, "cosine of vectors with different lengths");
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) fail(errc::data, "cosine of a zero vector is undefined");
  return std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

std::vector<std::pair<std::string, double>> nearest(const EmbeddingModel& model,
                                                    const std::string& term, int n) {
  const int query = model.vocab.id_of(term);
  if (query < 0) fail(errc::not_found, "term not in embedding vocabulary: " + term);
  if (n <= 0) return {};
  std::vector<std::pair<double, int>> scored;
  scored.reserve(model.vocab.size());
  const auto& q = model.w_in[query];
  double qq = 0.0;
  for (double x : q) qq += x * x;
  if (qq == 0.0) fail(errc::data, "query vector has zero norm");
  for (int id = 0; id < model.vocab.size(); ++id) {
    if (id == query) continue;
    const auto& c = model.w_in[id];
    double cc = 0.0, qc = 0.0;
    for (size_t d = 0; d < c.size(); ++d) {
      cc += c[d] * c[d];
      qc += q[d] * c[d];
    }
    if (cc == 0.0) continue;
    scored.emplace_back(std::clamp(qc / (std::sqrt(qq) * std::sqrt(cc)), -1.0, 1.0), id);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (scored.size() > static_cast<size_t>(n)) scored.resize(n);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(scored.size());
  for (const auto& [score, id] : scored) {
    out.emplace_back(model.vocab.id_to_term[id], score);
  }
  return out;
}

void save_embedding(const EmbeddingModel& model, const std::string& path,
                    uint64_t config_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write embedding model: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_raw(out, config_hash);
  write_raw(out, static_cast<int32_t>(model.dim));
  write_raw(out, static_cast<int32_t>(model.vocab.size()));
  write_raw(out, model.seed);
  write_raw(out, static_cast<int32_t>(model.config.window));
  write_raw(out, static_cast<int32_t>(model.config.negatives));
  write_raw(out, static_cast<int32_t>(model.config.epochs));
  write_raw(out, model.config.initial_lr);
  write_raw(out, static_cast<int32_t>(model.config.min_count));
  write_raw(out, model.config.subsample_t);
  write_raw(out, static_cast<uint32_t>(model.epoch_loss.size()));
  for (double x : model.epoch_loss) write_raw(out, x);
  write_raw(out, static_cast<uint32_t>(model.warning.size()));
  out.write(model.warning.data(), static_cast<std::streamsize>(model.warning.size()));
  for (int id = 0; id < model.vocab.size(); ++id) {
    const auto& term = model.vocab.id_to_term[id];
    write_raw(out, static_cast<uint32_t>(term.size()));
    out.write(term.data(), static_cast<std::streamsize>(term.size()));
    write_raw(out, static_cast<int64_t>(model.counts[id]));
    write_raw(out, static_cast<int32_t>(model.vocab.doc_freq[id]));
  }
  for (const auto& row : model.w_in) {
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  for (const auto& row : model.w_out) {
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) fail(errc::io, "write failed: " + path);
}

EmbeddingModel load_embedding(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open embedding model: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 8, kMagic)) {
    fail(errc::data, "not an embedding model file: " + path);
  }
  const uint64_t hash = read_raw<uint64_t>(in);
  if (config_hash) *config_hash = hash;
  EmbeddingModel model;
  model.dim = read_raw<int32_t>(in);
  const int32_t v = read_raw<int32_t>(in);
  model.seed = read_raw<uint64_t>(in);
  model.config.dim = model.dim;
  model.config.window = read_raw<int32_t>(in);
  model.config.negatives = read_raw<int32_t>(in);
  model.config.epochs = read_raw<int32_t>(in);
  model.config.initial_lr = read_raw<double>(in);
  model.config.min_count = read_raw<int32_t>(in);
  model.config.subsample_t = read_raw<double>(in);
  if (model.dim < 1 || v < 0) fail(errc::data, "corrupt embedding header: " + path);
  const uint32_t n_loss = read_raw<uint32_t>(in);
  model.epoch_loss.resize(n_loss);
  for (auto& x : model.epoch_loss) x = read_raw<double>(in);
  const uint32_t warn_len = read_raw<uint32_t>(in);
  model.warning.resize(warn_len);
  in.read(model.warning.data(), warn_len);
  for (int32_t id = 0; id < v; ++id) {
    const uint32_t len = read_raw<uint32_t>(in);
    std::string term(len, '\0');
    in.read(term.data(), len);
    model.counts.push_back(read_raw<int64_t>(in));
    model.vocab.doc_freq.push_back(read_raw<int32_t>(in));
    model.vocab.term_to_id.emplace(term, id);
    model.vocab.id_to_term.push_back(std::move(term));
  }
  model.w_in.assign(v, std::vector<double>(model.dim));
  for (auto& row : model.w_in) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  model.w_out.assign(v, std::vector<double>(model.dim));
  for (auto& row : model.w_out) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!in) fail(errc::data, "truncated embedding model file: " + path);
  return model;
}

void export_text(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write embedding text export: " + path);
  out << model.vocab.size() << ' ' << model.dim << '\n';
  out << std::setprecision(17);
  for (int id = 0; id < model.vocab.size(); ++id) {
    out << model.vocab.id_to_term[id];
    for (double x : model.w_in[id]) out << ' ' << x;
    out << '\n';
  }
  if (!out) fail(errc::io, "write failed: " + path);
}

}  // namespace tt
