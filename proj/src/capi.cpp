#include "tweettopics.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "corpus.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "lda.hpp"
#include "pipeline.hpp"
#include "sentiment.hpp"

struct tt_config {
  tt::PipelineConfig impl;
};
struct tt_corpus {
  tt::Corpus impl;
};
struct tt_topic_model {
  tt::TopicModel impl;
};
struct tt_embedding {
  tt::EmbeddingModel impl;
};
struct tt_lexicon {
  tt::SentimentLexicon impl;
};

namespace {

thread_local std::string g_last_error;

tt_status map_code(tt::errc code) {
  switch (code) {
    case tt::errc::config: return TT_ERR_CONFIG;
    case tt::errc::io: return TT_ERR_IO;
    case tt::errc::data: return TT_ERR_DATA;
    case tt::errc::not_found: return TT_ERR_NOT_FOUND;
    case tt::errc::internal: return TT_ERR_INTERNAL;
  }
  return TT_ERR_INTERNAL;
}

template <typename F>
tt_status guarded(F&& f) {
  try {
    f();
    return TT_OK;
  } catch (const tt::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return TT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tt_status arg_error(const char* msg) {
  g_last_error = msg;
  return TT_ERR_CONFIG;
}

}  // namespace

extern "C" {

const char* tt_version(void) { return "tweettopics 0.1.0"; }

const char* tt_last_error(void) { return g_last_error.c_str(); }

void tt_string_free(char* s) { std::free(s); }

/* ---- configuration ------------------------------------------------- */

tt_config* tt_config_new(void) { return new (std::nothrow) tt_config{}; }

tt_status tt_config_load(const char* path, tt_config** out) {
  if (!path || !out) return arg_error("tt_config_load: NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new tt_config{tt::PipelineConfig::from_file(path)}; });
}

tt_status tt_config_set(tt_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return arg_error("tt_config_set: NULL argument");
  return guarded([&] { cfg->impl.set(key, value); });
}

tt_status tt_config_get(const tt_config* cfg, const char* key, char** out) {
  if (!cfg || !key || !out) return arg_error("tt_config_get: NULL argument");
  *out = nullptr;
  return guarded([&] {
    const tt::FieldSpec* spec = tt::PipelineConfig::find_field(key);
    if (!spec) tt::fail(tt::errc::config, std::string("unknown config field '") + key + "'");
    std::string text;
    switch (spec->type) {
      case tt::FieldType::text: text = cfg->impl.text(key); break;
      case tt::FieldType::boolean: text = cfg->impl.flag(key) ? "true" : "false"; break;
      case tt::FieldType::integer: text = std::to_string(cfg->impl.integer(key)); break;
      case tt::FieldType::real: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", cfg->impl.real(key));
        text = buf;
        break;
      }
      case tt::FieldType::text_list: {
        bool first = true;
        for (const auto& item : cfg->impl.list(key)) {
          if (!first) text += ',';
          text += item;
          first = false;
        }
        break;
      }
    }
    *out = dup_string(text);
    if (!*out) tt::fail(tt::errc::internal, "out of memory");
  });
}

uint64_t tt_config_hash(const tt_config* cfg) { return cfg ? cfg->impl.hash() : 0; }

char* tt_config_dump(const tt_config* cfg) {
  if (!cfg) return nullptr;
  return dup_string(cfg->impl.tree().dump(2));
}

char* tt_config_help(void) { return dup_string(tt::PipelineConfig::help_text()); }

void tt_config_free(tt_config* cfg) { delete cfg; }

/* ---- pipeline ------------------------------------------------------ */

char* tt_stage_names(void) {
  std::string joined;
  for (const auto& name : tt::stage_names()) {
    if (!joined.empty()) joined += '\n';
    joined += name;
  }
  return dup_string(joined);
}

tt_status tt_run_stage(const tt_config* cfg, const char* stage) {
  if (!cfg || !stage) return arg_error("tt_run_stage: NULL argument");
  return guarded([&] { tt::run_stage(cfg->impl, stage); });
}

/* ---- corpus -------------------------------------------------------- */

tt_status tt_corpus_load(const char* path, tt_corpus** out) {
  if (!path || !out) return arg_error("tt_corpus_load: NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new tt_corpus{tt::load_corpus(path).corpus}; });
}

size_t tt_corpus_size(const tt_corpus* corpus) { return corpus ? corpus->impl.size() : 0; }

tt_status tt_corpus_doc_id(const tt_corpus* corpus, size_t index, char** out) {
  if (!corpus || !out) return arg_error("tt_corpus_doc_id: NULL argument");
  *out = nullptr;
  return guarded([&] {
    if (index >= corpus->impl.size()) tt::fail(tt::errc::not_found, "document index out of range");
    *out = dup_string(corpus->impl.documents[index].id);
    if (!*out) tt::fail(tt::errc::internal, "out of memory");
  });
}

tt_status tt_corpus_doc_text(const tt_corpus* corpus, size_t index, char** out) {
  if (!corpus || !out) return arg_error("tt_corpus_doc_text: NULL argument");
  *out = nullptr;
  return guarded([&] {
    if (index >= corpus->impl.size()) tt::fail(tt::errc::not_found, "document index out of range");
    *out = dup_string(corpus->impl.documents[index].text);
    if (!*out) tt::fail(tt::errc::internal, "out of memory");
  });
}

void tt_corpus_free(tt_corpus* corpus) { delete corpus; }

/* ---- topic model ---------------------------------------------------- */

tt_status tt_topic_model_load(const char* path, tt_topic_model** out) {
  if (!path || !out) return arg_error("tt_topic_model_load: NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new tt_topic_model{tt::load_topic_model(path)}; });
}

int tt_topic_model_k(const tt_topic_model* model) { return model ? model->impl.k : 0; }

size_t tt_topic_model_vocab_size(const tt_topic_model* model) {
  return model ? model->impl.vocab.size() : 0;
}

tt_status tt_topic_top_words(const tt_topic_model* model, int topic, int n, char** out_json) {
  if (!model || !out_json) return arg_error("tt_topic_top_words: NULL argument");
  *out_json = nullptr;
  return guarded([&] {
    const auto words = tt::top_words(model->impl, topic, n);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [term, weight] : words) {
      j.push_back({{"term", term}, {"weight", weight}});
    }
    *out_json = dup_string(j.dump());
    if (!*out_json) tt::fail(tt::errc::internal, "out of memory");
  });
}

tt_status tt_topic_prevalence(const tt_topic_model* model, double* out, size_t len) {
  if (!model || !out) return arg_error("tt_topic_prevalence: NULL argument");
  return guarded([&] {
    if (len != static_cast<size_t>(model->impl.k)) {
      tt::fail(tt::errc::config, "tt_topic_prevalence: len must equal k");
    }
    const auto prevalence = tt::topic_prevalence(model->impl);
    for (size_t i = 0; i < len; ++i) out[i] = prevalence[i];
  });
}

void tt_topic_model_free(tt_topic_model* model) { delete model; }

/* ---- embeddings ------------------------------------------------------ */

tt_status tt_embedding_load(const char* path, tt_embedding** out) {
  if (!path || !out) return arg_error("tt_embedding_load: NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new tt_embedding{tt::load_embedding(path)}; });
}

int tt_embedding_dim(const tt_embedding* embedding) {
  return embedding ? embedding->impl.dim : 0;
}

size_t tt_embedding_vocab_size(const tt_embedding* embedding) {
  return embedding ? embedding->impl.vocab.size() : 0;
}

tt_status tt_embedding_vector(const tt_embedding* embedding, const char* term, double* out,
                              size_t len) {
  if (!embedding || !term || !out) return arg_error("tt_embedding_vector: NULL argument");
  return guarded([&] {
    if (len != static_cast<size_t>(embedding->impl.dim)) {
      tt::fail(tt::errc::config, "tt_embedding_vector: len must equal dim");
    }
    const auto& vec = tt::vector_of(embedding->impl, term);
    for (size_t i = 0; i < len; ++i) out[i] = vec[i];
  });
}

tt_status tt_embedding_nearest(const tt_embedding* embedding, const char* term, int n,
                               char** out_json) {
  if (!embedding || !term || !out_json) return arg_error("tt_embedding_nearest: NULL argument");
  *out_json = nullptr;
  return guarded([&] {
    const auto hits = tt::nearest(embedding->impl, term, n);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [word, cosine] : hits) {
      j.push_back({{"term", word}, {"cosine", cosine}});
    }
    *out_json = dup_string(j.dump());
    if (!*out_json) tt::fail(tt::errc::internal, "out of memory");
  });
}

void tt_embedding_free(tt_embedding* embedding) { delete embedding; }

/* ---- sentiment lexicon ----------------------------------------------- */

tt_status tt_lexicon_load(const char* path, tt_lexicon** out) {
  if (!path || !out) return arg_error("tt_lexicon_load: NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new tt_lexicon{tt::parse_lexicon(path)}; });
}

size_t tt_lexicon_size(const tt_lexicon* lexicon) {
  return lexicon ? lexicon->impl.entries.size() : 0;
}

tt_status tt_lexicon_polarity(const tt_lexicon* lexicon, const char* lemma, int* out) {
  if (!lexicon || !lemma || !out) return arg_error("tt_lexicon_polarity: NULL argument");
  return guarded([&] {
    const auto polarity = tt::classify_token(lexicon->impl, lemma);
    if (!polarity) tt::fail(tt::errc::not_found, std::string("lemma not in lexicon: ") + lemma);
    *out = *polarity;
  });
}

void tt_lexicon_free(tt_lexicon* lexicon) { delete lexicon; }

}  // extern "C"
