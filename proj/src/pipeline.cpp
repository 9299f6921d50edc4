#include "pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "analysis.hpp"
#include "coherence.hpp"
#include "corpus.hpp"
#include "dedup.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "hash.hpp"
#include "lda.hpp"
#include "normalize.hpp"
#include "report.hpp"
#include "sentiment.hpp"
#include "text.hpp"
#include "vocab.hpp"

namespace fs = std::filesystem;

namespace tt {

using nlohmann::json;

namespace {

const std::vector<FieldSpec> kFields = {
    {"paths.corpus", FieldType::text, "", "input corpus, one JSON record per line"},
    {"paths.out_dir", FieldType::text, "out", "directory for stage artifacts"},
    {"paths.stopwords", FieldType::text_list, "", "stopword files, one word per line (sets are unioned)"},
    {"paths.lemmas", FieldType::text, "", "lemma dictionary, surface<TAB>lemma per line"},
    {"paths.lexicon", FieldType::text, "", "polarity lexicon file"},
    {"corpus.id_field", FieldType::text, "id", "record field holding the document id"},
    {"corpus.text_field", FieldType::text, "text", "record field holding the text"},
    {"corpus.author_field", FieldType::text, "author_id", "record field holding the author id"},
    {"corpus.created_field", FieldType::text, "created_at", "record field holding the ISO date"},
    {"corpus.hashtags_field", FieldType::text, "hashtags", "record field holding the hashtag list"},
    {"corpus.lang_field", FieldType::text, "lang_hint", "record field holding the language hint"},
    {"corpus.hashtag_filter", FieldType::text_list, "", "keep only documents carrying one of these hashtags (empty keeps all)"},
    {"normalize.strip_urls", FieldType::boolean, "true", "drop URL tokens"},
    {"normalize.strip_media_tags", FieldType::boolean, "true", "drop pic.twitter.com media tokens"},
    {"normalize.keep_hashtags", FieldType::boolean, "true", "keep hashtag tokens (without '#'); false drops them"},
    {"normalize.keep_mentions", FieldType::boolean, "false", "keep @mention tokens (without '@')"},
    {"normalize.fold_diacritics", FieldType::boolean, "false", "fold Latin-1 diacritics (ã -> a)"},
    {"normalize.min_token_len", FieldType::integer, "2", "minimum token length in code points"},
    {"dedup.min_size", FieldType::integer, "2", "smallest repetition cluster to report"},
    {"dedup.near_threshold", FieldType::real, "0.9", "Jaccard threshold for near-duplicate pairs, in (0,1]"},
    {"dedup.shingle_k", FieldType::integer, "3", "tokens per shingle"},
    {"dedup.policy", FieldType::text, "keep_first", "prune policy: keep_first or drop_all"},
    {"lda.k", FieldType::integer, "5", "number of topics"},
    {"lda.alpha", FieldType::real, "0", "document-topic prior; 0 selects 50/k"},
    {"lda.beta", FieldType::real, "0.01", "topic-word prior"},
    {"lda.iterations", FieldType::integer, "1000", "Gibbs sweeps"},
    {"lda.seed", FieldType::integer, "42", "topic model PRNG seed"},
    {"lda.min_df", FieldType::integer, "1", "drop terms in fewer documents"},
    {"lda.max_df_ratio", FieldType::real, "1", "drop terms in more than this fraction of documents"},
    {"coherence.window", FieldType::integer, "110", "sliding window size in tokens"},
    {"coherence.top_n", FieldType::integer, "10", "top words per topic entering the score"},
    {"coherence.sweep_kmax", FieldType::integer, "0", "also score fresh models for k=2..kmax (0 = off)"},
    {"embedding.dim", FieldType::integer, "100", "vector dimensionality"},
    {"embedding.window", FieldType::integer, "5", "maximum context half-width (sampled per position)"},
    {"embedding.negatives", FieldType::integer, "5", "negative samples per context"},
    {"embedding.epochs", FieldType::integer, "5", "training passes"},
    {"embedding.initial_lr", FieldType::real, "0.025", "starting learning rate (decays to 1/100)"},
    {"embedding.min_count", FieldType::integer, "5", "drop terms seen fewer times"},
    {"embedding.subsample_t", FieldType::real, "1e-05", "frequent-word subsampling threshold (0 disables)"},
    {"embedding.seed", FieldType::integer, "1234", "embedding PRNG seed"},
    {"embedding.export_text", FieldType::boolean, "false", "also write embedding.txt in the plain text layout"},
    {"sentiment.top_n", FieldType::integer, "5", "polar words to rank"},
    {"analysis.opinions", FieldType::text_list, "", "opinion lemmas; empty uses the polar-word ranking"},
    {"analysis.top_n", FieldType::integer, "10", "topic words entering each affinity cell"},
    {"analysis.mode", FieldType::text, "embedding", "affinity representation: embedding or bow"},
    {"analysis.exclude_self", FieldType::boolean, "false", "drop the opinion word from its own topic side"},
};

const char* type_name(FieldType t) {
  switch (t) {
    case FieldType::text: return "text";
    case FieldType::boolean: return "boolean";
    case FieldType::integer: return "integer";
    case FieldType::real: return "real";
    case FieldType::text_list: return "list";
  }
  return "?";
}

json parse_typed(const FieldSpec& spec, const std::string& value) {
  switch (spec.type) {
    case FieldType::text:
      return value;
    case FieldType::boolean: {
      if (value == "true" || value == "1" || value == "yes") return true;
      if (value == "false" || value == "0" || value == "no") return false;
      fail(errc::config, std::string(spec.key) + " expects true or false, got '" + value + "'");
    }
    case FieldType::integer: {
      char* end = nullptr;
      const long long v = std::strtoll(value.c_str(), &end, 10);
      if (end == value.c_str() || *end != '\0') {
        fail(errc::config, std::string(spec.key) + " expects an integer, got '" + value + "'");
      }
      return v;
    }
    case FieldType::real: {
      char* end = nullptr;
      const double v = std::strtod(value.c_str(), &end);
      if (end == value.c_str() || *end != '\0') {
        fail(errc::config, std::string(spec.key) + " expects a number, got '" + value + "'");
      }
      return v;
    }
    case FieldType::text_list: {
      json arr = json::array();
      size_t start = 0;
      while (start <= value.size()) {
        const size_t end = value.find(',', start);
        const std::string part =
            trim(end == std::string::npos ? value.substr(start) : value.substr(start, end - start));
        if (!part.empty()) arr.push_back(part);
        if (end == std::string::npos) break;
        start = end + 1;
      }
      return arr;
    }
  }
  fail(errc::internal, "unhandled field type");
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  const size_t dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= key.size()) {
    fail(errc::config, "unknown config field '" + key + "'");
  }
  return {key.substr(0, dot), key.substr(dot + 1)};
}

}  // namespace

const std::vector<FieldSpec>& PipelineConfig::fields() { return kFields; }

const FieldSpec* PipelineConfig::find_field(const std::string& key) {
  for (const auto& spec : kFields) {
    if (key == spec.key) return &spec;
  }
  return nullptr;
}

PipelineConfig::PipelineConfig() {
  for (const auto& spec : kFields) {
    const auto [section, name] = split_key(spec.key);
    tree_[section][name] = parse_typed(spec, spec.default_value);
  }
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open config file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    fail(errc::config, "config file is not a JSON object: " + path);
  }
  PipelineConfig cfg;
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) {
      fail(errc::config, "config section '" + section + "' must be an object");
    }
    for (const auto& [name, value] : body.items()) {
      const std::string key = section + "." + name;
      const FieldSpec* spec = find_field(key);
      if (!spec) fail(errc::config, "unknown config field '" + key + "'");
      bool ok = false;
      json stored;
      switch (spec->type) {
        case FieldType::text:
          if ((ok = value.is_string())) stored = value;
          break;
        case FieldType::boolean:
          if ((ok = value.is_boolean())) stored = value;
          break;
        case FieldType::integer:
          if ((ok = value.is_number_integer())) stored = value.get<long long>();
          break;
        case FieldType::real:
          if ((ok = value.is_number())) stored = value.get<double>();
          break;
        case FieldType::text_list:
          if (value.is_array()) {
            ok = std::all_of(value.begin(), value.end(),
                             [](const json& v) { return v.is_string(); });
            stored = value;
          }
          break;
      }
      if (!ok) {
        fail(errc::config,
             "config field '" + key + "' must be a " + type_name(spec->type));
      }
      cfg.tree_[section][name] = std::move(stored);
    }
  }
  return cfg;
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  const FieldSpec* spec = find_field(key);
  if (!spec) fail(errc::config, "unknown config field '" + key + "'");
  const auto [section, name] = split_key(key);
  tree_[section][name] = parse_typed(*spec, value);
}

std::string PipelineConfig::text(const std::string& key) const {
  const auto [section, name] = split_key(key);
  return tree_.at(section).at(name).get<std::string>();
}

bool PipelineConfig::flag(const std::string& key) const {
  const auto [section, name] = split_key(key);
  return tree_.at(section).at(name).get<bool>();
}

long long PipelineConfig::integer(const std::string& key) const {
  const auto [section, name] = split_key(key);
  return tree_.at(section).at(name).get<long long>();
}

double PipelineConfig::real(const std::string& key) const {
  const auto [section, name] = split_key(key);
  return tree_.at(section).at(name).get<double>();
}

std::vector<std::string> PipelineConfig::list(const std::string& key) const {
  const auto [section, name] = split_key(key);
  return tree_.at(section).at(name).get<std::vector<std::string>>();
}

uint64_t PipelineConfig::hash() const {
  json pruned = tree_;
  pruned["paths"].erase("out_dir");
  return fnv1a64(pruned.dump());
}

std::string PipelineConfig::help_text() {
  std::ostringstream out;
  out << "configuration fields (config file sections or --set key=value):\n";
  std::string section;
  for (const auto& spec : kFields) {
    const std::string this_section = split_key(spec.key).first;
    if (this_section != section) {
      section = this_section;
      out << '\n';
    }
    out << "  " << spec.key << "  (" << type_name(spec.type) << ", default ";
    if (spec.default_value[0] == '\0') {
      out << (spec.type == FieldType::text_list ? "empty list" : "empty");
    } else {
      out << spec.default_value;
    }
    out << ")\n      " << spec.help << '\n';
  }
  return out.str();
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = {"ingest",    "normalize", "dedup",
                                                 "lda",       "embed",     "coherence",
                                                 "sentiment", "analyze",   "report"};
  return names;
}

void write_meta(const std::string& artifact_path, const std::string& schema,
                uint64_t config_hash, const json& extra) {
  json j = extra;
  j["schema"] = schema;
  j["config_hash"] = config_hash;
  const std::string path = artifact_path + ".meta";
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write artifact meta: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

json read_meta(const std::string& artifact_path, const std::string& schema) {
  const std::string path = artifact_path + ".meta";
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open artifact meta: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != schema) {
    fail(errc::data, "unexpected artifact meta schema in " + path);
  }
  return j;
}

void check_lineage(uint64_t artifact_hash, uint64_t config_hash, const std::string& artifact) {
  if (artifact_hash != config_hash) {
    fail(errc::data, "artifact '" + artifact +
                         "' was produced under a different configuration; rerun the earlier "
                         "stages with the current config");
  }
}

namespace {

std::string in_out_dir(const PipelineConfig& cfg, const char* name) {
  return (fs::path(cfg.text("paths.out_dir")) / name).string();
}

void require_artifact(const PipelineConfig& cfg, const char* name, const char* producer) {
  if (!fs::exists(in_out_dir(cfg, name))) {
    fail(errc::data, std::string("missing artifact '") + name + "'; run the " + producer +
                         " stage first");
  }
}

Corpus load_stage_corpus(const PipelineConfig& cfg, const char* name, const char* producer) {
  require_artifact(cfg, name, producer);
  const std::string path = in_out_dir(cfg, name);
  const json meta = read_meta(path, "tweettopics/corpus@1");
  check_lineage(meta.value("config_hash", 0ULL), cfg.hash(), name);
  return load_corpus(path).corpus;
}

std::vector<TokenizedDoc> load_stage_tokens(const PipelineConfig& cfg, const char* name,
                                            const char* producer) {
  require_artifact(cfg, name, producer);
  const std::string path = in_out_dir(cfg, name);
  const json meta = read_meta(path, "tweettopics/tokens@1");
  check_lineage(meta.value("config_hash", 0ULL), cfg.hash(), name);
  return load_tokens(path);
}

CorpusSchema schema_from(const PipelineConfig& cfg) {
  CorpusSchema schema;
  schema.id = cfg.text("corpus.id_field");
  schema.text = cfg.text("corpus.text_field");
  schema.author = cfg.text("corpus.author_field");
  schema.created = cfg.text("corpus.created_field");
  schema.hashtags = cfg.text("corpus.hashtags_field");
  schema.lang = cfg.text("corpus.lang_field");
  return schema;
}

LdaParams lda_params_from(const PipelineConfig& cfg) {
  LdaParams params;
  params.k = static_cast<int>(cfg.integer("lda.k"));
  params.alpha = cfg.real("lda.alpha");
  params.beta = cfg.real("lda.beta");
  params.iterations = static_cast<int>(cfg.integer("lda.iterations"));
  params.seed = static_cast<uint64_t>(cfg.integer("lda.seed"));
  return params;
}

Vocabulary stage_vocab(const PipelineConfig& cfg, const std::vector<TokenizedDoc>& docs) {
  return build_vocab(docs, static_cast<int>(cfg.integer("lda.min_df")),
                     cfg.real("lda.max_df_ratio"));
}

void run_ingest(const PipelineConfig& cfg) {
  const std::string input = cfg.text("paths.corpus");
  if (input.empty()) fail(errc::config, "paths.corpus is required for the ingest stage");
  LoadResult loaded = load_corpus(input, schema_from(cfg));
  Corpus corpus = std::move(loaded.corpus);

  const auto filter_tags = cfg.list("corpus.hashtag_filter");
  if (!filter_tags.empty()) {
    std::set<std::string> tags;
    for (const auto& raw : filter_tags) {
      const auto tag = normalize_hashtag(raw);
      if (!tag) fail(errc::config, "corpus.hashtag_filter contains an unusable tag: " + raw);
      tags.insert(*tag);
    }
    corpus = filter_by_hashtags(corpus, tags);
  }

  const std::string path = in_out_dir(cfg, artifact::corpus);
  save_corpus(corpus, path);
  json extra;
  extra["documents"] = corpus.size();
  extra["skipped_lines"] = loaded.skipped_lines;
  extra["source_meta"] = corpus.source_meta;
  write_meta(path, "tweettopics/corpus@1", cfg.hash(), extra);
}

void run_normalize(const PipelineConfig& cfg) {
  const Corpus corpus = load_stage_corpus(cfg, artifact::corpus, "ingest");

  NormalizeConfig ncfg;
  ncfg.strip_urls = cfg.flag("normalize.strip_urls");
  ncfg.strip_media_tags = cfg.flag("normalize.strip_media_tags");
  ncfg.keep_hashtags = cfg.flag("normalize.keep_hashtags");
  ncfg.keep_mentions = cfg.flag("normalize.keep_mentions");
  ncfg.fold_diacritics = cfg.flag("normalize.fold_diacritics");
  ncfg.min_token_len = static_cast<int>(cfg.integer("normalize.min_token_len"));
  for (const auto& file : cfg.list("paths.stopwords")) ncfg.load_stopword_file(file);
  const std::string lemma_file = cfg.text("paths.lemmas");
  if (!lemma_file.empty()) ncfg.load_lemma_file(lemma_file);
  const auto warnings = ncfg.validate();

  const auto tokens = normalize_pipeline(corpus, ncfg);
  size_t empty = 0;
  for (const auto& doc : tokens) empty += doc.empty_after_normalize ? 1 : 0;

  const std::string path = in_out_dir(cfg, artifact::tokens);
  save_tokens(tokens, path);
  json extra;
  extra["documents"] = tokens.size();
  extra["empty_documents"] = empty;
  extra["warnings"] = warnings;
  write_meta(path, "tweettopics/tokens@1", cfg.hash(), extra);
}

PrunePolicy policy_from(const PipelineConfig& cfg) {
  const std::string policy = cfg.text("dedup.policy");
  if (policy == "keep_first") return PrunePolicy::keep_first;
  if (policy == "drop_all") return PrunePolicy::drop_all;
  fail(errc::config, "dedup.policy must be keep_first or drop_all, got '" + policy + "'");
}

void run_dedup(const PipelineConfig& cfg) {
  const Corpus corpus = load_stage_corpus(cfg, artifact::corpus, "ingest");
  const auto tokens = load_stage_tokens(cfg, artifact::tokens, "normalize");

  std::unordered_map<std::string, std::string> authors;
  for (const auto& doc : corpus.documents) {
    if (!doc.author_id.empty()) authors.emplace(doc.id, doc.author_id);
  }
  const DedupReport report = find_repetition_clusters(
      tokens, static_cast<int>(cfg.integer("dedup.min_size")), cfg.real("dedup.near_threshold"),
      static_cast<int>(cfg.integer("dedup.shingle_k")), authors);
  save_dedup_report(report, in_out_dir(cfg, artifact::dedup_report), cfg.hash());

  const PrunePolicy policy = policy_from(cfg);
  const Corpus pruned = prune_corpus(corpus, report, policy);
  const auto removed = removed_doc_ids(report, policy);
  const auto tokens_pruned = prune_tokens(tokens, removed);

  const std::string cpath = in_out_dir(cfg, artifact::corpus_pruned);
  save_corpus(pruned, cpath);
  json cextra;
  cextra["documents"] = pruned.size();
  cextra["removed"] = removed.size();
  write_meta(cpath, "tweettopics/corpus@1", cfg.hash(), cextra);

  const std::string tpath = in_out_dir(cfg, artifact::tokens_pruned);
  save_tokens(tokens_pruned, tpath);
  json textra;
  textra["documents"] = tokens_pruned.size();
  textra["removed"] = removed.size();
  write_meta(tpath, "tweettopics/tokens@1", cfg.hash(), textra);
}

void run_lda(const PipelineConfig& cfg) {
  const auto tokens = load_stage_tokens(cfg, artifact::tokens_pruned, "dedup");
  const Vocabulary vocab = stage_vocab(cfg, tokens);
  const TopicModel model = train_lda(tokens, vocab, lda_params_from(cfg));
  save_topic_model(model, in_out_dir(cfg, artifact::lda_model), cfg.hash());
}

void run_embed(const PipelineConfig& cfg) {
  const auto tokens = load_stage_tokens(cfg, artifact::tokens_pruned, "dedup");
  const Vocabulary vocab = stage_vocab(cfg, tokens);
  SkipgramConfig scfg;
  scfg.dim = static_cast<int>(cfg.integer("embedding.dim"));
  scfg.window = static_cast<int>(cfg.integer("embedding.window"));
  scfg.negatives = static_cast<int>(cfg.integer("embedding.negatives"));
  scfg.epochs = static_cast<int>(cfg.integer("embedding.epochs"));
  scfg.initial_lr = cfg.real("embedding.initial_lr");
  scfg.min_count = static_cast<int>(cfg.integer("embedding.min_count"));
  scfg.subsample_t = cfg.real("embedding.subsample_t");
  const EmbeddingModel model =
      train_skipgram(tokens, vocab, scfg, static_cast<uint64_t>(cfg.integer("embedding.seed")));
  save_embedding(model, in_out_dir(cfg, artifact::embedding), cfg.hash());
  if (cfg.flag("embedding.export_text")) {
    export_text(model, in_out_dir(cfg, artifact::embedding_text));
  }
}

void run_coherence(const PipelineConfig& cfg) {
  require_artifact(cfg, artifact::lda_model, "lda");
  uint64_t model_hash = 0;
  const TopicModel model = load_topic_model(in_out_dir(cfg, artifact::lda_model), &model_hash);
  check_lineage(model_hash, cfg.hash(), artifact::lda_model);
  const auto tokens = load_stage_tokens(cfg, artifact::tokens_pruned, "dedup");

  const int top_n = static_cast<int>(cfg.integer("coherence.top_n"));
  const int window = static_cast<int>(cfg.integer("coherence.window"));
  const auto scores = cv_topic_scores(model, tokens, top_n, window);
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());

  json j;
  j["schema"] = "tweettopics/coherence@1";
  j["config_hash"] = cfg.hash();
  j["window"] = window;
  j["top_n"] = top_n;
  j["per_topic"] = scores;
  j["mean"] = mean;

  const int kmax = static_cast<int>(cfg.integer("coherence.sweep_kmax"));
  if (kmax >= 2) {
    const Vocabulary vocab = stage_vocab(cfg, tokens);
    json sweep = json::array();
    for (int k = 2; k <= kmax; ++k) {
      LdaParams params = lda_params_from(cfg);
      params.k = k;
      const TopicModel swept = train_lda(tokens, vocab, params);
      sweep.push_back({{"k", k}, {"mean", cv_coherence(swept, tokens, top_n, window)}});
    }
    j["k_sweep"] = std::move(sweep);
  }

  const std::string path = in_out_dir(cfg, artifact::coherence);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write coherence scores: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

void run_sentiment(const PipelineConfig& cfg) {
  const std::string lexicon_path = cfg.text("paths.lexicon");
  if (lexicon_path.empty()) {
    fail(errc::config, "paths.lexicon is required for the sentiment stage");
  }
  const SentimentLexicon lexicon = parse_lexicon(lexicon_path);
  const auto tokens = load_stage_tokens(cfg, artifact::tokens_pruned, "dedup");
  const PolarWordRanking ranking =
      top_polar_words(tokens, lexicon, static_cast<int>(cfg.integer("sentiment.top_n")));
  save_polar_ranking(ranking, in_out_dir(cfg, artifact::polar_words), cfg.hash());
}

void run_analyze(const PipelineConfig& cfg) {
  require_artifact(cfg, artifact::lda_model, "lda");
  require_artifact(cfg, artifact::embedding, "embed");
  require_artifact(cfg, artifact::polar_words, "sentiment");

  uint64_t h = 0;
  const TopicModel model = load_topic_model(in_out_dir(cfg, artifact::lda_model), &h);
  check_lineage(h, cfg.hash(), artifact::lda_model);
  const EmbeddingModel emb = load_embedding(in_out_dir(cfg, artifact::embedding), &h);
  check_lineage(h, cfg.hash(), artifact::embedding);
  const PolarWordRanking ranking = load_polar_ranking(in_out_dir(cfg, artifact::polar_words), &h);
  check_lineage(h, cfg.hash(), artifact::polar_words);

  std::vector<std::string> opinions = cfg.list("analysis.opinions");
  if (opinions.empty()) {
    for (const auto& w : ranking.ranked) opinions.push_back(w.lemma);
  }
  if (opinions.empty()) {
    fail(errc::data,
         "no opinion words: the polar ranking is empty and analysis.opinions is not set");
  }

  const AffinityMatrix affinity = opinion_topic_affinity(
      model, emb, opinions, static_cast<int>(cfg.integer("analysis.top_n")),
      affinity_mode_from(cfg.text("analysis.mode")), cfg.flag("analysis.exclude_self"));
  save_affinity(affinity, in_out_dir(cfg, artifact::affinity), cfg.hash());

  const IntertopicMap map = build_intertopic_map(model);
  save_intertopic(map, in_out_dir(cfg, artifact::intertopic), cfg.hash());
}

}  // namespace

void run_stage(const PipelineConfig& config, const std::string& stage) {
  const std::string out_dir = config.text("paths.out_dir");
  if (out_dir.empty()) fail(errc::config, "paths.out_dir must not be empty");
  fs::create_directories(out_dir);

  if (stage == "pipeline") {
    for (const auto& name : stage_names()) run_stage(config, name);
    return;
  }
  if (stage == "ingest") {
    run_ingest(config);
  } else if (stage == "normalize") {
    run_normalize(config);
  } else if (stage == "dedup") {
    run_dedup(config);
  } else if (stage == "lda") {
    run_lda(config);
  } else if (stage == "embed") {
    run_embed(config);
  } else if (stage == "coherence") {
    run_coherence(config);
  } else if (stage == "sentiment") {
    run_sentiment(config);
  } else if (stage == "analyze") {
    run_analyze(config);
  } else if (stage == "report") {
    emit_report(config);
  } else {
    fail(errc::config, "unknown stage '" + stage + "'");
  }
}

}  // namespace tt
