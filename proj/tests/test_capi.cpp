#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "test_support.hpp"
#include "tweettopics.h"

using nlohmann::json;

namespace {

// the C-surface twin of the pipeline fixture: tiny but runs every stage
void write_capi_fixture(tts::TempDir& dir) {
  std::string corpus;
  auto add = [&](const std::string& id, const std::string& text) {
    json j;
    j["id"] = id;
    j["author_id"] = "a" + id;
    j["created_at"] = "2018-10-07T10:00:00Z";
    j["text"] = text;
    corpus += j.dump() + "\n";
  };
  const char* extra[8] = {"hoje",  "ontem", "cedo",  "tarde",
                          "agora", "sempre", "quase", "enfim"};
  for (int i = 0; i < 8; ++i) {
    add("v" + std::to_string(i), std::string("o candidato venceu a eleição e a campanha comemora a vitória ") + extra[i]);
    add("t" + std::to_string(i), std::string("o regime torturou o preso e a ditadura espalhou o medo ") + extra[7 - i]);
  }
  add("dup1", "urna eletrônica sob ataque nas redes #fraude");
  add("dup2", "urna eletrônica sob ataque nas redes #fraude");
  tts::write_file(dir.file("tweets.jsonl"), corpus);
  tts::write_file(dir.file("stopwords.txt"), "o\na\ne\nnas\nsob\n");
  tts::write_file(dir.file("lemmas.tsv"), "venceu\tvencer\ntorturou\ttorturar\n");
  tts::write_file(dir.file("lexicon.txt"),
                  "vencer.PoS=V;TG=HUM:N0;POL:N0=1\n"
                  "torturar.PoS=V;TG=HUM:N0;POL:N0=-1\n"
                  "medo.PoS=N;TG=HUM:N0;POL:N0=-1\n"
                  "candidato.PoS=N;TG=HUM:N0;POL:N0=0\n");
}

tt_config* make_capi_config(tts::TempDir& dir) {
  write_capi_fixture(dir);
  tt_config* cfg = tt_config_new();
  REQUIRE(cfg != nullptr);
  struct KV {
    const char* key;
    std::string value;
  };
  const KV settings[] = {
      {"paths.corpus", dir.file("tweets.jsonl")},
      {"paths.out_dir", dir.file("out")},
      {"paths.stopwords", dir.file("stopwords.txt")},
      {"paths.lemmas", dir.file("lemmas.tsv")},
      {"paths.lexicon", dir.file("lexicon.txt")},
      {"lda.k", "2"},
      {"lda.iterations", "30"},
      {"coherence.window", "10"},
      {"coherence.top_n", "3"},
      {"embedding.dim", "6"},
      {"embedding.window", "2"},
      {"embedding.negatives", "2"},
      {"embedding.epochs", "2"},
      {"embedding.min_count", "1"},
      {"embedding.subsample_t", "0"},
      {"sentiment.top_n", "3"},
      {"analysis.opinions", "vencer,torturar"},
      {"analysis.mode", "bow"},
      {"analysis.top_n", "3"},
  };
  for (const auto& kv : settings) {
    REQUIRE(tt_config_set(cfg, kv.key, kv.value.c_str()) == TT_OK);
  }
  return cfg;
}

std::string take_string(char* s) {
  REQUIRE(s != nullptr);
  std::string copy(s);
  tt_string_free(s);
  return copy;
}

}  // namespace

TEST_CASE("version and error message basics") {
  const char* version = tt_version();
  REQUIRE(version != nullptr);
  CHECK(std::string(version).find("tweettopics") != std::string::npos);
  REQUIRE(tt_last_error() != nullptr);  // never NULL, even before any failure

  CHECK(tt_config_set(nullptr, "lda.k", "2") == TT_ERR_CONFIG);
  CHECK(std::string(tt_last_error()).find("NULL") != std::string::npos);
}

TEST_CASE("config handle lifecycle") {
  tt_config* cfg = tt_config_new();
  REQUIRE(cfg != nullptr);

  char* value = nullptr;
  REQUIRE(tt_config_get(cfg, "lda.k", &value) == TT_OK);
  CHECK(take_string(value) == "5");

  CHECK(tt_config_set(cfg, "lda.k", "7") == TT_OK);
  REQUIRE(tt_config_get(cfg, "lda.k", &value) == TT_OK);
  CHECK(take_string(value) == "7");

  REQUIRE(tt_config_get(cfg, "embedding.subsample_t", &value) == TT_OK);
  CHECK(take_string(value) == "1e-05");

  CHECK(tt_config_set(cfg, "analysis.opinions", "bom,mau") == TT_OK);
  REQUIRE(tt_config_get(cfg, "analysis.opinions", &value) == TT_OK);
  CHECK(take_string(value) == "bom,mau");

  CHECK(tt_config_set(cfg, "lda.k", "seven") == TT_ERR_CONFIG);
  CHECK(std::string(tt_last_error()).find("integer") != std::string::npos);
  CHECK(tt_config_set(cfg, "nope.nope", "1") == TT_ERR_CONFIG);
  CHECK(tt_config_get(cfg, "nope.nope", &value) == TT_ERR_CONFIG);

  const uint64_t h1 = tt_config_hash(cfg);
  CHECK(tt_config_set(cfg, "paths.out_dir", "/elsewhere") == TT_OK);
  CHECK(tt_config_hash(cfg) == h1);
  CHECK(tt_config_set(cfg, "lda.beta", "0.2") == TT_OK);
  CHECK(tt_config_hash(cfg) != h1);

  const std::string dump = take_string(tt_config_dump(cfg));
  const json parsed = json::parse(dump);
  CHECK(parsed["lda"]["beta"].get<double>() == 0.2);

  const std::string help = take_string(tt_config_help());
  CHECK(help.find("lda.k") != std::string::npos);
  CHECK(help.find("dedup.policy") != std::string::npos);

  tt_config_free(cfg);
  tt_config_free(nullptr);
}

TEST_CASE("config file loading through the C surface") {
  tts::TempDir dir;
  tts::write_file(dir.file("good.json"), R"({"lda": {"k": 4}})");
  tt_config* cfg = nullptr;
  REQUIRE(tt_config_load(dir.file("good.json").c_str(), &cfg) == TT_OK);
  char* value = nullptr;
  REQUIRE(tt_config_get(cfg, "lda.k", &value) == TT_OK);
  CHECK(take_string(value) == "4");
  tt_config_free(cfg);

  tts::write_file(dir.file("bad.json"), R"({"lda": {"kay": 4}})");
  tt_config* bad = nullptr;
  CHECK(tt_config_load(dir.file("bad.json").c_str(), &bad) == TT_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(tt_config_load(dir.file("absent.json").c_str(), &bad) == TT_ERR_IO);
}

TEST_CASE("stage names come in canonical order") {
  const std::string names = take_string(tt_stage_names());
  CHECK(names.rfind("ingest\n", 0) == 0);
  CHECK(names.find("\nreport") != std::string::npos);
  CHECK(names.find("coherence") != std::string::npos);
}

TEST_CASE("the pipeline and every reader handle work end to end") {
  tts::TempDir dir;
  tt_config* cfg = make_capi_config(dir);
  REQUIRE(tt_run_stage(cfg, "pipeline") == TT_OK);

  SUBCASE("corpus handle") {
    tt_corpus* corpus = nullptr;
    const std::string path = dir.file("out") + "/corpus_pruned.jsonl";
    REQUIRE(tt_corpus_load(path.c_str(), &corpus) == TT_OK);
    CHECK(tt_corpus_size(corpus) == 17);  // 18 raw minus one exact duplicate
    char* id = nullptr;
    REQUIRE(tt_corpus_doc_id(corpus, 0, &id) == TT_OK);
    CHECK(take_string(id) == "v0");
    char* text = nullptr;
    REQUIRE(tt_corpus_doc_text(corpus, 0, &text) == TT_OK);
    CHECK(take_string(text).find("candidato") != std::string::npos);
    CHECK(tt_corpus_doc_id(corpus, 999, &id) == TT_ERR_NOT_FOUND);
    tt_corpus_free(corpus);
    tt_corpus_free(nullptr);

    tt_corpus* missing = nullptr;
    CHECK(tt_corpus_load((dir.file("out") + "/nope.jsonl").c_str(), &missing) == TT_ERR_IO);
  }

  SUBCASE("topic model handle") {
    tt_topic_model* model = nullptr;
    const std::string path = dir.file("out") + "/lda_model.json";
    REQUIRE(tt_topic_model_load(path.c_str(), &model) == TT_OK);
    CHECK(tt_topic_model_k(model) == 2);
    CHECK(tt_topic_model_vocab_size(model) > 0);

    char* words_json = nullptr;
    REQUIRE(tt_topic_top_words(model, 0, 3, &words_json) == TT_OK);
    const json words = json::parse(take_string(words_json));
    REQUIRE(words.size() == 3);
    CHECK(words[0]["weight"].get<double>() >= words[1]["weight"].get<double>());
    CHECK(words[1]["weight"].get<double>() >= words[2]["weight"].get<double>());
    CHECK(tt_topic_top_words(model, 5, 3, &words_json) == TT_ERR_CONFIG);

    double prevalence[2] = {0.0, 0.0};
    REQUIRE(tt_topic_prevalence(model, prevalence, 2) == TT_OK);
    CHECK(std::abs(prevalence[0] + prevalence[1] - 1.0) < 1e-12);
    CHECK(tt_topic_prevalence(model, prevalence, 3) == TT_ERR_CONFIG);
    tt_topic_model_free(model);
  }

  SUBCASE("embedding handle") {
    tt_embedding* embedding = nullptr;
    const std::string path = dir.file("out") + "/embedding.bin";
    REQUIRE(tt_embedding_load(path.c_str(), &embedding) == TT_OK);
    CHECK(tt_embedding_dim(embedding) == 6);
    CHECK(tt_embedding_vocab_size(embedding) > 0);

    double vec[6];
    REQUIRE(tt_embedding_vector(embedding, "candidato", vec, 6) == TT_OK);
    CHECK(tt_embedding_vector(embedding, "zzz_not_here", vec, 6) == TT_ERR_NOT_FOUND);
    CHECK(tt_embedding_vector(embedding, "candidato", vec, 5) == TT_ERR_CONFIG);

    char* near_json = nullptr;
    REQUIRE(tt_embedding_nearest(embedding, "candidato", 3, &near_json) == TT_OK);
    const json near = json::parse(take_string(near_json));
    CHECK(near.size() == 3);
    for (const auto& entry : near) {
      CHECK(entry["term"].get<std::string>() != "candidato");
      CHECK(std::abs(entry["cosine"].get<double>()) <= 1.0);
    }
    tt_embedding_free(embedding);
  }

  SUBCASE("lexicon handle") {
    tt_lexicon* lexicon = nullptr;
    REQUIRE(tt_lexicon_load(dir.file("lexicon.txt").c_str(), &lexicon) == TT_OK);
    CHECK(tt_lexicon_size(lexicon) == 4);
    int polarity = 9;
    REQUIRE(tt_lexicon_polarity(lexicon, "vencer", &polarity) == TT_OK);
    CHECK(polarity == 1);
    REQUIRE(tt_lexicon_polarity(lexicon, "torturar", &polarity) == TT_OK);
    CHECK(polarity == -1);
    REQUIRE(tt_lexicon_polarity(lexicon, "candidato", &polarity) == TT_OK);
    CHECK(polarity == 0);
    CHECK(tt_lexicon_polarity(lexicon, "ausente", &polarity) == TT_ERR_NOT_FOUND);
    CHECK(std::string(tt_last_error()).find("ausente") != std::string::npos);
    tt_lexicon_free(lexicon);
  }

  SUBCASE("stale artifacts are refused with TT_ERR_DATA") {
    REQUIRE(tt_config_set(cfg, "lda.k", "3") == TT_OK);
    CHECK(tt_run_stage(cfg, "lda") == TT_ERR_DATA);
    CHECK(std::string(tt_last_error()).find("different configuration") != std::string::npos);
  }

  SUBCASE("unknown stages are config errors") {
    CHECK(tt_run_stage(cfg, "varnish") == TT_ERR_CONFIG);
    CHECK(tt_run_stage(cfg, nullptr) == TT_ERR_CONFIG);
  }

  tt_config_free(cfg);
}
