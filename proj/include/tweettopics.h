/* tweettopics: C interface to the tweet topic/sentiment pipeline.
 *
 * Conventions:
 *   - every function that can fail returns tt_status; TT_OK is 0
 *   - on failure, tt_last_error() returns a thread-local message that stays
 *     valid until the next failing call on the same thread
 *   - char** outputs are heap strings owned by the caller; release them with
 *     tt_string_free (never with your own allocator's free directly)
 *   - handles are opaque; each tt_X_free accepts NULL
 */

#ifndef TWEETTOPICS_H
#define TWEETTOPICS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
  TT_OK = 0,
  TT_ERR_CONFIG = 1,    /* bad parameters or configuration */
  TT_ERR_IO = 2,        /* file unreadable or unwritable */
  TT_ERR_DATA = 3,      /* input parsed but unusable, or lineage mismatch */
  TT_ERR_NOT_FOUND = 4, /* lookup missed (term, document, index) */
  TT_ERR_INTERNAL = 5,  /* invariant violation; report it */
} tt_status;

const char* tt_version(void);

/* Message for the most recent failure on this thread; empty, never NULL,
 * if nothing failed yet. */
const char* tt_last_error(void);

void tt_string_free(char* s);

/* ---- configuration ------------------------------------------------- */

typedef struct tt_config tt_config;

/* All defaults. */
tt_config* tt_config_new(void);

/* Strict JSON config file: unknown fields and type mismatches fail. */
tt_status tt_config_load(const char* path, tt_config** out);

/* Override one field, e.g. ("lda.k", "7"). Lists take comma-separated
 * values. */
tt_status tt_config_set(tt_config* cfg, const char* key, const char* value);

/* Current value of one field rendered as text (lists comma-joined). */
tt_status tt_config_get(const tt_config* cfg, const char* key, char** out);

/* Lineage hash: identical for configs that differ only in paths.out_dir. */
uint64_t tt_config_hash(const tt_config* cfg);

/* Canonical JSON of the full configuration. */
char* tt_config_dump(const tt_config* cfg);

/* Field table: every key, type, default and description. */
char* tt_config_help(void);

void tt_config_free(tt_config* cfg);

/* ---- pipeline ------------------------------------------------------ */

/* Newline-separated stage names in canonical order. */
char* tt_stage_names(void);

/* Runs one stage, or "pipeline" for all stages in order. Artifacts are
 * read and written under paths.out_dir and carry the config hash; a stage
 * rejects inputs produced under a different configuration (TT_ERR_DATA). */
tt_status tt_run_stage(const tt_config* cfg, const char* stage);

/* ---- corpus -------------------------------------------------------- */

typedef struct tt_corpus tt_corpus;

/* Loads a corpus JSONL artifact (canonical field names). */
tt_status tt_corpus_load(const char* path, tt_corpus** out);
size_t tt_corpus_size(const tt_corpus* corpus);
tt_status tt_corpus_doc_id(const tt_corpus* corpus, size_t index, char** out);
tt_status tt_corpus_doc_text(const tt_corpus* corpus, size_t index, char** out);
void tt_corpus_free(tt_corpus* corpus);

/* ---- topic model ---------------------------------------------------- */

typedef struct tt_topic_model tt_topic_model;

tt_status tt_topic_model_load(const char* path, tt_topic_model** out);
int tt_topic_model_k(const tt_topic_model* model);
size_t tt_topic_model_vocab_size(const tt_topic_model* model);

/* JSON array of {"term": ..., "weight": ...}, weight descending. */
tt_status tt_topic_top_words(const tt_topic_model* model, int topic, int n, char** out_json);

/* Fills out[0..k-1] with corpus-level topic prevalence; len must equal k. */
tt_status tt_topic_prevalence(const tt_topic_model* model, double* out, size_t len);

void tt_topic_model_free(tt_topic_model* model);

/* ---- embeddings ------------------------------------------------------ */

typedef struct tt_embedding tt_embedding;

tt_status tt_embedding_load(const char* path, tt_embedding** out);
int tt_embedding_dim(const tt_embedding* embedding);
size_t tt_embedding_vocab_size(const tt_embedding* embedding);

/* Fills out[0..dim-1]; len must equal dim. TT_ERR_NOT_FOUND for unknown
 * terms. */
tt_status tt_embedding_vector(const tt_embedding* embedding, const char* term, double* out,
                              size_t len);

/* JSON array of {"term": ..., "cosine": ...}, best first, excluding the
 * query term. */
tt_status tt_embedding_nearest(const tt_embedding* embedding, const char* term, int n,
                               char** out_json);

void tt_embedding_free(tt_embedding* embedding);

/* ---- sentiment lexicon ----------------------------------------------- */

typedef struct tt_lexicon tt_lexicon;

tt_status tt_lexicon_load(const char* path, tt_lexicon** out);
size_t tt_lexicon_size(const tt_lexicon* lexicon);

/* Polarity of a lemma: -1, 0 or +1. TT_ERR_NOT_FOUND if absent. */
tt_status tt_lexicon_polarity(const tt_lexicon* lexicon, const char* lemma, int* out);

void tt_lexicon_free(tt_lexicon* lexicon);

#ifdef __cplusplus
}
#endif

#endif /* TWEETTOPICS_H */
