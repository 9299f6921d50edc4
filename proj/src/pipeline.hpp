#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tt {

enum class FieldType { text, boolean, integer, real, text_list };

// One configurable knob. The table in pipeline.cpp is the single source of
// truth: it drives config-file validation, flag overrides, defaults, the
// help listing, and the config hash.
struct FieldSpec {
  const char* key;  // dotted path, e.g. "lda.k"
  FieldType type;
  const char* default_value;  // parsed like a flag override; lists comma-separated
  const char* help;
};

class PipelineConfig {
 public:
  PipelineConfig();  // all defaults

  static const std::vector<FieldSpec>& fields();
  static const FieldSpec* find_field(const std::string& key);

  // Strict load: unknown or type-mismatched fields are config errors.
  static PipelineConfig from_file(const std::string& path);

  // Flag override, "lda.k" = "7". Lists take comma-separated values.
  void set(const std::string& key, const std::string& value);

  std::string text(const std::string& key) const;
  bool flag(const std::string& key) const;
  long long integer(const std::string& key) const;
  double real(const std::string& key) const;
  std::vector<std::string> list(const std::string& key) const;

  // FNV-1a over the canonical (sorted-key) JSON of everything except
  // paths.out_dir, so relocating the output does not change lineage.
  uint64_t hash() const;

  const nlohmann::json& tree() const { return tree_; }

  // "key  (type) [default]  description" lines, one per field.
  static std::string help_text();

 private:
  nlohmann::json tree_;
};

// Canonical stage order for `pipeline`.
const std::vector<std::string>& stage_names();

// Executes one stage (or "pipeline" for all of them in order), reading and
// writing artifacts under paths.out_dir. Artifacts record the config hash;
// a stage refuses inputs produced under a different configuration.
void run_stage(const PipelineConfig& config, const std::string& stage);

// Stage artifact file names under out_dir.
namespace artifact {
inline constexpr const char* corpus = "corpus.jsonl";
inline constexpr const char* tokens = "tokens.jsonl";
inline constexpr const char* dedup_report = "dedup_report.json";
inline constexpr const char* corpus_pruned = "corpus_pruned.jsonl";
inline constexpr const char* tokens_pruned = "tokens_pruned.jsonl";
inline constexpr const char* lda_model = "lda_model.json";
inline constexpr const char* embedding = "embedding.bin";
inline constexpr const char* embedding_text = "embedding.txt";
inline constexpr const char* coherence = "coherence.json";
inline constexpr const char* polar_words = "polar_words.json";
inline constexpr const char* affinity = "affinity.json";
inline constexpr const char* intertopic = "intertopic.json";
inline constexpr const char* report = "report.json";
inline constexpr const char* map_svg = "intertopic_map.svg";
inline constexpr const char* heatmap_svg = "affinity_heatmap.svg";
}  // namespace artifact

// Sidecar lineage record for JSONL artifacts (path + ".meta"). `extra`
// carries stage statistics worth keeping next to the data.
void write_meta(const std::string& artifact_path, const std::string& schema,
                uint64_t config_hash, const nlohmann::json& extra);
nlohmann::json read_meta(const std::string& artifact_path, const std::string& schema);

// Fails with a lineage message when an artifact's recorded hash differs
// from the active configuration's.
void check_lineage(uint64_t artifact_hash, uint64_t config_hash, const std::string& artifact);

}  // namespace tt
