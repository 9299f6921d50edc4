#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "dedup.hpp"
#include "error.hpp"
#include "lda.hpp"
#include "sentiment.hpp"

namespace fs = std::filesystem;

namespace tt {

using nlohmann::json;

double round_sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

std::string gfmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void round_tree(json& j) {
  if (j.is_number_float()) {
    j = round_sig12(j.get<double>());
  } else if (j.is_object() || j.is_array()) {
    for (auto& v : j) round_tree(v);
  }
}

std::string in_out_dir(const PipelineConfig& cfg, const char* name) {
  return (fs::path(cfg.text("paths.out_dir")) / name).string();
}

void require_artifact(const PipelineConfig& cfg, const char* name, const char* producer) {
  if (!fs::exists(in_out_dir(cfg, name))) {
    fail(errc::data, std::string("missing artifact '") + name + "'; run the " + producer +
                         " stage first");
  }
}

json load_json_artifact(const PipelineConfig& cfg, const char* name, const char* producer,
                        const char* schema) {
  require_artifact(cfg, name, producer);
  const std::string path = in_out_dir(cfg, name);
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != schema) {
    fail(errc::data, "unexpected schema in " + path);
  }
  check_lineage(j.value("config_hash", 0ULL), cfg.hash(), name);
  return j;
}

// Interpolate white -> red for positive affinity, white -> blue for negative.
std::string cell_color(const AffinityCell& cell) {
  if (cell.missing) return "#cccccc";
  const double v = std::max(-1.0, std::min(1.0, cell.value));
  const double t = std::fabs(v);
  const int hot[3] = {178, 24, 43};
  const int cold[3] = {33, 102, 172};
  const int* target = v >= 0.0 ? hot : cold;
  char buf[24];
  std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)",
                static_cast<int>(std::lround(255 + (target[0] - 255) * t)),
                static_cast<int>(std::lround(255 + (target[1] - 255) * t)),
                static_cast<int>(std::lround(255 + (target[2] - 255) * t)));
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_intertopic_svg(const IntertopicMap& map, const std::string& path) {
  const double width = 640.0, height = 480.0, margin = 80.0;
  const size_t k = map.coords.size();

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (size_t i = 0; i < k; ++i) {
    xmin = std::min(xmin, map.coords[i][0]);
    xmax = std::max(xmax, map.coords[i][0]);
    ymin = std::min(ymin, map.coords[i][1]);
    ymax = std::max(ymax, map.coords[i][1]);
  }
  const double xspan = xmax - xmin, yspan = ymax - ymin;
  const double span = std::max(std::max(xspan, yspan), 1e-9);
  const double scale = (std::min(width, height) - 2.0 * margin) / span;

  // Fixed multiplier, so circle areas stay proportional to prevalence.
  const double radius_scale = 60.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << gfmt(width) << "\" height=\""
      << gfmt(height) << "\" viewBox=\"0 0 " << gfmt(width) << " " << gfmt(height) << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">"
      << "intertopic distance map (Jensen-Shannon, classical MDS)</text>\n";
  if (!map.warning.empty()) {
    svg << "  <text x=\"20\" y=\"52\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#aa0000\">"
        << xml_escape(map.warning) << "</text>\n";
  }
  for (size_t i = 0; i < k; ++i) {
    const double cx = margin + (map.coords[i][0] - xmin + (span - xspan) / 2.0) * scale;
    const double cy = height - margin - (map.coords[i][1] - ymin + (span - yspan) / 2.0) * scale;
    const double r = radius_scale * std::sqrt(map.areas[i]);
    svg << "  <circle cx=\"" << gfmt(cx) << "\" cy=\"" << gfmt(cy) << "\" r=\"" << gfmt(r)
        << "\" fill=\"#4a90d9\" fill-opacity=\"0.55\" stroke=\"#1f4e79\"/>\n"
        << "  <text x=\"" << gfmt(cx) << "\" y=\"" << gfmt(cy)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" dy=\"4\">T" << i
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write " + path);
  out << svg.str();
  if (!out) fail(errc::io, "write failed: " + path);
}

void write_heatmap_svg(const AffinityMatrix& affinity, const std::string& path) {
  const size_t rows = affinity.cells.size();
  const size_t cols = affinity.opinions.size();
  const double cell_w = 56.0, cell_h = 32.0;
  const double left = 70.0, top = 110.0;
  const double width = left + cols * cell_w + 30.0;
  const double height = top + rows * cell_h + 30.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << gfmt(width) << "\" height=\""
      << gfmt(height) << "\" viewBox=\"0 0 " << gfmt(width) << " " << gfmt(height) << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">"
      << "opinion-topic affinity (" << to_string(affinity.mode) << ")</text>\n";
  for (size_t o = 0; o < cols; ++o) {
    const double x = left + o * cell_w + cell_w / 2.0;
    svg << "  <text x=\"" << gfmt(x) << "\" y=\"" << gfmt(top - 8.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"start\" transform=\"rotate(-45 "
        << gfmt(x) << " " << gfmt(top - 8.0) << ")\">" << xml_escape(affinity.opinions[o])
        << "</text>\n";
  }
  for (size_t t = 0; t < rows; ++t) {
    const double y = top + t * cell_h;
    svg << "  <text x=\"" << gfmt(left - 8.0) << "\" y=\"" << gfmt(y + cell_h / 2.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" dy=\"4\">T" << t
        << "</text>\n";
    for (size_t o = 0; o < cols; ++o) {
      const AffinityCell& cell = affinity.cells[t][o];
      svg << "  <rect x=\"" << gfmt(left + o * cell_w) << "\" y=\"" << gfmt(y) << "\" width=\""
          << gfmt(cell_w) << "\" height=\"" << gfmt(cell_h) << "\" fill=\"" << cell_color(cell)
          << "\" stroke=\"#ffffff\"><title>"
          << (cell.missing ? std::string("missing") : gfmt(round_sig12(cell.value)))
          << "</title></rect>\n";
    }
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write " + path);
  out << svg.str();
  if (!out) fail(errc::io, "write failed: " + path);
}

void emit_report(const PipelineConfig& cfg) {
  const uint64_t h = cfg.hash();

  require_artifact(cfg, artifact::corpus, "ingest");
  const json ingest_meta = read_meta(in_out_dir(cfg, artifact::corpus), "tweettopics/corpus@1");
  check_lineage(ingest_meta.value("config_hash", 0ULL), h, artifact::corpus);

  require_artifact(cfg, artifact::corpus_pruned, "dedup");
  const json pruned_meta =
      read_meta(in_out_dir(cfg, artifact::corpus_pruned), "tweettopics/corpus@1");
  check_lineage(pruned_meta.value("config_hash", 0ULL), h, artifact::corpus_pruned);
  const Corpus corpus = load_corpus(in_out_dir(cfg, artifact::corpus_pruned)).corpus;

  require_artifact(cfg, artifact::dedup_report, "dedup");
  uint64_t ah = 0;
  const DedupReport dedup = load_dedup_report(in_out_dir(cfg, artifact::dedup_report), &ah);
  check_lineage(ah, h, artifact::dedup_report);

  require_artifact(cfg, artifact::lda_model, "lda");
  const TopicModel model = load_topic_model(in_out_dir(cfg, artifact::lda_model), &ah);
  check_lineage(ah, h, artifact::lda_model);

  const json coherence =
      load_json_artifact(cfg, artifact::coherence, "coherence", "tweettopics/coherence@1");

  require_artifact(cfg, artifact::polar_words, "sentiment");
  const PolarWordRanking ranking =
      load_polar_ranking(in_out_dir(cfg, artifact::polar_words), &ah);
  check_lineage(ah, h, artifact::polar_words);

  require_artifact(cfg, artifact::affinity, "analyze");
  const AffinityMatrix affinity = load_affinity(in_out_dir(cfg, artifact::affinity), &ah);
  check_lineage(ah, h, artifact::affinity);

  require_artifact(cfg, artifact::intertopic, "analyze");
  const IntertopicMap map = load_intertopic(in_out_dir(cfg, artifact::intertopic), &ah);
  check_lineage(ah, h, artifact::intertopic);

  const CorpusStats stats = corpus_stats(corpus);

  json report;
  report["schema"] = "tweettopics/report@1";
  report["config_hash"] = h;
  report["config"] = cfg.tree();

  json jc;
  jc["documents"] = corpus.size();
  jc["documents_ingested"] = ingest_meta.value("documents", 0ULL);
  jc["skipped_lines"] = ingest_meta.value("skipped_lines", 0ULL);
  jc["distinct_authors"] = stats.distinct_authors;
  jc["per_day"] = stats.per_day;
  jc["per_hashtag"] = stats.per_hashtag;
  if (ingest_meta.contains("source_meta")) jc["source_meta"] = ingest_meta["source_meta"];
  report["corpus"] = std::move(jc);

  json jd;
  jd["clusters"] = dedup.clusters.size();
  jd["largest_cluster"] = dedup.clusters.empty() ? 0 : dedup.clusters.front().size;
  jd["total_removed"] = dedup.total_removed;
  jd["near_dup_pairs"] = dedup.near_dup_pairs.size();
  jd["policy"] = cfg.text("dedup.policy");
  jd["documents_removed"] = pruned_meta.value("removed", 0ULL);
  report["dedup"] = std::move(jd);

  const auto prevalence = topic_prevalence(model);
  const int display_n = static_cast<int>(cfg.integer("coherence.top_n"));
  json topics = json::array();
  for (int t = 0; t < model.k; ++t) {
    json jt;
    jt["topic"] = t;
    jt["prevalence"] = prevalence[t];
    json words = json::array();
    for (const auto& [term, weight] : top_words(model, t, display_n)) {
      words.push_back({{"term", term}, {"weight", weight}});
    }
    jt["top_words"] = std::move(words);
    topics.push_back(std::move(jt));
  }
  report["topics"] = std::move(topics);

  json jcoh;
  jcoh["window"] = coherence.value("window", 0);
  jcoh["top_n"] = coherence.value("top_n", 0);
  jcoh["per_topic"] = coherence.value("per_topic", json::array());
  jcoh["mean"] = coherence.value("mean", 0.0);
  if (coherence.contains("k_sweep")) jcoh["k_sweep"] = coherence["k_sweep"];
  report["coherence"] = std::move(jcoh);

  json jp;
  json ranked = json::array();
  for (const auto& w : ranking.ranked) {
    ranked.push_back({{"lemma", w.lemma}, {"polarity", w.polarity}, {"frequency", w.frequency}});
  }
  jp["ranked"] = std::move(ranked);
  if (!ranking.warning.empty()) jp["warning"] = ranking.warning;
  report["polar_words"] = std::move(jp);

  json ja;
  ja["mode"] = to_string(affinity.mode);
  ja["exclude_self"] = affinity.exclude_self;
  ja["top_n"] = affinity.top_n;
  ja["opinions"] = affinity.opinions;
  json values = json::array(), used = json::array(), skipped = json::array();
  for (const auto& row : affinity.cells) {
    json vrow = json::array(), urow = json::array(), srow = json::array();
    for (const auto& cell : row) {
      vrow.push_back(cell.missing ? json(nullptr) : json(cell.value));
      urow.push_back(cell.used);
      srow.push_back(cell.skipped);
    }
    values.push_back(std::move(vrow));
    used.push_back(std::move(urow));
    skipped.push_back(std::move(srow));
  }
  ja["values"] = std::move(values);
  ja["used"] = std::move(used);
  ja["skipped"] = std::move(skipped);
  const auto argmax = affinity_argmax(affinity);
  json jarg = json::array();
  for (int t = 0; t < static_cast<int>(argmax.size()); ++t) {
    json row;
    row["topic"] = t;
    row["opinion"] = argmax[t];
    row["lemma"] = argmax[t] < 0 ? json(nullptr) : json(affinity.opinions[argmax[t]]);
    jarg.push_back(std::move(row));
  }
  ja["argmax"] = std::move(jarg);
  report["affinity"] = std::move(ja);

  json jm;
  json coords = json::array();
  for (const auto& c : map.coords) coords.push_back({c[0], c[1]});
  jm["coords"] = std::move(coords);
  jm["areas"] = map.areas;
  jm["distance_matrix"] = map.distance_matrix;
  if (!map.warning.empty()) jm["warning"] = map.warning;
  report["intertopic"] = std::move(jm);

  round_tree(report);
  const std::string path = in_out_dir(cfg, artifact::report);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write " + path);
  out << report.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);

  write_intertopic_svg(map, in_out_dir(cfg, artifact::map_svg));
  write_heatmap_svg(affinity, in_out_dir(cfg, artifact::heatmap_svg));
}

}  // namespace tt
