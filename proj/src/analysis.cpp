#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "vecmath.hpp"

namespace tt {

using nlohmann::json;

double jsd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) fail(errc::config, "jsd inputs must have the same length");
  double sp = 0.0, sq = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) fail(errc::config, "jsd inputs must be nonnegative");
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
    fail(errc::config, "jsd inputs must sum to 1");
  }
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) acc += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) acc += 0.5 * q[i] * std::log(q[i] / m);
  }
  return acc;
}

namespace {

// Cyclic Jacobi diagonalization of a symmetric matrix. Eigenvectors come
// back as columns of vecs; order unsorted.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& vals,
                  std::vector<std::vector<double>>& vecs) {
  const size_t n = a.size();
  vecs.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) vecs[i][i] = 1.0;

  double scale = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
  }
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= 1e-18 * scale) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p][p];
        const double aqq = a[q][q];
        const double apq = a[p][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p];
          const double arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (size_t r = 0; r < n; ++r) {
          const double vrp = vecs[r][p];
          const double vrq = vecs[r][q];
          vecs[r][p] = c * vrp - s * vrq;
          vecs[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  vals.resize(n);
  for (size_t i = 0; i < n; ++i) vals[i] = a[i][i];
}

}  // namespace

Projection project_2d(const std::vector<std::vector<double>>& distances) {
  const size_t k = distances.size();
  if (k < 2) fail(errc::config, "projection needs at least two points");
  for (size_t i = 0; i < k; ++i) {
    if (distances[i].size() != k) fail(errc::config, "distance matrix must be square");
    if (distances[i][i] != 0.0) fail(errc::config, "distance matrix diagonal must be zero");
    for (size_t j = 0; j < k; ++j) {
      if (distances[i][j] < 0.0) fail(errc::config, "distances must be nonnegative");
      if (std::abs(distances[i][j] - distances[j][i]) > 1e-12) {
        fail(errc::config, "distance matrix must be symmetric");
      }
    }
  }

  // double-centering via the mean-expansion of -1/2 J D^2 J
  std::vector<std::vector<double>> d2(k, std::vector<double>(k));
  std::vector<double> row_mean(k, 0.0);
  double grand = 0.0;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      d2[i][j] = distances[i][j] * distances[i][j];
      row_mean[i] += d2[i][j];
    }
    row_mean[i] /= static_cast<double>(k);
    grand += row_mean[i];
  }
  grand /= static_cast<double>(k);
  std::vector<std::vector<double>> b(k, std::vector<double>(k));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      b[i][j] = -0.5 * (d2[i][j] - row_mean[i] - row_mean[j] + grand);
    }
  }

  std::vector<double> vals;
  std::vector<std::vector<double>> vecs;
  jacobi_eigen(std::move(b), vals, vecs);

  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (vals[x] != vals[y]) return vals[x] > vals[y];
    return x < y;
  });
  double vmax = 0.0;
  for (double v : vals) vmax = std::max(vmax, std::abs(v));
  const double floor = vmax * 1e-12;

  Projection proj;
  proj.coords.assign(k, {0.0, 0.0});
  int positive_axes = 0;
  for (int axis = 0; axis < 2 && static_cast<size_t>(axis) < k; ++axis) {
    const size_t e = order[axis];
    if (vals[e] <= floor || vals[e] <= 0.0) break;
    const double len = std::sqrt(vals[e]);
    for (size_t i = 0; i < k; ++i) proj.coords[i][axis] = len * vecs[i][e];
    ++positive_axes;
  }
  if (positive_axes < 2) {
    proj.warning = "fewer than two positive principal axes; remaining coordinates zero-filled";
  }

  for (int axis = 0; axis < 2; ++axis) {
    for (size_t i = 0; i < k; ++i) {
      if (std::abs(proj.coords[i][axis]) > 1e-12) {
        if (proj.coords[i][axis] < 0.0) {
          for (size_t r = 0; r < k; ++r) proj.coords[r][axis] = -proj.coords[r][axis];
        }
        break;
      }
    }
  }
  return proj;
}

IntertopicMap build_intertopic_map(const TopicModel& model) {
  if (model.k < 2) fail(errc::config, "intertopic map needs at least two topics");
  const auto ph = phi(model);
  IntertopicMap map;
  map.distance_matrix.assign(model.k, std::vector<double>(model.k, 0.0));
  for (int i = 0; i < model.k; ++i) {
    for (int j = i + 1; j < model.k; ++j) {
      const double d = jsd(ph[i], ph[j]);
      map.distance_matrix[i][j] = d;
      map.distance_matrix[j][i] = d;
    }
  }
  Projection proj = project_2d(map.distance_matrix);
  map.coords = std::move(proj.coords);
  map.warning = std::move(proj.warning);
  map.areas = topic_prevalence(model);
  return map;
}

AffinityMode affinity_mode_from(const std::string& name) {
  if (name == "embedding") return AffinityMode::embedding;
  if (name == "bow") return AffinityMode::bow;
  fail(errc::config, "unknown affinity mode '" + name + "' (embedding or bow)");
}

std::string to_string(AffinityMode mode) {
  return mode == AffinityMode::embedding ? "embedding" : "bow";
}

namespace {

// cosine that reports failure instead of throwing; zero norms are the
// caller's skip signal
bool cosine_checked(const std::vector<double>& u, const std::vector<double>& v, double* out) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return false;
  *out = std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
  return true;
}

// document-level boolean co-occurrence row of one term over the model's
// vocabulary: row[x] = number of documents containing both terms
std::vector<double> cooccurrence_row(const std::vector<std::vector<int>>& doc_terms, int term,
                                     int v) {
  std::vector<double> row(v, 0.0);
  for (const auto& terms : doc_terms) {
    if (!std::binary_search(terms.begin(), terms.end(), term)) continue;
    for (int x : terms) row[x] += 1.0;
  }
  return row;
}

}  // namespace

AffinityMatrix opinion_topic_affinity(const TopicModel& model, const EmbeddingModel& emb,
                                      const std::vector<std::string>& opinions, int top_n,
                                      AffinityMode mode, bool exclude_self) {
  if (opinions.empty()) fail(errc::config, "affinity needs at least one opinion word");
  if (top_n < 1) fail(errc::config, "affinity top_n must be >= 1");

  AffinityMatrix matrix;
  matrix.opinions = opinions;
  matrix.mode = mode;
  matrix.exclude_self = exclude_self;
  matrix.top_n = top_n;
  matrix.cells.assign(model.k, std::vector<AffinityCell>(opinions.size()));

  std::vector<std::vector<std::string>> tops(model.k);
  for (int t = 0; t < model.k; ++t) {
    for (const auto& [term, weight] : top_words(model, t, top_n)) tops[t].push_back(term);
  }

  if (mode == AffinityMode::embedding) {
    for (size_t o = 0; o < opinions.size(); ++o) {
      const int oid = emb.vocab.id_of(opinions[o]);
      for (int t = 0; t < model.k; ++t) {
        AffinityCell& cell = matrix.cells[t][o];
        if (oid < 0) {
          cell.skipped = static_cast<int>(tops[t].size());
          continue;
        }
        double acc = 0.0;
        for (const auto& w : tops[t]) {
          if (exclude_self && w == opinions[o]) {
            ++cell.skipped;
            continue;
          }
          const int wid = emb.vocab.id_of(w);
          double c = 0.0;
          if (wid < 0 || !cosine_checked(emb.w_in[wid], emb.w_in[oid], &c)) {
            ++cell.skipped;
            continue;
          }
          acc += c;
          ++cell.used;
        }
        if (cell.used > 0) {
          cell.value = acc / static_cast<double>(cell.used);
          cell.missing = false;
        }
      }
    }
    return matrix;
  }

  // bow mode over the model's own documents
  const int v = model.vocab.size();
  std::vector<std::vector<int>> doc_terms(model.docs.size());
  for (size_t d = 0; d < model.docs.size(); ++d) {
    doc_terms[d] = model.docs[d];
    std::sort(doc_terms[d].begin(), doc_terms[d].end());
    doc_terms[d].erase(std::unique(doc_terms[d].begin(), doc_terms[d].end()),
                       doc_terms[d].end());
  }
  std::unordered_map<int, std::vector<double>> rows;
  auto row_of = [&](int term) -> const std::vector<double>& {
    auto it = rows.find(term);
    if (it == rows.end()) {
      it = rows.emplace(term, cooccurrence_row(doc_terms, term, v)).first;
    }
    return it->second;
  };

  for (size_t o = 0; o < opinions.size(); ++o) {
    const int oid = model.vocab.id_of(opinions[o]);
    for (int t = 0; t < model.k; ++t) {
      AffinityCell& cell = matrix.cells[t][o];
      if (oid < 0) {
        cell.skipped = static_cast<int>(tops[t].size());
        continue;
      }
      std::vector<double> topic_row(v, 0.0);
      for (const auto& w : tops[t]) {
        if (exclude_self && w == opinions[o]) {
          ++cell.skipped;
          continue;
        }
        const auto& r = row_of(model.vocab.id_of(w));
        for (int x = 0; x < v; ++x) topic_row[x] += r[x];
        ++cell.used;
      }
      double c = 0.0;
      if (cell.used > 0 && cosine_checked(topic_row, row_of(oid), &c)) {
        cell.value = c;
        cell.missing = false;
      } else {
        cell.used = 0;
      }
    }
  }
  return matrix;
}

std::vector<int> affinity_argmax(const AffinityMatrix& matrix) {
  std::vector<int> best(matrix.cells.size(), -1);
  for (size_t t = 0; t < matrix.cells.size(); ++t) {
    for (size_t o = 0; o < matrix.cells[t].size(); ++o) {
      const AffinityCell& cell = matrix.cells[t][o];
      if (cell.missing) continue;
      if (best[t] < 0 || cell.value > matrix.cells[t][best[t]].value) {
        best[t] = static_cast<int>(o);
      }
    }
  }
  return best;
}

void save_affinity(const AffinityMatrix& matrix, const std::string& path,
                   uint64_t config_hash) {
  json j;
  j["schema"] = "tweettopics/affinity@1";
  j["config_hash"] = config_hash;
  j["mode"] = to_string(matrix.mode);
  j["exclude_self"] = matrix.exclude_self;
  j["top_n"] = matrix.top_n;
  j["opinions"] = matrix.opinions;
  j["cells"] = json::array();
  for (const auto& row : matrix.cells) {
    json jrow = json::array();
    for (const auto& cell : row) {
      jrow.push_back({{"value", cell.value},
                      {"missing", cell.missing},
                      {"used", cell.used},
                      {"skipped", cell.skipped}});
    }
    j["cells"].push_back(std::move(jrow));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write affinity matrix: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

AffinityMatrix load_affinity(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open affinity matrix: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != "tweettopics/affinity@1") {
    fail(errc::data, "not an affinity file: " + path);
  }
  if (config_hash) *config_hash = j.value("config_hash", 0ULL);
  AffinityMatrix matrix;
  matrix.mode = affinity_mode_from(j["mode"].get<std::string>());
  matrix.exclude_self = j["exclude_self"].get<bool>();
  matrix.top_n = j["top_n"].get<int>();
  matrix.opinions = j["opinions"].get<std::vector<std::string>>();
  for (const auto& jrow : j["cells"]) {
    std::vector<AffinityCell> row;
    for (const auto& jcell : jrow) {
      row.push_back({jcell["value"].get<double>(), jcell["missing"].get<bool>(),
                     jcell["used"].get<int>(), jcell["skipped"].get<int>()});
    }
    matrix.cells.push_back(std::move(row));
  }
  return matrix;
}

void save_intertopic(const IntertopicMap& map, const std::string& path, uint64_t config_hash) {
  json j;
  j["schema"] = "tweettopics/intertopic@1";
  j["config_hash"] = config_hash;
  j["coords"] = json::array();
  for (const auto& c : map.coords) j["coords"].push_back({c[0], c[1]});
  j["areas"] = map.areas;
  j["distance_matrix"] = map.distance_matrix;
  j["warning"] = map.warning;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot write intertopic map: " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(errc::io, "write failed: " + path);
}

IntertopicMap load_intertopic(const std::string& path, uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open intertopic map: " + path);
  json j = json::parse(in, nullptr, false);
  if (!j.is_object() || j.value("schema", "") != "tweettopics/intertopic@1") {
    fail(errc::data, "not an intertopic map file: " + path);
  }
  if (config_hash) *config_hash = j.value("config_hash", 0ULL);
  IntertopicMap map;
  for (const auto& jc : j["coords"]) {
    map.coords.push_back({jc[0].get<double>(), jc[1].get<double>()});
  }
  map.areas = j["areas"].get<std::vector<double>>();
  map.distance_matrix = j["distance_matrix"].get<std::vector<std::vector<double>>>();
  map.warning = j.value("warning", "");
  return map;
}

}  // namespace tt
