#include "coherence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "error.hpp"
#include "parallel.hpp"
#include "vecmath.hpp"

namespace tt {

namespace {

uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

}  // namespace

int WindowCounts::index_of(const std::string& term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return -1;
  return static_cast<int>(it - terms.begin());
}

long long WindowCounts::count_of(const std::string& term) const {
  const int id = index_of(term);
  if (id < 0) fail(errc::config, "term not in the tracked set: " + term);
  return count[id];
}

long long WindowCounts::joint_of(const std::string& a, const std::string& b) const {
  const int ia = index_of(a);
  const int ib = index_of(b);
  if (ia < 0 || ib < 0) fail(errc::config, "term not in the tracked set");
  if (ia == ib) return count[ia];
  auto it = joint.find(pair_key(ia, ib));
  return it == joint.end() ? 0 : it->second;
}

WindowCounts window_counts(const std::vector<TokenizedDoc>& docs,
                           const std::vector<std::string>& terms, int window_size) {
  if (window_size < 1) fail(errc::config, "window size must be >= 1");
  if (terms.empty()) fail(errc::config, "window counting needs a non-empty term set");

  WindowCounts wc;
  wc.window_size = window_size;
  wc.terms = terms;
  std::sort(wc.terms.begin(), wc.terms.end());
  wc.terms.erase(std::unique(wc.terms.begin(), wc.terms.end()), wc.terms.end());
  const size_t m = wc.terms.size();
  wc.count.assign(m, 0);

  std::unordered_map<std::string, int> id_of;
  id_of.reserve(m);
  for (size_t i = 0; i < m; ++i) id_of.emplace(wc.terms[i], static_cast<int>(i));

  std::mutex merge_mu;
  parallel_for(docs.size(), [&](size_t lo, size_t hi) {
    size_t local_total = 0;
    std::vector<long long> local_count(m, 0);
    std::unordered_map<uint64_t, long long> local_joint;
    std::vector<char> seen(m, 0);
    std::vector<int> present;

    for (size_t d = lo; d < hi; ++d) {
      const auto& toks = docs[d].tokens;
      const size_t len = toks.size();
      const size_t w = static_cast<size_t>(window_size);
      const size_t nwin = len <= w ? 1 : len - w + 1;
      local_total += nwin;
      if (len == 0) continue;
      for (size_t s = 0; s < nwin; ++s) {
        const size_t end = std::min(len, s + w);
        present.clear();
        for (size_t t = s; t < end; ++t) {
          auto it = id_of.find(toks[t]);
          if (it != id_of.end() && !seen[it->second]) {
            seen[it->second] = 1;
            present.push_back(it->second);
          }
        }
        std::sort(present.begin(), present.end());
        for (size_t i = 0; i < present.size(); ++i) {
          ++local_count[present[i]];
          for (size_t j = i + 1; j < present.size(); ++j) {
            ++local_joint[pair_key(present[i], present[j])];
          }
          seen[present[i]] = 0;
        }
      }
    }

    // Integer sums, so the merge order cannot change the result.
    std::lock_guard<std::mutex> lock(merge_mu);
    wc.total_windows += local_total;
    for (size_t i = 0; i < m; ++i) wc.count[i] += local_count[i];
    for (const auto& [k, v] : local_joint) wc.joint[k] += v;
  });
  return wc;
}

double npmi(const WindowCounts& counts, const std::string& w1, const std::string& w2) {
  if (counts.total_windows == 0) fail(errc::data, "npmi over zero windows");
  if (w1 == w2) return 1.0;
  const long long c1 = counts.count_of(w1);
  const long long c2 = counts.count_of(w2);
  const long long cj = counts.joint_of(w1, w2);
  const auto total = static_cast<long long>(counts.total_windows);
  if (cj == 0) return -1.0;
  if (cj == total) return 1.0;
  const double num =
      std::log(static_cast<double>(cj) * static_cast<double>(total) /
               (static_cast<double>(c1) * static_cast<double>(c2)));
  const double den = std::log(static_cast<double>(total) / static_cast<double>(cj));
  return std::clamp(num / den, -1.0, 1.0);
}

double cv_topic_score(const WindowCounts& counts, const std::vector<std::string>& top) {
  if (top.size() < 2) fail(errc::config, "c_v needs at least two words");
  const size_t m = top.size();
  std::vector<std::vector<double>> v(m, std::vector<double>(m));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      v[i][j] = i == j ? 1.0 : npmi(counts, top[i], top[j]);
    }
  }
  std::vector<double> sum(m, 0.0);
  for (const auto& row : v) {
    for (size_t j = 0; j < m; ++j) sum[j] += row[j];
  }
  double acc = 0.0;
  for (const auto& row : v) acc += cosine(row, sum);
  return acc / static_cast<double>(m);
}

std::vector<double> cv_topic_scores(const TopicModel& model,
                                    const std::vector<TokenizedDoc>& docs, int top_n,
                                    int window_size) {
  if (top_n < 2) fail(errc::config, "coherence top_n must be >= 2");
  if (top_n > model.vocab.size()) {
    fail(errc::config, "coherence top_n exceeds the vocabulary size");
  }
  std::vector<std::vector<std::string>> tops(model.k);
  std::set<std::string> uni;
  for (int t = 0; t < model.k; ++t) {
    for (const auto& [term, weight] : top_words(model, t, top_n)) {
      tops[t].push_back(term);
      uni.insert(term);
    }
  }
  const WindowCounts counts =
      window_counts(docs, std::vector<std::string>(uni.begin(), uni.end()), window_size);
  std::vector<double> scores(model.k);
  for (int t = 0; t < model.k; ++t) scores[t] = cv_topic_score(counts, tops[t]);
  return scores;
}

double cv_coherence(const TopicModel& model, const std::vector<TokenizedDoc>& docs, int top_n,
                    int window_size) {
  const auto scores = cv_topic_scores(model, docs, top_n, window_size);
  double acc = 0.0;
  for (double s : scores) acc += s;
  return acc / static_cast<double>(scores.size());
}

}  // namespace tt
