#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lda.hpp"
#include "normalize.hpp"

namespace tt {

// Boolean sliding-window statistics over a fixed term set. A term "occurs"
// in a window at most once no matter how often it appears there.
struct WindowCounts {
  int window_size = 0;
  size_t total_windows = 0;
  std::vector<std::string> terms;  // sorted, unique
  std::vector<long long> count;    // windows containing the term
  std::unordered_map<uint64_t, long long> joint;  // (lo_id << 32 | hi_id) -> windows

  int index_of(const std::string& term) const;
  // Both throw errc::config when the term was not in the tracked set;
  // tracked terms absent from the corpus simply count 0.
  long long count_of(const std::string& term) const;
  long long joint_of(const std::string& a, const std::string& b) const;
};

// Slides a window of window_size tokens over each document with stride 1.
// Documents shorter than the window contribute exactly one window (empty
// documents included); windows never cross document boundaries.
WindowCounts window_counts(const std::vector<TokenizedDoc>& docs,
                           const std::vector<std::string>& terms, int window_size);

// Normalized pointwise mutual information from boolean window counts.
// Exact limit conventions: npmi(w,w)=1, zero joint gives -1, and a pair
// present in every window gives +1. No additive smoothing is applied inside
// the log: the limits above already cover every degenerate case, and a
// smoothing term would perturb the exact anchor identities (independent
// counts -> 0, perfect coupling -> 1) by its own magnitude.
double npmi(const WindowCounts& counts, const std::string& w1, const std::string& w2);

// c_v score of one word set: context vectors v(w) = (npmi(w, w'))_{w' in W}
// with unit diagonal, compared against the summed vector by cosine
// (one-set segmentation), averaged over the words.
double cv_topic_score(const WindowCounts& counts, const std::vector<std::string>& top);

// Per-topic c_v over the model's top_n words, all topics sharing one
// window-count pass over the union of their word lists.
std::vector<double> cv_topic_scores(const TopicModel& model,
                                    const std::vector<TokenizedDoc>& docs, int top_n,
                                    int window_size);

// Model score: mean of the per-topic scores.
double cv_coherence(const TopicModel& model, const std::vector<TokenizedDoc>& docs, int top_n,
                    int window_size);

}  // namespace tt
