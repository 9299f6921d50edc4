// Acceptance gate. Each numbered check prints exactly one [PASS]/[FAIL]
// line with its runtime; the process exits nonzero when any check fails.
// These are the release criteria; the per-module suites carry the finer
// grained cases.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "analysis.hpp"
#include "coherence.hpp"
#include "dedup.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "hash.hpp"
#include "lda.hpp"
#include "pipeline.hpp"
#include "sentiment.hpp"
#include "test_support.hpp"
#include "vocab.hpp"

using namespace tt;
namespace fs = std::filesystem;

namespace {

struct Failure {
  std::string detail;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// ---- 1. LDA count conservation --------------------------------------

void check_count_conservation() {
  std::mt19937 gen(11);
  std::vector<TokenizedDoc> docs;
  size_t total_tokens = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> tokens;
    const int len = 5 + static_cast<int>(gen() % 11);
    for (int t = 0; t < len; ++t) tokens.push_back("w" + std::to_string(gen() % 30));
    total_tokens += tokens.size();
    docs.push_back(tts::doc("d" + std::to_string(i), tokens));
  }
  const Vocabulary vocab = build_vocab(docs, 1, 1.0);

  LdaParams params;
  params.k = 4;
  params.iterations = 50;
  params.seed = 123;
  int sweeps_checked = 0;
  const TopicModel model = train_lda(docs, vocab, params, [&](const TopicModel& m, int) {
    m.check_counts();  // throws errc::internal on any violated invariant
    ++sweeps_checked;
  });
  expect(sweeps_checked == params.iterations, "observer saw " + std::to_string(sweeps_checked) +
                                                  " sweeps, expected " +
                                                  std::to_string(params.iterations));
  expect(model.total_tokens() == total_tokens,
         "token mass changed: " + std::to_string(model.total_tokens()) + " vs " +
             std::to_string(total_tokens));
}

// ---- 2. LDA topic recovery ------------------------------------------

void check_topic_recovery() {
  std::mt19937 gen(21);
  std::vector<TokenizedDoc> docs;
  for (int i = 0; i < 100; ++i) {
    const char* prefix = i < 50 ? "a" : "b";
    std::vector<std::string> tokens;
    const int len = 8 + static_cast<int>(gen() % 5);
    for (int t = 0; t < len; ++t) {
      tokens.push_back(prefix + std::to_string(gen() % 10));
    }
    docs.push_back(tts::doc("d" + std::to_string(i), tokens));
  }
  const Vocabulary vocab = build_vocab(docs, 1, 1.0);
  expect(vocab.size() == 20, "fixture vocabulary should be 20 terms");

  LdaParams params;
  params.k = 2;
  params.iterations = 200;
  params.seed = 2018;
  const TopicModel model = train_lda(docs, vocab, params);

  long long agree = 0, total = 0;
  for (int k = 0; k < 2; ++k) {
    long long mass_a = 0, mass_b = 0;
    for (int w = 0; w < vocab.size(); ++w) {
      (vocab.id_to_term[w][0] == 'a' ? mass_a : mass_b) += model.n_kw[k][w];
    }
    agree += std::max(mass_a, mass_b);
    total += mass_a + mass_b;
  }
  const double purity = static_cast<double>(agree) / static_cast<double>(total);
  expect(purity >= 0.9, "purity " + fmt("%.4f", purity) + " < 0.9");
}

// ---- 3. c_v oracle equivalence ---------------------------------------

std::vector<std::set<std::string>> brute_windows(const std::vector<TokenizedDoc>& docs,
                                                 int window) {
  std::vector<std::set<std::string>> out;
  for (const auto& doc : docs) {
    const int len = static_cast<int>(doc.tokens.size());
    if (len <= window) {
      out.emplace_back(doc.tokens.begin(), doc.tokens.end());
      continue;
    }
    for (int start = 0; start + window <= len; ++start) {
      out.emplace_back(doc.tokens.begin() + start, doc.tokens.begin() + start + window);
    }
  }
  return out;
}

long long brute_count(const std::vector<std::set<std::string>>& windows, const std::string& w) {
  long long n = 0;
  for (const auto& win : windows) n += win.count(w) ? 1 : 0;
  return n;
}

long long brute_joint(const std::vector<std::set<std::string>>& windows, const std::string& a,
                      const std::string& b) {
  long long n = 0;
  for (const auto& win : windows) n += (win.count(a) && win.count(b)) ? 1 : 0;
  return n;
}

double brute_npmi(const std::vector<std::set<std::string>>& windows, const std::string& a,
                  const std::string& b) {
  if (a == b) return 1.0;
  const double total = static_cast<double>(windows.size());
  const long long cj = brute_joint(windows, a, b);
  if (cj == 0) return -1.0;
  if (cj == static_cast<long long>(windows.size())) return 1.0;
  const double pj = static_cast<double>(cj) / total;
  const double pa = static_cast<double>(brute_count(windows, a)) / total;
  const double pb = static_cast<double>(brute_count(windows, b)) / total;
  return std::clamp(std::log(pj / (pa * pb)) / -std::log(pj), -1.0, 1.0);
}

double brute_cv(const std::vector<std::set<std::string>>& windows,
                const std::vector<std::string>& top) {
  const size_t m = top.size();
  std::vector<std::vector<double>> ctx(m, std::vector<double>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) ctx[i][j] = brute_npmi(windows, top[i], top[j]);
  std::vector<double> sum(m, 0.0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) sum[j] += ctx[i][j];
  auto cosine = [](const std::vector<double>& u, const std::vector<double>& v) {
    double uv = 0, uu = 0, vv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
      uv += u[i] * v[i];
      uu += u[i] * u[i];
      vv += v[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) return 0.0;
    return uv / (std::sqrt(uu) * std::sqrt(vv));
  };
  double mean = 0.0;
  for (size_t i = 0; i < m; ++i) mean += cosine(ctx[i], sum);
  return mean / static_cast<double>(m);
}

void check_cv_oracle() {
  std::mt19937 gen(33);
  const std::vector<std::string> alphabet = {"alfa", "bravo", "coco", "delta", "eco", "foxtrote"};

  int corpora_checked = 0;
  for (int round = 0; round < 30; ++round) {
    std::vector<TokenizedDoc> docs;
    const int ndocs = 2 + static_cast<int>(gen() % 3);  // 2..4 docs
    for (int d = 0; d < ndocs; ++d) {
      std::vector<std::string> tokens;
      const int len = static_cast<int>(gen() % 9);  // 0..8, empty docs included
      for (int t = 0; t < len; ++t) tokens.push_back(alphabet[gen() % alphabet.size()]);
      docs.push_back(tts::doc("d" + std::to_string(d), tokens));
    }
    const int window = 4 + static_cast<int>(gen() % 2);  // 4..5 keeps windows <= 20

    std::vector<std::string> top;
    const int nterms = 3 + static_cast<int>(gen() % 3);  // 3..5 words
    for (int t = 0; t < nterms; ++t) {
      const std::string& w = alphabet[gen() % alphabet.size()];
      if (std::find(top.begin(), top.end(), w) == top.end()) top.push_back(w);
    }
    if (top.size() < 2) continue;

    const auto windows = brute_windows(docs, window);
    expect(windows.size() <= 20, "fixture overflowed the window cap");
    const WindowCounts counts = window_counts(docs, top, window);
    expect(counts.total_windows == windows.size(), "window count mismatch");

    for (const auto& a : top) {
      for (const auto& b : top) {
        const double got = npmi(counts, a, b);
        const double want = brute_npmi(windows, a, b);
        expect(std::abs(got - want) <= 1e-12,
               "npmi(" + a + "," + b + ") off by " + fmt("%.3e", std::abs(got - want)));
      }
    }
    const double got = cv_topic_score(counts, top);
    const double want = brute_cv(windows, top);
    expect(std::abs(got - want) <= 1e-12, "c_v off by " + fmt("%.3e", std::abs(got - want)));
    ++corpora_checked;
  }
  expect(corpora_checked >= 25, "too few oracle corpora exercised");

  // hand anchors, one window per single-token-set doc
  std::vector<TokenizedDoc> anchor;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> tokens;
    if (i < 5) tokens.push_back("aa");                  // count(aa) = 5
    if (i >= 3 && i < 7) tokens.push_back("bb");        // count(bb) = 4, joint = 2
    tokens.push_back("cc");                             // cc in every window
    tokens.push_back("dd");                             // dd in every window
    if (i >= 8) tokens.push_back("ee");                 // ee never meets aa
    anchor.push_back(tts::doc("w" + std::to_string(i), tokens));
  }
  const WindowCounts counts = window_counts(anchor, {"aa", "bb", "cc", "dd", "ee"}, 20);
  expect(counts.total_windows == 10, "anchor fixture must have 10 windows");
  // counts 5 and 4, joint 2, total 10: joint*total == count*count, npmi 0
  expect(std::abs(npmi(counts, "aa", "bb") - 0.0) <= 1e-12, "independence anchor not 0");
  // both words in every window: perfect coupling, npmi 1
  expect(std::abs(npmi(counts, "cc", "dd") - 1.0) <= 1e-12, "perfect anchor not 1");
  // never co-occurring pair: npmi -1
  expect(std::abs(npmi(counts, "aa", "ee") + 1.0) <= 1e-12, "disjoint anchor not -1");
}

// ---- 4. coherence-guided model selection ------------------------------

void check_model_selection() {
  std::mt19937 gen(44);
  const char* groups[3] = {"cat", "dog", "fox"};
  std::vector<TokenizedDoc> docs;
  for (int i = 0; i < 90; ++i) {
    const char* g = groups[i % 3];
    std::vector<std::string> tokens;
    const int len = 10 + static_cast<int>(gen() % 6);
    for (int t = 0; t < len; ++t) tokens.push_back(g + std::to_string(gen() % 10));
    docs.push_back(tts::doc("d" + std::to_string(i), tokens));
  }
  const Vocabulary vocab = build_vocab(docs, 1, 1.0);

  auto mean_cv = [&](int k, uint64_t seed) {
    LdaParams params;
    params.k = k;
    params.iterations = 80;
    params.seed = seed;
    const TopicModel model = train_lda(docs, vocab, params);
    return cv_coherence(model, docs, 5, 10);
  };

  double mean3 = 0.0, mean7 = 0.0;
  for (uint64_t seed = 101; seed <= 105; ++seed) {
    mean3 += mean_cv(3, seed);
    mean7 += mean_cv(7, seed);
  }
  mean3 /= 5.0;
  mean7 /= 5.0;
  expect(mean3 > mean7, "mean c_v at K=3 (" + fmt("%.4f", mean3) +
                            ") does not exceed K=7 (" + fmt("%.4f", mean7) + ")");
}

// ---- 5. skip-gram gradient check --------------------------------------

void check_gradients() {
  std::mt19937 gen(55);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int dim = 8, n_neg = 3;
  const double h = 1e-6;

  auto num_grad = [&](const std::function<double(double)>& f, double x0) {
    return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
  };
  auto rel_err = [](double a, double b) {
    return std::fabs(a - b) / std::max(1e-8, std::fabs(a) + std::fabs(b));
  };

  double worst = 0.0;
  for (int round = 0; round < 100; ++round) {
    std::vector<double> v_c(dim), u_o(dim);
    std::vector<std::vector<double>> u_neg(n_neg, std::vector<double>(dim));
    for (auto& x : v_c) x = unit(gen);
    for (auto& x : u_o) x = unit(gen);
    for (auto& row : u_neg)
      for (auto& x : row) x = unit(gen);

    std::vector<double> g_vc, g_uo;
    std::vector<std::vector<double>> g_uneg;
    ns_pair_grad(v_c, u_o, u_neg, g_vc, g_uo, g_uneg);

    for (int d = 0; d < dim; ++d) {
      auto fv = [&](double x) {
        auto v = v_c;
        v[d] = x;
        return ns_pair_loss(v, u_o, u_neg);
      };
      worst = std::max(worst, rel_err(g_vc[d], num_grad(fv, v_c[d])));
      auto fo = [&](double x) {
        auto u = u_o;
        u[d] = x;
        return ns_pair_loss(v_c, u, u_neg);
      };
      worst = std::max(worst, rel_err(g_uo[d], num_grad(fo, u_o[d])));
      for (int k = 0; k < n_neg; ++k) {
        auto fn = [&](double x) {
          auto u = u_neg;
          u[k][d] = x;
          return ns_pair_loss(v_c, u_o, u);
        };
        worst = std::max(worst, rel_err(g_uneg[k][d], num_grad(fn, u_neg[k][d])));
      }
    }
  }
  expect(worst < 1e-4, "worst relative gradient error " + fmt("%.3e", worst));
}

// ---- 6. embedding clique structure ------------------------------------

void check_clique_structure() {
  std::mt19937 gen(66);
  const std::vector<std::string> xs = {"xa", "xb", "xc", "xd", "xe"};
  const std::vector<std::string> ys = {"ya", "yb", "yc", "yd", "ye"};
  std::vector<TokenizedDoc> docs;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> tokens = (i % 2 == 0) ? xs : ys;
    std::shuffle(tokens.begin(), tokens.end(), gen);
    docs.push_back(tts::doc("d" + std::to_string(i), tokens));
  }
  const Vocabulary vocab = build_vocab(docs, 1, 1.0);

  SkipgramConfig config;
  config.dim = 16;
  config.window = 4;
  config.negatives = 3;
  config.epochs = 5;
  config.initial_lr = 0.05;
  config.min_count = 1;
  config.subsample_t = 0.0;
  const EmbeddingModel model = train_skipgram(docs, vocab, config, 42);

  auto mean_cos = [&](const std::vector<std::string>& a, const std::vector<std::string>& b,
                      bool same) {
    double acc = 0.0;
    int n = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      for (size_t j = same ? i + 1 : 0; j < b.size(); ++j) {
        acc += cosine_strict(vector_of(model, a[i]), vector_of(model, b[j]));
        ++n;
      }
    }
    return acc / n;
  };
  const double intra = 0.5 * (mean_cos(xs, xs, true) + mean_cos(ys, ys, true));
  const double inter = mean_cos(xs, ys, false);
  expect(intra - inter >= 0.2, "separation " + fmt("%.3f", intra - inter) + " < 0.2");
}

// ---- 7. duplicate storm detection -------------------------------------

void check_dedup_storm() {
  std::mt19937 gen(77);
  const std::vector<std::string> storm = {"urna",  "sob",    "ataque", "repassem",
                                          "antes", "que",    "apaguem", "urgente"};
  std::vector<TokenizedDoc> docs;
  int copies = 0, uniques = 0;
  for (int i = 0; i < 10000; ++i) {
    if (i % 4 == 0 && copies < 2500) {
      docs.push_back(tts::doc("c" + std::to_string(copies++), storm));
      continue;
    }
    std::vector<std::string> tokens = {"uniq" + std::to_string(uniques++)};
    const int len = 5 + static_cast<int>(gen() % 4);
    for (int t = 0; t < len; ++t) tokens.push_back("w" + std::to_string(gen() % 200));
    docs.push_back(tts::doc("u" + std::to_string(uniques), tokens));
  }
  expect(copies == 2500, "fixture should plant exactly 2500 copies");

  const DedupReport report = find_repetition_clusters(docs, 2, 0.9, 3);
  expect(report.clusters.size() == 1,
         "expected one cluster, found " + std::to_string(report.clusters.size()));
  expect(report.clusters[0].size == 2500,
         "cluster size " + std::to_string(report.clusters[0].size));
  expect(report.total_removed == 2499, "removed " + std::to_string(report.total_removed));

  const auto pruned = prune_tokens(docs, removed_doc_ids(report, PrunePolicy::keep_first));
  expect(pruned.size() == 7501, "post-prune count " + std::to_string(pruned.size()));

  // near-dup Jaccard values against a quadratic shingle-set pass
  for (uint32_t fixture_seed : {900u, 901u, 902u}) {
    std::mt19937 fgen(fixture_seed);
    std::vector<TokenizedDoc> small;
    for (int i = 0; i < 40; ++i) {
      std::vector<std::string> tokens;
      const int len = 12 + static_cast<int>(fgen() % 6);
      for (int t = 0; t < len; ++t) tokens.push_back("w" + std::to_string(fgen() % 30));
      small.push_back(tts::doc("d" + std::to_string(i), tokens));
    }
    for (int i = 0; i < 5; ++i) {
      auto tokens = small[i].tokens;
      tokens.push_back("extra");
      small.push_back(tts::doc("n" + std::to_string(i), tokens));
    }
    const double threshold = 0.6;
    const DedupReport got = find_repetition_clusters(small, 2, threshold, 3);

    std::map<uint64_t, size_t> first_of;
    std::vector<size_t> reps;
    for (size_t i = 0; i < small.size(); ++i) {
      if (first_of.emplace(fingerprint_tokens(small[i].tokens), i).second) reps.push_back(i);
    }
    std::vector<std::tuple<double, std::string, std::string>> want;
    for (size_t i = 0; i < reps.size(); ++i) {
      for (size_t j = i + 1; j < reps.size(); ++j) {
        const double jac = jaccard(shingle_set(small[reps[i]].tokens, 3),
                                   shingle_set(small[reps[j]].tokens, 3));
        if (jac >= threshold) {
          auto a = small[reps[i]].doc_id, b = small[reps[j]].doc_id;
          if (b < a) std::swap(a, b);
          want.emplace_back(jac, a, b);
        }
      }
    }
    std::sort(want.begin(), want.end(), [](const auto& x, const auto& y) {
      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
      return std::tie(std::get<1>(x), std::get<2>(x)) < std::tie(std::get<1>(y), std::get<2>(y));
    });
    expect(got.near_dup_pairs.size() == want.size(),
           "near-dup pair count " + std::to_string(got.near_dup_pairs.size()) + " vs brute " +
               std::to_string(want.size()));
    expect(!want.empty(), "small fixture should contain near-dups");
    for (size_t i = 0; i < want.size(); ++i) {
      auto a = got.near_dup_pairs[i].doc_a, b = got.near_dup_pairs[i].doc_b;
      if (b < a) std::swap(a, b);
      expect(got.near_dup_pairs[i].jaccard == std::get<0>(want[i]) &&
                 a == std::get<1>(want[i]) && b == std::get<2>(want[i]),
             "near-dup pair " + std::to_string(i) + " differs from brute force");
    }
  }
}

// ---- 8. polar word ranking oracle -------------------------------------

void check_polar_ranking() {
  const SentimentLexicon lex = parse_lexicon_text(
      "otimo.PoS=Adj;TG=HUM:N0;POL:N0=1\n"
      "bom.PoS=Adj;TG=HUM:N0;POL:N0=1\n"
      "ruim.PoS=Adj;TG=HUM:N0;POL:N0=-1\n"
      "pessimo.PoS=Adj;TG=HUM:N0;POL:N0=-1\n"
      "morno.PoS=Adj;TG=HUM:N0;POL:N0=0\n"
      "comum.PoS=Adj;TG=HUM:N0;POL:N0=0\n");

  // planted frequencies, including a tie resolved by lemma order
  std::vector<TokenizedDoc> docs;
  auto plant = [&](const std::string& w, int times) {
    std::vector<std::string> tokens;
    for (int i = 0; i < times; ++i) tokens.push_back(w);
    docs.push_back(tts::doc("p_" + w, tokens));
  };
  plant("otimo", 7);
  plant("ruim", 7);
  plant("bom", 5);
  plant("pessimo", 2);
  plant("morno", 9);  // most frequent of all, but neutral
  plant("comum", 1);

  const PolarWordRanking ranking = top_polar_words(docs, lex, 10);
  expect(ranking.ranked.size() == 4, "expected 4 polar lemmas, got " +
                                         std::to_string(ranking.ranked.size()));
  const std::vector<std::string> order = {"otimo", "ruim", "bom", "pessimo"};
  for (size_t i = 0; i < order.size(); ++i) {
    expect(ranking.ranked[i].lemma == order[i],
           "rank " + std::to_string(i) + " is " + ranking.ranked[i].lemma);
    expect(ranking.ranked[i].polarity != 0, "a neutral word slipped into the ranking");
  }
  expect(ranking.ranked[0].frequency == 7 && ranking.ranked[1].frequency == 7,
         "tied frequencies were not preserved");

  // randomized corpora against the literal recount
  std::mt19937 gen(88);
  const std::vector<std::string> words = {"otimo", "bom", "ruim", "pessimo",
                                          "morno", "comum", "fora"};
  for (int round = 0; round < 10; ++round) {
    std::vector<TokenizedDoc> corpus;
    const int ndocs = 1 + static_cast<int>(gen() % 6);
    for (int d = 0; d < ndocs; ++d) {
      std::vector<std::string> tokens;
      const int len = static_cast<int>(gen() % 12);
      for (int t = 0; t < len; ++t) tokens.push_back(words[gen() % words.size()]);
      corpus.push_back(tts::doc("d" + std::to_string(d), tokens));
    }
    std::map<std::string, long long> freq;
    for (const auto& d : corpus) {
      for (const auto& t : d.tokens) {
        const auto pol = classify_token(lex, t);
        if (pol && *pol != 0) ++freq[t];
      }
    }
    std::vector<PolarWord> want;
    for (const auto& [lemma, f] : freq) want.push_back({lemma, lex.entries.at(lemma).polarity, f});
    std::sort(want.begin(), want.end(), [](const PolarWord& a, const PolarWord& b) {
      if (a.frequency != b.frequency) return a.frequency > b.frequency;
      return a.lemma < b.lemma;
    });
    const PolarWordRanking got = top_polar_words(corpus, lex, 100);
    expect(got.ranked.size() == want.size(), "random corpus ranking size differs");
    for (size_t i = 0; i < want.size(); ++i) {
      expect(got.ranked[i].lemma == want[i].lemma &&
                 got.ranked[i].frequency == want[i].frequency &&
                 got.ranked[i].polarity == want[i].polarity,
             "random corpus rank " + std::to_string(i) + " differs");
    }
  }
}

// ---- 9. opinion affinity argmax ----------------------------------------

void check_affinity_argmax() {
  std::mt19937 gen(99);
  const std::vector<std::string> sport = {"bola",   "campo", "gol",    "jogo",
                                          "placar", "time",  "torcida"};
  const std::vector<std::string> prison = {"cela",  "grito", "muro",
                                           "noite", "porao", "silencio"};
  std::vector<TokenizedDoc> docs;
  for (int i = 0; i < 80; ++i) {
    const bool a_side = i < 40;
    const auto& pool = a_side ? sport : prison;
    // planted twice per doc so each opinion word tops its own topic,
    // putting it in range of the exclude_self ablation
    const std::string opinion = a_side ? "vencer" : "torturar";
    std::vector<std::string> tokens = {opinion, opinion};
    const int len = 6 + static_cast<int>(gen() % 4);
    for (int t = 0; t < len; ++t) tokens.push_back(pool[gen() % pool.size()]);
    docs.push_back(tts::doc("d" + std::to_string(i), tokens));
  }
  const Vocabulary vocab = build_vocab(docs, 1, 1.0);

  LdaParams params;
  params.k = 2;
  params.iterations = 150;
  params.seed = 5;
  const TopicModel model = train_lda(docs, vocab, params);

  std::vector<std::vector<std::string>> tops(2);
  for (int t = 0; t < 2; ++t) {
    for (const auto& [term, weight] : top_words(model, t, 5)) tops[t].push_back(term);
  }
  auto group_hits = [&](int t, const std::vector<std::string>& pool) {
    int hits = 0;
    for (const auto& w : tops[t]) {
      if (std::find(pool.begin(), pool.end(), w) != pool.end()) ++hits;
    }
    return hits;
  };
  const int topic_a = group_hits(0, sport) > group_hits(1, sport) ? 0 : 1;
  const int topic_b = 1 - topic_a;
  expect(group_hits(topic_a, sport) > group_hits(topic_a, prison),
         "topics did not separate the planted groups");

  const std::vector<std::string> opinions = {"vencer", "torturar"};
  const EmbeddingModel unused;
  const AffinityMatrix aff =
      opinion_topic_affinity(model, unused, opinions, 5, AffinityMode::bow, false);
  const std::vector<int> best = affinity_argmax(aff);
  expect(best[topic_a] == 0, "sport topic argmax is not 'vencer'");
  expect(best[topic_b] == 1, "prison topic argmax is not 'torturar'");

  const AffinityMatrix ablated =
      opinion_topic_affinity(model, unused, opinions, 5, AffinityMode::bow, true);
  int changed = 0;
  for (int t = 0; t < 2; ++t) {
    for (size_t o = 0; o < opinions.size(); ++o) {
      const bool in_tops =
          std::find(tops[t].begin(), tops[t].end(), opinions[o]) != tops[t].end();
      const AffinityCell& x = aff.cells[t][o];
      const AffinityCell& y = ablated.cells[t][o];
      const bool same = x.value == y.value && x.used == y.used && x.skipped == y.skipped &&
                        x.missing == y.missing;
      if (!in_tops) {
        expect(same, "exclude_self changed a cell whose topic never listed the opinion");
      } else if (!same) {
        ++changed;
      }
    }
  }
  expect(changed >= 2, "exclude_self should alter the predicted cells");
  const std::vector<int> best_ablated = affinity_argmax(ablated);
  expect(best_ablated[topic_a] == 0 && best_ablated[topic_b] == 1,
         "argmax mapping did not survive the exclude_self ablation");
}

// ---- 10. MDS and divergence fidelity -----------------------------------

void check_mds_fidelity() {
  auto dist = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };

  const double r2 = std::sqrt(2.0);
  const std::vector<std::vector<double>> square = {
      {0.0, 1.0, r2, 1.0}, {1.0, 0.0, 1.0, r2}, {r2, 1.0, 0.0, 1.0}, {1.0, r2, 1.0, 0.0}};
  const Projection sq = project_2d(square);
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) {
      expect(std::abs(dist(sq.coords[i], sq.coords[j]) - square[i][j]) <= 1e-9,
             "square recovery off at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  const double side = 0.8;
  const std::vector<std::vector<double>> equi = {
      {0.0, side, side}, {side, 0.0, side}, {side, side, 0.0}};
  const Projection tri = project_2d(equi);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = i + 1; j < 3; ++j) {
      expect(std::abs(dist(tri.coords[i], tri.coords[j]) - side) <= 1e-9,
             "equilateral output is not equilateral");
    }
  }

  const std::vector<double> p = {0.2, 0.5, 0.3, 0.0};
  expect(jsd(p, p) == 0.0, "jsd(p,p) is not exactly 0");
  expect(std::abs(jsd({1.0, 0.0}, {0.0, 1.0}) - std::log(2.0)) <= 1e-12,
         "jsd on disjoint supports is not ln 2");
}

// ---- 11. end-to-end determinism ----------------------------------------

void check_pipeline_determinism() {
  const std::string data_dir = TT_DATA_DIR;
  PipelineConfig cfg = PipelineConfig::from_file(data_dir + "/fixtures/config.json");
  cfg.set("paths.corpus", data_dir + "/fixtures/tweets1k.jsonl");
  cfg.set("paths.stopwords", data_dir + "/stopwords_pt.txt");
  cfg.set("paths.lemmas", data_dir + "/lemmas_pt.tsv");
  cfg.set("paths.lexicon", data_dir + "/sentilex_fixture.txt");

  tts::TempDir dir;
  cfg.set("paths.out_dir", dir.file("run"));

  const std::vector<const char*> bundle = {
      artifact::corpus,    artifact::tokens,     artifact::dedup_report,
      artifact::corpus_pruned, artifact::tokens_pruned, artifact::lda_model,
      artifact::embedding, artifact::coherence,  artifact::polar_words,
      artifact::affinity,  artifact::intertopic, artifact::report,
      artifact::map_svg,   artifact::heatmap_svg};

  run_stage(cfg, "pipeline");
  std::map<std::string, std::string> first;
  for (const char* name : bundle) {
    first[name] = tts::read_file(dir.file("run") + "/" + name);
  }
  fs::remove_all(dir.file("run"));

  run_stage(cfg, "pipeline");
  for (const char* name : bundle) {
    const std::string again = tts::read_file(dir.file("run") + "/" + name);
    expect(again == first[name], std::string("artifact '") + name + "' differs between runs");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*body)();
    double budget_seconds;  // 0 = untimed
  };
  const Criterion criteria[] = {
      {1, "lda count invariants hold after every sweep", check_count_conservation, 10.0},
      {2, "lda recovers planted disjoint topics (purity >= 0.9)", check_topic_recovery, 5.0},
      {3, "c_v matches the window-materializing oracle (1e-12)", check_cv_oracle, 0.0},
      {4, "mean c_v prefers the planted topic count (K=3 over K=7)", check_model_selection, 0.0},
      {5, "skip-gram gradients match finite differences (<1e-4)", check_gradients, 1.0},
      {6, "embedding separates planted cliques by >= 0.2 cosine", check_clique_structure, 0.0},
      {7, "dedup isolates a 2500-copy storm and exact jaccard", check_dedup_storm, 0.0},
      {8, "polar ranking equals brute-force counts, no neutrals", check_polar_ranking, 0.0},
      {9, "affinity argmax maps planted groups to their opinions", check_affinity_argmax, 0.0},
      {10, "mds recovers fixtures to 1e-9, jsd anchors to 1e-12", check_mds_fidelity, 0.0},
      {11, "two pipeline runs on the bundled corpus are byte-identical",
       check_pipeline_determinism, 60.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      c.body();
    } catch (const Failure& f) {
      detail = f.detail;
    } catch (const Error& e) {
      detail = std::string("unexpected error: ") + e.what();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      detail = "took " + fmt("%.2f", seconds) + "s, budget " +
               fmt("%.0f", c.budget_seconds) + "s";
    }
    if (detail.empty()) {
      std::printf("[PASS] %2d. %s (%.2fs)\n", c.id, c.name, seconds);
    } else {
      std::printf("[FAIL] %2d. %s (%.2fs): %s\n", c.id, c.name, seconds, detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 11 acceptance checks failed\n", failures);
    return 1;
  }
  std::printf("all 11 acceptance checks passed\n");
  return 0;
}
