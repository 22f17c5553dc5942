// Copyright 2026 The redparse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
//
//   acceptance [--only desk|ewt] [--ewt PATH]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "redparse/embedding_dump.hpp"
#include "redparse/error.hpp"
#include "redparse/evaluation.hpp"
#include "redparse/parser.hpp"
#include "redparse/reducibility.hpp"
#include "redparse/treebank.hpp"
#include "redparse/variants.hpp"
#include "test_support.hpp"

namespace redparse {
namespace {

namespace t = testing;

// Pinned tolerances and sizes.
constexpr int kTreeInstances = 1000;
constexpr int kTreeMaxLen = 12;
constexpr double kTreeSeconds = 10.0;
constexpr int kMaximalityInstances = 200;
constexpr int kMaximalityMaxLen = 10;
constexpr int kOracleBlocks = 500;
constexpr double kOracleRelTol = 1e-9;
constexpr double kRotationRelTol = 1e-6;
constexpr int kLocalitySentences = 200;
constexpr double kRightChainLo = 0.25, kRightChainHi = 0.35;
constexpr double kLeftChainLo = 0.04, kLeftChainHi = 0.10;
constexpr double kEwtSeconds = 5.0;
constexpr double kPipelineSeconds = 5.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string &what) {
    if (!ok && failures_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome done(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, const char *pattern = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string heads_str(const std::vector<int> &h) {
  std::string s = "[";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s + "]";
}

std::vector<ScoreTable> tree_instances() {
  std::mt19937_64 rng(20190601);
  std::uniform_int_distribution<int> length(1, kTreeMaxLen);
  std::vector<ScoreTable> out;
  for (int i = 0; i < kTreeInstances; ++i) out.push_back(t::random_table(rng, length(rng), i));
  return out;
}

Outcome tree_validity() {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  for (const ScoreTable &table : tree_instances()) {
    const std::vector<int> r = algorithm_r(table.word_scores()).heads;
    const std::vector<int> d = brackets_to_tree(algorithm_d(table)).heads;
    c.expect(static_cast<int>(r.size()) == table.n && t::is_valid_tree(r), "algR " + heads_str(r));
    c.expect(static_cast<int>(d.size()) == table.n && t::is_valid_tree(d), "algD " + heads_str(d));
    c.expect(t::is_projective(d), "algD not projective " + heads_str(d));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kTreeSeconds, "took " + fmt(elapsed, "%.2f") + " s");
  return c.done(std::to_string(kTreeInstances) + " instances, " + fmt(elapsed, "%.3f") + " s");
}

Outcome algorithm_r_contract() {
  Check c;
  for (const ScoreTable &table : tree_instances()) {
    const std::vector<double> s = table.word_scores();
    const std::vector<int> h = algorithm_r(s).heads;
    const int root = static_cast<int>(std::find(h.begin(), h.end(), 0) - h.begin()) + 1;
    for (int i = 0; i < table.n; ++i) {
      if (h[i] == 0) continue;
      c.expect(s[h[i] - 1] > s[i] || h[i] == root,
               "word " + std::to_string(i + 1) + " of " + heads_str(h));
    }
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(1e-6, 1.0);
  int monotone = 0;
  for (int n = 1; n <= kTreeMaxLen; ++n) {
    for (int rep = 0; rep < 50; ++rep, ++monotone) {
      std::vector<double> s{step(rng)};
      while (static_cast<int>(s.size()) < n) s.push_back(s.back() + step(rng));
      c.expect(algorithm_r(s).heads == t::reference_r(s, true) &&
                   algorithm_r(s).heads == right_chain(n).heads,
               "increasing n=" + std::to_string(n));
    }
  }
  return c.done(std::to_string(kTreeInstances) + " instances + " + std::to_string(monotone) +
                " increasing vectors");
}

Outcome algorithm_d_maximality() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> length(1, kMaximalityMaxLen);
  Check c;
  int rejected = 0;
  for (int i = 0; i < kMaximalityInstances; ++i) {
    const int n = length(rng);
    const ScoreTable table = t::random_table(rng, n, i);
    std::vector<BracketDecision> trace;
    const HeadedBracketing b = algorithm_d(table, &trace);
    c.expect(t::bracketing_well_formed(b.brackets, n), "final bracketing ill-formed");
    for (const BracketDecision &d : trace) {
      if (d.accepted) continue;
      ++rejected;
      std::vector<Span> with = b.brackets;
      with.push_back(d.span);
      c.expect(!t::bracketing_well_formed(with, n),
               "instance " + std::to_string(i) + " could still take " +
                   std::to_string(d.span.start) + "," + std::to_string(d.span.len));
    }
  }
  return c.done(std::to_string(kMaximalityInstances) + " instances, " + std::to_string(rejected) +
                " rejected candidates rechecked");
}

EmbeddingBlock scaled(EmbeddingBlock b, float factor) {
  for (float &x : b.values) x *= factor;
  return b;
}

Outcome eq1_oracle() {
  Check c;
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < kOracleBlocks; ++i) {
    const int n = std::uniform_int_distribution<int>(2, 24)(rng);
    const int dim = std::uniform_int_distribution<int>(1, 64)(rng);
    const int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int len = std::uniform_int_distribution<int>(1, std::min(n - start, n - 1))(rng);
    const EmbeddingBlock base = t::random_block(rng, 0, std::nullopt, n, dim);
    const EmbeddingBlock variant = t::random_block(rng, 0, Span{start, len}, n - len, dim);
    const double expected = t::naive_phrase_score(base, variant, {start, len});
    const double got = phrase_score(base, variant, {start, len});
    const double rel = std::abs(got - expected) / expected;
    worst = std::max(worst, rel);
    c.expect(rel <= kOracleRelTol, "relative error " + fmt(rel, "%.3g"));
  }

  // Rotations in the plane or in 3-space, applied to both blocks.
  std::normal_distribution<double> gauss;
  double worst_rot = 0.0;
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      double q[3][3] = {};
      for (int r = 0; r < dim; ++r) {
        for (int k = 0; k < dim; ++k) q[r][k] = gauss(rng);
        for (int p = 0; p < r; ++p) {
          double dot = 0;
          for (int k = 0; k < dim; ++k) dot += q[r][k] * q[p][k];
          for (int k = 0; k < dim; ++k) q[r][k] -= dot * q[p][k];
        }
        double norm = 0;
        for (int k = 0; k < dim; ++k) norm += q[r][k] * q[r][k];
        for (int k = 0; k < dim; ++k) q[r][k] /= std::sqrt(norm);
      }
      auto rotate = [&](EmbeddingBlock b) {
        for (int w = 0; w < b.n_words; ++w) {
          auto row = b.row(w);
          double in[3] = {};
          for (int k = 0; k < dim; ++k) in[k] = row[k];
          for (int r = 0; r < dim; ++r) {
            double acc = 0;
            for (int k = 0; k < dim; ++k) acc += q[r][k] * in[k];
            row[r] = static_cast<float>(acc);
          }
        }
        return b;
      };
      const int n = std::uniform_int_distribution<int>(2, 10)(rng);
      const int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int len = std::uniform_int_distribution<int>(1, std::min(n - start, n - 1))(rng);
      const EmbeddingBlock base = t::random_block(rng, 0, std::nullopt, n, dim);
      const EmbeddingBlock variant = t::random_block(rng, 0, Span{start, len}, n - len, dim);
      const double plain = phrase_score(base, variant, {start, len});
      const double turned = phrase_score(rotate(base), rotate(variant), {start, len});
      const double rel = std::abs(turned - plain) / plain;
      worst_rot = std::max(worst_rot, rel);
      c.expect(rel <= kRotationRelTol, "rotation error " + fmt(rel, "%.3g"));
    }
  }

  // Scaling every vector by c > 0 keeps the argmax and every pairwise order.
  int tables = 0;
  for (float factor : {0.5f, 2.0f, 3.0f, 10.0f}) {
    for (int trial = 0; trial < 25; ++trial, ++tables) {
      const int n = std::uniform_int_distribution<int>(2, 8)(rng);
      const int dim = std::uniform_int_distribution<int>(1, 16)(rng);
      std::vector<EmbeddingBlock> blocks = {t::random_block(rng, 0, std::nullopt, n, dim)};
      for (int len = 1; len < n; ++len) {
        for (int s = 0; s + len <= n; ++s) {
          blocks.push_back(t::random_block(rng, 0, Span{s, len}, n - len, dim));
        }
      }
      std::vector<EmbeddingBlock> big;
      for (const EmbeddingBlock &b : blocks) big.push_back(scaled(b, factor));
      const ScoreTable a = score_sentence(blocks);
      const ScoreTable b = score_sentence(big);
      std::vector<double> va, vb;
      for (const auto &[span, score] : a.scores) va.push_back(score);
      for (const auto &[span, score] : b.scores) vb.push_back(score);
      c.expect(std::max_element(va.begin(), va.end()) - va.begin() ==
                   std::max_element(vb.begin(), vb.end()) - vb.begin(),
               "argmax moved under scaling");
      for (std::size_t i = 0; i < va.size(); ++i) {
        for (std::size_t j = 0; j < va.size(); ++j) {
          c.expect((va[i] < va[j]) == (vb[i] < vb[j]), "pairwise order changed under scaling");
        }
      }
    }
  }
  return c.done(std::to_string(kOracleBlocks) + " blocks, worst rel " + fmt(worst, "%.2g") +
                "; rotation worst rel " + fmt(worst_rot, "%.2g") + "; " + std::to_string(tables) +
                " scaled tables");
}

Outcome mock_locality() {
  Check c;
  std::mt19937_64 rng(99);
  constexpr int kDim = 16;
  constexpr std::uint64_t kSeed = 5;
  int spans = 0;
  for (int i = 0; i < kLocalitySentences; ++i) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    Sentence sentence;
    sentence.sent_id = "m" + std::to_string(i);
    const std::vector<std::string> w = t::random_words(rng, n);
    for (int k = 0; k < n; ++k) {
      Word word;
      word.index = k + 1;
      word.form = w[k];
      sentence.words.push_back(word);
    }
    const std::vector<Variant> variants = enumerate_variants(sentence, i);
    const EmbeddingBlock base = mock_embed(variants.front(), kDim, kSeed);
    auto at = [&](int k, const char *edge) { return k < 0 || k >= n ? std::string(edge) : w[k]; };
    for (int k = 0; k < n; ++k) {
      const std::vector<float> oracle = t::mock_vector(w[k], at(k - 1, "<s>"), at(k + 1, "</s>"), kDim, kSeed);
      c.expect(std::equal(oracle.begin(), oracle.end(), base.row(k).begin()),
               "base vector differs from the recipe");
    }
    for (std::size_t v = 1; v < variants.size(); ++v) {
      ++spans;
      const Span p = *variants[v].span;
      const EmbeddingBlock block = mock_embed(variants[v], kDim, kSeed);
      const std::vector<int> keep = remaining_alignment(n, p);
      double sum = 0.0;
      for (std::size_t j = 0; j < keep.size(); ++j) {
        const int k = keep[j];
        const auto b = base.row(k);
        const auto d = block.row(static_cast<int>(j));
        const double dist = t::distance(std::vector<float>(b.begin(), b.end()),
                                        std::vector<float>(d.begin(), d.end()));
        const bool adjacent = k == p.start - 1 || k == p.end();
        c.expect(adjacent || dist == 0.0, "non-adjacent word " + std::to_string(k) + " moved");
      }
      // Two-neighbour closed form straight from the recipe.
      const int left = p.start - 1;
      const int right = p.end();
      if (left >= 0) {
        sum += t::distance(t::mock_vector(w[left], at(left - 1, "<s>"), at(p.start, "</s>"), kDim, kSeed),
                           t::mock_vector(w[left], at(left - 1, "<s>"), at(right, "</s>"), kDim, kSeed));
      }
      if (right < n) {
        sum += t::distance(t::mock_vector(w[right], at(right - 1, "<s>"), at(right + 1, "</s>"), kDim, kSeed),
                           t::mock_vector(w[right], at(left, "<s>"), at(right + 1, "</s>"), kDim, kSeed));
      }
      const double closed = sum / static_cast<double>(n - p.len);
      const double got = phrase_score(base, block, p);
      c.expect(std::abs(got - closed) <= 1e-12 * std::max(1.0, closed),
               "closed form " + fmt(closed, "%.17g") + " vs " + fmt(got, "%.17g"));
    }
  }
  return c.done(std::to_string(kLocalitySentences) + " sentences, " + std::to_string(spans) +
                " deletions");
}

Outcome ewt_chain_baselines(const std::string &path) {
  if (path.empty() || !std::filesystem::exists(path)) {
    return {false, "UD EWT dev file not available at '" + path +
                       "' (set REDPARSE_EWT_DEV or pass --ewt PATH)"};
  }
  const auto start = std::chrono::steady_clock::now();
  const Corpus corpus = read_conllu_file(path);
  const double right = uas(parse_corpus({}, corpus, {ParseMode::kRightChain}), corpus, false);
  const double left = uas(parse_corpus({}, corpus, {ParseMode::kLeftChain}), corpus, false);
  const double elapsed = seconds_since(start);
  Check c;
  c.expect(right >= kRightChainLo && right <= kRightChainHi, "right chain " + fmt(right));
  c.expect(left >= kLeftChainLo && left <= kLeftChainHi, "left chain " + fmt(left));
  c.expect(elapsed < kEwtSeconds, "took " + fmt(elapsed, "%.2f") + " s");
  return c.done(std::to_string(corpus.sentences.size()) + " sentences, right " + fmt(right) +
                ", left " + fmt(left) + ", " + fmt(elapsed, "%.3f") + " s");
}

std::vector<ScoreTable> mock_tables(const Corpus &corpus, int dim, std::uint64_t seed) {
  std::vector<EmbeddingBlock> blocks;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    for (const Variant &v : enumerate_variants(corpus.sentences[i], static_cast<int>(i))) {
      blocks.push_back(mock_embed(v, dim, seed));
    }
  }
  std::istringstream dump(write_dump(blocks, dim));
  return score_dump(dump, corpus);
}

Outcome limiting_cases(const std::string &data_dir) {
  Check c;
  const Corpus toy = read_conllu_file(data_dir + "/toy.conllu");
  const std::vector<ScoreTable> tables = mock_tables(toy, 32, 0);
  ReportOptions huge;
  huge.leaf_factor = 1e300;
  const EvalReport big = full_report(toy, nullptr, &tables, huge);
  c.expect(*big.leaf_accuracy == *big.all_leaf_baseline,
           "large factor " + fmt(*big.leaf_accuracy) + " vs baseline " + fmt(*big.all_leaf_baseline));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> positive(1e-3, 5.0);
  int tried = 0;
  for (int i = 0; i < 500; ++i, ++tried) {
    const int n = std::uniform_int_distribution<int>(1, 15)(rng);
    ScoreTable table = t::random_table(rng, n, i);
    for (auto &[span, score] : table.scores) score = positive(rng);
    if (n == 1) continue;
    const LeafPrediction none = classify_leaves(table, 0.0);
    c.expect(std::none_of(none.is_leaf.begin(), none.is_leaf.end(), [](bool b) { return b; }),
             "factor 0 predicted a leaf");
    const LeafPrediction all = classify_leaves(table, 1e300);
    c.expect(std::all_of(all.is_leaf.begin(), all.is_leaf.end(), [](bool b) { return b; }),
             "huge factor missed a leaf");
  }
  for (std::size_t i = 0; i < toy.sentences.size(); ++i) {
    const ScoreTable once = punct_override(tables[i], toy.sentences[i]);
    c.expect(punct_override(once, toy.sentences[i]) == once, "override not idempotent");
  }
  return c.done("toy leaf_accuracy at huge factor = baseline = " + fmt(*big.all_leaf_baseline) +
                "; " + std::to_string(tried) + " random tables; override idempotent on " +
                std::to_string(toy.sentences.size()) + " sentences");
}

// Filter, manifest, mock dump, scores, parse, report, all through the
// serialized formats.
std::string run_pipeline(const std::string &data_dir, std::string *dump_bytes) {
  const Corpus toy = read_conllu_file(data_dir + "/toy.conllu");
  const Corpus kept =
      filter_by_vocab(toy, read_vocabulary_file(data_dir + "/toy_vocab.txt"), true).corpus;
  const Corpus reread = parse_conllu(write_conllu(kept), "toy");
  std::string manifest;
  for (std::size_t i = 0; i < reread.sentences.size(); ++i) {
    for (const Variant &v : enumerate_variants(reread.sentences[i], static_cast<int>(i))) {
      manifest += manifest_line(v) + "\n";
    }
  }
  std::vector<EmbeddingBlock> blocks;
  for (const Variant &v : read_manifest(manifest)) blocks.push_back(mock_embed(v, 32, 0));
  *dump_bytes = write_dump(blocks, 32);
  std::istringstream dump(*dump_bytes);
  std::string score_text;
  for (const ScoreTable &table : score_dump(dump, reread)) score_text += score_line(table) + "\n";
  const std::vector<ScoreTable> tables = read_scores(score_text);
  ParseOptions options;
  options.mode = ParseMode::kAlgorithmR;
  const TreeMap trees = parse_corpus(tables, reread, options);
  const Corpus parsed = parse_conllu(emit_conllu(reread, trees), "parsed");
  const TreeMap parsed_trees = gold_trees(parsed);
  return to_json(full_report(reread, &parsed_trees, &tables));
}

Outcome toy_pipeline(const std::string &data_dir) {
  const auto start = std::chrono::steady_clock::now();
  std::string dump_a, dump_b;
  const std::string a = run_pipeline(data_dir, &dump_a);
  const std::string b = run_pipeline(data_dir, &dump_b);
  const double elapsed = seconds_since(start);
  Check c;
  c.expect(a == b, "report JSON differs between runs");
  c.expect(dump_a == dump_b, "dump bytes differ between runs");
  c.expect(elapsed < kPipelineSeconds, "took " + fmt(elapsed, "%.2f") + " s");
  return c.done("two runs byte-identical (" + std::to_string(a.size()) + " B report, " +
                std::to_string(dump_a.size()) + " B dump), " + fmt(elapsed, "%.3f") + " s");
}

}  // namespace
}  // namespace redparse

int main(int argc, char **argv) {
  using redparse::Outcome;
  std::string only;
  std::string ewt = REDPARSE_EWT_DEV;
  const std::string data_dir = REDPARSE_DATA_DIR;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = argv[++i];
    } else if (!std::strcmp(argv[i], "--ewt") && i + 1 < argc) {
      ewt = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--only desk|ewt] [--ewt PATH]\n", argv[0]);
      return 2;
    }
  }
  struct Criterion {
    const char *name;
    bool desk;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"tree validity", true, redparse::tree_validity},
      {"algorithm R contract", true, redparse::algorithm_r_contract},
      {"algorithm D greedy maximality", true, redparse::algorithm_d_maximality},
      {"phrase score oracle", true, redparse::eq1_oracle},
      {"mock embedder locality", true, redparse::mock_locality},
      {"chain baselines on UD EWT dev", false, [&] { return redparse::ewt_chain_baselines(ewt); }},
      {"limiting cases", true, [&] { return redparse::limiting_cases(data_dir); }},
      {"toy pipeline determinism", true, [&] { return redparse::toy_pipeline(data_dir); }},
  };
  int failed = 0;
  for (const Criterion &criterion : criteria) {
    if (only == "desk" && !criterion.desk) continue;
    if (only == "ewt" && criterion.desk) continue;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("%s  %s: %s\n", outcome.pass ? "PASS" : "FAIL", criterion.name,
                outcome.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
