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

#ifndef REDPARSE_EVALUATION_HPP_
#define REDPARSE_EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redparse/parser.hpp"
#include "redparse/reducibility.hpp"
#include "redparse/treebank.hpp"

namespace redparse {

// Words that no other word attaches to, per sentence position (0-based).
std::vector<bool> gold_leaves(const Sentence &sentence);

// Fraction of words whose predicted head equals the gold head.
double uas(const TreeMap &predicted, const Corpus &gold, bool ignore_punct);

struct LeafAccuracy {
  double accuracy = 0.0;
  double all_leaf_baseline = 0.0;
  std::size_t words = 0;
};

// |predictions| parallel to gold.sentences.
LeafAccuracy leaf_accuracy(std::span<const LeafPrediction> predictions,
                           const Corpus &gold, bool ignore_punct = false);

struct RootAccuracy {
  double accuracy = 0.0;
  double random_baseline = 0.0;
  std::size_t no_eligible_word = 0;  // all-punctuation sentences, ignored mode
};

// Predicted root = leftmost maximum word score. |tables| parallel to
// gold.sentences.
RootAccuracy root_accuracy(std::span<const ScoreTable *const> tables,
                           const Corpus &gold, bool ignore_punct);

struct DirectionAccuracy {
  double accuracy = 0.0;
  double right_baseline = 0.0;
  std::size_t edges = 0;
};

DirectionAccuracy direction_accuracy(std::span<const ScoreTable *const> tables,
                                     const Corpus &gold);

struct PosRow {
  std::string upos;
  double mean_score = 0.0;
  std::size_t count = 0;
  double leaf_fraction = 0.0;
};

struct WordRow {
  std::string sent_id;
  int index = 0;
  std::string form;
  std::string upos;
  double score = 0.0;
  bool is_gold_leaf = false;
};

struct PosAggregate {
  std::vector<PosRow> tags;    // sorted by UPOS
  std::vector<WordRow> words;  // corpus order
};

PosAggregate pos_aggregate(std::span<const ScoreTable *const> tables,
                           const Corpus &gold);
std::string tags_csv(const PosAggregate &aggregate);
std::string words_csv(const PosAggregate &aggregate);

// Every diagnostic in one place. Fields that need predicted trees or score
// tables are nullopt when those inputs were not given.
struct EvalReport {
  std::optional<double> uas;
  std::optional<double> uas_no_punct;
  std::optional<double> leaf_accuracy;
  std::optional<double> all_leaf_baseline;
  std::optional<double> root_accuracy;
  std::optional<double> root_accuracy_no_punct;
  std::optional<double> root_random_baseline;
  std::optional<double> direction_accuracy;
  std::optional<double> direction_right_baseline;
  std::size_t n_sentences = 0;
  std::size_t n_words = 0;
  // Leaf statistics over non-punctuation words only.
  std::optional<double> leaf_accuracy_no_punct;
  std::optional<double> all_leaf_baseline_no_punct;
};

struct ReportOptions {
  double leaf_factor = 1.2;
  bool punct_override = false;  // apply to tables before the diagnostics
};

// Throws Error(kInvalidArgument) "no sentences" on an empty corpus.
EvalReport full_report(const Corpus &gold, const TreeMap *predicted,
                       const std::vector<ScoreTable> *tables,
                       const ReportOptions &options = {});

// Field order follows EvalReport; output is byte-stable.
std::string to_json(const EvalReport &report);

struct Table1Row {
  std::string parser;
  ParseMode mode = ParseMode::kRightChain;
  bool punct_override = false;
  double uas = 0.0;
};

// Left chain, right chain, Algorithm D and R with and without the
// punctuation override, scored against the corpus's own gold heads.
std::vector<Table1Row> table1(std::span<const ScoreTable> tables,
                              const Corpus &gold, const ParseOptions &base);
std::string table1_markdown(std::span<const Table1Row> rows);
std::string table1_csv(std::span<const Table1Row> rows);

}  // namespace redparse

#endif  // REDPARSE_EVALUATION_HPP_
