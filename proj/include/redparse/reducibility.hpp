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

#ifndef REDPARSE_REDUCIBILITY_HPP_
#define REDPARSE_REDUCIBILITY_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redparse/embedding_dump.hpp"
#include "redparse/treebank.hpp"
#include "redparse/variants.hpp"

namespace redparse {

// Scores of every deleted span of one sentence. A score is the mean
// Euclidean shift of the remaining words' vectors, so a HIGH score marks a
// span that is hard to remove.
struct ScoreTable {
  int sent_index = 0;
  std::string sent_id;
  int n = 0;
  std::map<Span, double> scores;

  std::optional<double> word_score(int position) const;
  // All single-word scores; throws Error(kMissing) if any is absent.
  std::vector<double> word_scores() const;
  bool operator==(const ScoreTable &) const = default;
};

struct LeafPrediction {
  int sent_index = 0;
  std::vector<bool> is_leaf;
  double threshold = 0.0;
  double factor = 0.0;
};

double phrase_score(const EmbeddingBlock &base, const EmbeddingBlock &variant,
                    const Span &span);

// Blocks of a single sentence: exactly one BASE plus any deleted variants.
ScoreTable score_sentence(std::span<const EmbeddingBlock> blocks);

// Scores a whole dump against the corpus it was enumerated from. Records of a
// sentence must be contiguous.
std::vector<ScoreTable> score_dump(std::istream &dump, const Corpus &corpus);

// A word is a leaf iff its score is strictly below factor * mean word score.
LeafPrediction classify_leaves(const ScoreTable &table, double factor = 1.2);

// Zeroes the single-word score of every punctuation word.
ScoreTable punct_override(ScoreTable table, const Sentence &sentence);

// Pairs each corpus sentence with its table by sent_id; throws
// Error(kMissing) naming the first uncovered sentence.
std::vector<const ScoreTable *> align_tables(std::span<const ScoreTable> tables,
                                             const Corpus &corpus);

// Score file: one JSON object per sentence, scores printed with 17
// significant digits.
std::string score_line(const ScoreTable &table);
ScoreTable parse_score_line(std::string_view line);
std::vector<ScoreTable> read_scores(std::string_view text);
std::vector<ScoreTable> read_scores_file(const std::string &path);

}  // namespace redparse

#endif  // REDPARSE_REDUCIBILITY_HPP_
