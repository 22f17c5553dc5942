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

#include "redparse/evaluation.hpp"

#include <charconv>
#include <cstdio>
#include <map>

#include "json.hpp"
#include "redparse/error.hpp"

namespace redparse {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int gold_root(const Sentence &sentence) {
  for (const Word &w : sentence.words) {
    if (w.gold_head == 0) return w.index - 1;
  }
  return -1;
}

nlohmann::ordered_json optional_json(const std::optional<double> &value) {
  return value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::vector<bool> gold_leaves(const Sentence &sentence) {
  std::vector<bool> leaf(sentence.words.size(), true);
  for (const Word &w : sentence.words) {
    if (w.gold_head > 0) leaf[static_cast<std::size_t>(w.gold_head - 1)] = false;
  }
  return leaf;
}

double uas(const TreeMap &predicted, const Corpus &gold, bool ignore_punct) {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const Sentence &sentence : gold.sentences) {
    auto it = predicted.find(sentence.sent_id);
    if (it == predicted.end()) {
      throw Error(ErrorKind::kMissing, "no predicted tree for sentence " + sentence.sent_id);
    }
    if (it->second.size() != sentence.size()) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + sentence.sent_id + ": predicted tree has " +
                      std::to_string(it->second.size()) + " heads for " +
                      std::to_string(sentence.size()) + " words");
    }
    for (const Word &w : sentence.words) {
      if (ignore_punct && w.is_punct) continue;
      ++total;
      if (it->second.heads[static_cast<std::size_t>(w.index - 1)] == w.gold_head) {
        ++correct;
      }
    }
  }
  return ratio(correct, total);
}

LeafAccuracy leaf_accuracy(std::span<const LeafPrediction> predictions,
                           const Corpus &gold, bool ignore_punct) {
  if (predictions.size() != gold.sentences.size()) {
    throw Error(ErrorKind::kInvalidArgument, "leaf predictions do not cover the corpus");
  }
  LeafAccuracy result;
  std::size_t correct = 0;
  std::size_t leaves = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence &sentence = gold.sentences[s];
    const std::vector<bool> truth = gold_leaves(sentence);
    const std::vector<bool> &guess = predictions[s].is_leaf;
    if (guess.size() != truth.size()) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + sentence.sent_id + ": leaf prediction length mismatch");
    }
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (ignore_punct && sentence.words[i].is_punct) continue;
      ++result.words;
      if (guess[i] == truth[i]) ++correct;
      if (truth[i]) ++leaves;
    }
  }
  result.accuracy = ratio(correct, result.words);
  result.all_leaf_baseline = ratio(leaves, result.words);
  return result;
}

RootAccuracy root_accuracy(std::span<const ScoreTable *const> tables,
                           const Corpus &gold, bool ignore_punct) {
  RootAccuracy result;
  std::size_t correct = 0;
  double chance = 0.0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence &sentence = gold.sentences[s];
    const std::vector<double> scores = tables[s]->word_scores();
    int best = -1;
    std::size_t eligible = 0;
    for (int i = 0; i < sentence.size(); ++i) {
      if (ignore_punct && sentence.words[static_cast<std::size_t>(i)].is_punct) continue;
      ++eligible;
      if (best < 0 || scores[static_cast<std::size_t>(i)] >
                          scores[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    if (eligible == 0) {
      ++result.no_eligible_word;
      continue;
    }
    chance += 1.0 / static_cast<double>(eligible);
    if (best == gold_root(sentence)) ++correct;
  }
  const std::size_t sentences = gold.sentences.size();
  result.accuracy = ratio(correct, sentences);
  result.random_baseline = sentences == 0 ? 0.0 : chance / static_cast<double>(sentences);
  return result;
}

DirectionAccuracy direction_accuracy(std::span<const ScoreTable *const> tables,
                                     const Corpus &gold) {
  DirectionAccuracy result;
  std::size_t correct = 0;
  std::size_t rightward = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence &sentence = gold.sentences[s];
    const std::vector<double> scores = tables[s]->word_scores();
    for (const Word &w : sentence.words) {
      if (w.gold_head == 0) continue;
      ++result.edges;
      const double child = scores[static_cast<std::size_t>(w.index - 1)];
      const double parent = scores[static_cast<std::size_t>(w.gold_head - 1)];
      if (parent > child) ++correct;
      if (w.gold_head > w.index) ++rightward;
    }
  }
  result.accuracy = ratio(correct, result.edges);
  result.right_baseline = ratio(rightward, result.edges);
  return result;
}

PosAggregate pos_aggregate(std::span<const ScoreTable *const> tables,
                           const Corpus &gold) {
  struct Sums {
    double score = 0.0;
    std::size_t count = 0;
    std::size_t leaves = 0;
  };
  std::map<std::string, Sums> by_tag;
  PosAggregate aggregate;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence &sentence = gold.sentences[s];
    const std::vector<double> scores = tables[s]->word_scores();
    const std::vector<bool> leaves = gold_leaves(sentence);
    for (const Word &w : sentence.words) {
      const auto i = static_cast<std::size_t>(w.index - 1);
      Sums &sums = by_tag[w.upos];
      sums.score += scores[i];
      ++sums.count;
      if (leaves[i]) ++sums.leaves;
      aggregate.words.push_back(
          {sentence.sent_id, w.index, w.form, w.upos, scores[i], leaves[i]});
    }
  }
  for (const auto &[tag, sums] : by_tag) {
    aggregate.tags.push_back({tag, sums.score / static_cast<double>(sums.count),
                              sums.count, ratio(sums.leaves, sums.count)});
  }
  return aggregate;
}

std::string tags_csv(const PosAggregate &aggregate) {
  std::string out = "upos,mean_score,count,leaf_fraction\n";
  for (const PosRow &row : aggregate.tags) {
    out += csv_field(row.upos) + ',' + format_double(row.mean_score) + ',' +
           std::to_string(row.count) + ',' + format_double(row.leaf_fraction) + '\n';
  }
  return out;
}

std::string words_csv(const PosAggregate &aggregate) {
  std::string out = "sent_id,index,form,upos,score,is_gold_leaf\n";
  for (const WordRow &row : aggregate.words) {
    out += csv_field(row.sent_id) + ',' + std::to_string(row.index) + ',' +
           csv_field(row.form) + ',' + csv_field(row.upos) + ',' +
           format_double(row.score) + ',' + (row.is_gold_leaf ? "1" : "0") + '\n';
  }
  return out;
}

EvalReport full_report(const Corpus &gold, const TreeMap *predicted,
                       const std::vector<ScoreTable> *tables,
                       const ReportOptions &options) {
  if (gold.sentences.empty()) throw Error(ErrorKind::kInvalidArgument, "no sentences");
  EvalReport report;
  report.n_sentences = gold.sentences.size();
  report.n_words = gold.word_count();
  if (predicted) {
    report.uas = uas(*predicted, gold, false);
    report.uas_no_punct = uas(*predicted, gold, true);
  }
  if (tables) {
    const std::vector<const ScoreTable *> aligned = align_tables(*tables, gold);
    std::vector<ScoreTable> overridden;
    std::vector<const ScoreTable *> used = aligned;
    if (options.punct_override) {
      overridden.reserve(aligned.size());
      for (std::size_t s = 0; s < aligned.size(); ++s) {
        overridden.push_back(punct_override(*aligned[s], gold.sentences[s]));
      }
      for (std::size_t s = 0; s < aligned.size(); ++s) used[s] = &overridden[s];
    }
    std::vector<LeafPrediction> leaves;
    leaves.reserve(used.size());
    for (const ScoreTable *t : used) leaves.push_back(classify_leaves(*t, options.leaf_factor));

    const LeafAccuracy with_punct = leaf_accuracy(leaves, gold, false);
    const LeafAccuracy without_punct = leaf_accuracy(leaves, gold, true);
    report.leaf_accuracy = with_punct.accuracy;
    report.all_leaf_baseline = with_punct.all_leaf_baseline;
    report.leaf_accuracy_no_punct = without_punct.accuracy;
    report.all_leaf_baseline_no_punct = without_punct.all_leaf_baseline;

    const RootAccuracy root = root_accuracy(used, gold, false);
    report.root_accuracy = root.accuracy;
    report.root_random_baseline = root.random_baseline;
    report.root_accuracy_no_punct = root_accuracy(used, gold, true).accuracy;

    const DirectionAccuracy direction = direction_accuracy(used, gold);
    report.direction_accuracy = direction.accuracy;
    report.direction_right_baseline = direction.right_baseline;
  }
  return report;
}

std::string to_json(const EvalReport &report) {
  nlohmann::ordered_json j;
  j["uas"] = optional_json(report.uas);
  j["uas_no_punct"] = optional_json(report.uas_no_punct);
  j["leaf_accuracy"] = optional_json(report.leaf_accuracy);
  j["all_leaf_baseline"] = optional_json(report.all_leaf_baseline);
  j["root_accuracy"] = optional_json(report.root_accuracy);
  j["root_accuracy_no_punct"] = optional_json(report.root_accuracy_no_punct);
  j["root_random_baseline"] = optional_json(report.root_random_baseline);
  j["direction_accuracy"] = optional_json(report.direction_accuracy);
  j["direction_right_baseline"] = optional_json(report.direction_right_baseline);
  j["n_sentences"] = report.n_sentences;
  j["n_words"] = report.n_words;
  j["leaf_accuracy_no_punct"] = optional_json(report.leaf_accuracy_no_punct);
  j["all_leaf_baseline_no_punct"] = optional_json(report.all_leaf_baseline_no_punct);
  return j.dump(2) + "\n";
}

std::vector<Table1Row> table1(std::span<const ScoreTable> tables, const Corpus &gold,
                              const ParseOptions &base) {
  struct Config {
    const char *name;
    ParseMode mode;
    bool punct;
  };
  static constexpr Config kConfigs[] = {
      {"left chain", ParseMode::kLeftChain, false},
      {"right chain", ParseMode::kRightChain, false},
      {"algD", ParseMode::kAlgorithmD, false},
      {"algD + punct override", ParseMode::kAlgorithmD, true},
      {"algR", ParseMode::kAlgorithmR, false},
      {"algR + punct override", ParseMode::kAlgorithmR, true},
  };
  std::vector<Table1Row> rows;
  for (const Config &config : kConfigs) {
    ParseOptions options = base;
    options.mode = config.mode;
    options.punct_override = config.punct;
    const TreeMap trees = parse_corpus(tables, gold, options);
    rows.push_back({config.name, config.mode, config.punct, uas(trees, gold, false)});
  }
  return rows;
}

std::string table1_markdown(std::span<const Table1Row> rows) {
  std::string out = "| parser | UAS |\n|---|---:|\n";
  for (const Table1Row &row : rows) {
    char cell[16];
    std::snprintf(cell, sizeof cell, "%.1f", 100.0 * row.uas);
    out += "| " + row.parser + " | " + cell + " |\n";
  }
  return out;
}

std::string table1_csv(std::span<const Table1Row> rows) {
  std::string out = "parser,mode,punct_override,uas\n";
  for (const Table1Row &row : rows) {
    out += csv_field(row.parser) + ',' + std::string(to_string(row.mode)) + ',' +
           (row.punct_override ? "1" : "0") + ',' + format_double(row.uas) + '\n';
  }
  return out;
}

}  // namespace redparse
