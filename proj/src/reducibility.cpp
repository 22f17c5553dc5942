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

#include "redparse/reducibility.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "redparse/error.hpp"

namespace redparse {
namespace {

std::string span_text(const Span &span) {
  return "(" + std::to_string(span.start) + "," + std::to_string(span.len) + ")";
}

void append_double(std::string &out, double value) {
  char buffer[32];
  auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  out.append(buffer, ptr);
}

}  // namespace

std::optional<double> ScoreTable::word_score(int position) const {
  auto it = scores.find(Span{position, 1});
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

std::vector<double> ScoreTable::word_scores() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::optional<double> score = word_score(i);
    if (!score) {
      // A one-word sentence has no deletable span; its only word scores 0.
      if (n == 1) {
        out.push_back(0.0);
        continue;
      }
      throw Error(ErrorKind::kMissing, "sentence " + sent_id +
                                           ": no single-word score for position " +
                                           std::to_string(i));
    }
    out.push_back(*score);
  }
  return out;
}

double phrase_score(const EmbeddingBlock &base, const EmbeddingBlock &variant,
                    const Span &span) {
  if (!valid_span(span, base.n_words)) {
    throw Error(ErrorKind::kAlignment, "span " + span_text(span) +
                                           " outside a sentence of " +
                                           std::to_string(base.n_words) + " words");
  }
  if (span.len >= base.n_words) {
    throw Error(ErrorKind::kInvalidArgument,
                "deleting the whole sentence leaves no words to average over");
  }
  if (variant.n_words != base.n_words - span.len) {
    throw Error(ErrorKind::kAlignment,
                "variant has " + std::to_string(variant.n_words) + " words, expected " +
                    std::to_string(base.n_words - span.len));
  }
  if (variant.dim != base.dim) {
    throw Error(ErrorKind::kAlignment, "variant and base dims differ");
  }
  const std::vector<int> alignment = remaining_alignment(base.n_words, span);
  double total = 0.0;
  for (int j = 0; j < variant.n_words; ++j) {
    std::span<const float> a = base.row(alignment[static_cast<std::size_t>(j)]);
    std::span<const float> b = variant.row(j);
    double squared = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
      squared += d * d;
    }
    total += std::sqrt(squared);
  }
  return total / variant.n_words;
}

ScoreTable score_sentence(std::span<const EmbeddingBlock> blocks) {
  const EmbeddingBlock *base = nullptr;
  for (const EmbeddingBlock &block : blocks) {
    if (!block.is_base()) continue;
    if (base) {
      throw Error(ErrorKind::kValidation, "sentence " + std::to_string(block.sent_index) +
                                              ": more than one BASE block");
    }
    base = &block;
  }
  if (!base) throw Error(ErrorKind::kMissing, "no BASE block for sentence");

  ScoreTable table;
  table.sent_index = base->sent_index;
  table.n = base->n_words;
  for (const EmbeddingBlock &block : blocks) {
    if (block.is_base()) continue;
    if (block.sent_index != base->sent_index) {
      throw Error(ErrorKind::kValidation, "blocks of different sentences mixed");
    }
    const double score = phrase_score(*base, block, *block.span);
    if (!table.scores.emplace(*block.span, score).second) {
      throw Error(ErrorKind::kValidation, "sentence " + std::to_string(table.sent_index) +
                                              ": duplicate span " +
                                              span_text(*block.span));
    }
  }
  return table;
}

std::vector<ScoreTable> score_dump(std::istream &dump, const Corpus &corpus) {
  DumpReader reader(dump);
  std::vector<ScoreTable> tables;
  std::vector<EmbeddingBlock> group;
  std::vector<bool> done(corpus.sentences.size(), false);

  auto flush = [&]() {
    if (group.empty()) return;
    const auto index = static_cast<std::size_t>(group.front().sent_index);
    const Sentence &sentence = corpus.sentences[index];
    ScoreTable table = score_sentence(group);
    if (table.n != sentence.size()) {
      throw Error(ErrorKind::kAlignment,
                  "sentence " + sentence.sent_id + ": BASE block has " +
                      std::to_string(table.n) + " rows for " +
                      std::to_string(sentence.size()) + " words");
    }
    table.sent_id = sentence.sent_id;
    tables.push_back(std::move(table));
    done[index] = true;
    group.clear();
  };

  while (auto block = reader.next()) {
    if (block->sent_index < 0 ||
        static_cast<std::size_t>(block->sent_index) >= corpus.sentences.size()) {
      throw Error(ErrorKind::kAlignment, "dump refers to sentence index " +
                                             std::to_string(block->sent_index) +
                                             " beyond the corpus");
    }
    if (!group.empty() && group.front().sent_index != block->sent_index) flush();
    if (done[static_cast<std::size_t>(block->sent_index)]) {
      throw Error(ErrorKind::kFormat, "records of sentence index " +
                                          std::to_string(block->sent_index) +
                                          " are not contiguous");
    }
    group.push_back(std::move(*block));
  }
  flush();
  return tables;
}

LeafPrediction classify_leaves(const ScoreTable &table, double factor) {
  const std::vector<double> scores = table.word_scores();
  LeafPrediction prediction;
  prediction.sent_index = table.sent_index;
  prediction.factor = factor;
  double sum = 0.0;
  for (double s : scores) sum += s;
  const double mean = scores.empty() ? 0.0 : sum / static_cast<double>(scores.size());
  prediction.threshold = factor * mean;
  prediction.is_leaf.reserve(scores.size());
  for (double s : scores) prediction.is_leaf.push_back(s < prediction.threshold);
  return prediction;
}

ScoreTable punct_override(ScoreTable table, const Sentence &sentence) {
  for (const Word &w : sentence.words) {
    if (!w.is_punct) continue;
    auto it = table.scores.find(Span{w.index - 1, 1});
    if (it != table.scores.end()) it->second = 0.0;
  }
  return table;
}

std::vector<const ScoreTable *> align_tables(std::span<const ScoreTable> tables,
                                             const Corpus &corpus) {
  std::unordered_map<std::string_view, const ScoreTable *> by_id;
  for (const ScoreTable &t : tables) by_id.emplace(t.sent_id, &t);
  std::vector<const ScoreTable *> aligned;
  aligned.reserve(corpus.sentences.size());
  for (const Sentence &s : corpus.sentences) {
    auto it = by_id.find(s.sent_id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::kMissing, "no score table for sentence " + s.sent_id);
    }
    if (it->second->n != s.size()) {
      throw Error(ErrorKind::kAlignment, "score table for " + s.sent_id + " has n=" +
                                             std::to_string(it->second->n) +
                                             " but the sentence has " +
                                             std::to_string(s.size()) + " words");
    }
    aligned.push_back(it->second);
  }
  return aligned;
}

std::string score_line(const ScoreTable &table) {
  std::string out = "{\"sent_index\":" + std::to_string(table.sent_index) +
                    ",\"sent_id\":" + nlohmann::json(table.sent_id).dump() +
                    ",\"n\":" + std::to_string(table.n) + ",\"scores\":[";
  bool first = true;
  for (const auto &[span, score] : table.scores) {
    if (!first) out += ',';
    first = false;
    out += "{\"start\":" + std::to_string(span.start) +
           ",\"len\":" + std::to_string(span.len) + ",\"score\":";
    append_double(out, score);
    out += '}';
  }
  out += "]}";
  return out;
}

ScoreTable parse_score_line(std::string_view line) {
  ScoreTable table;
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    table.sent_index = j.at("sent_index").get<int>();
    table.sent_id = j.at("sent_id").get<std::string>();
    table.n = j.at("n").get<int>();
    for (const nlohmann::json &entry : j.at("scores")) {
      const Span span{entry.at("start").get<int>(), entry.at("len").get<int>()};
      const double score = entry.at("score").get<double>();
      if (!valid_span(span, table.n) || span.len >= table.n) {
        throw Error(ErrorKind::kParse, "score span " + span_text(span) +
                                           " invalid for n=" + std::to_string(table.n));
      }
      if (!(score >= 0.0) || !std::isfinite(score)) {
        throw Error(ErrorKind::kParse, "score must be finite and nonnegative");
      }
      if (!table.scores.emplace(span, score).second) {
        throw Error(ErrorKind::kParse, "duplicate span " + span_text(span));
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("bad score line: ") + e.what());
  }
  return table;
}

std::vector<ScoreTable> read_scores(std::string_view text) {
  std::vector<ScoreTable> tables;
  std::size_t begin = 0;
  std::size_t number = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(begin, end - begin);
    ++number;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        tables.push_back(parse_score_line(line));
      } catch (const Error &e) {
        throw Error(e.kind(), "score line " + std::to_string(number) + ": " + e.what());
      }
    }
    begin = end + 1;
  }
  return tables;
}

std::vector<ScoreTable> read_scores_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_scores(buffer.str());
}

}  // namespace redparse
