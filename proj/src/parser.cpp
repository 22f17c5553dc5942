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

#include "redparse/parser.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"
#include "redparse/error.hpp"

namespace redparse {
namespace {

bool crosses(const Span &a, const Span &b) {
  const bool disjoint = a.end() <= b.start || b.end() <= a.start;
  return !disjoint && !a.contains(b) && !b.contains(a);
}

// Words of |outer| not covered by any bracket strictly inside it.
std::vector<int> direct_words(const Span &outer, std::span<const Span> brackets) {
  std::vector<bool> covered(static_cast<std::size_t>(outer.len), false);
  for (const Span &b : brackets) {
    if (b == outer || !outer.contains(b)) continue;
    for (int w = b.start; w < b.end(); ++w) {
      covered[static_cast<std::size_t>(w - outer.start)] = true;
    }
  }
  std::vector<int> words;
  for (int w = outer.start; w < outer.end(); ++w) {
    if (!covered[static_cast<std::size_t>(w - outer.start)]) words.push_back(w);
  }
  return words;
}

// Smallest bracket strictly containing |inner|, or the outer span.
Span enclosing(const Span &inner, std::span<const Span> brackets, int n) {
  Span best{0, n};
  for (const Span &b : brackets) {
    if (b != inner && b.contains(inner) && b.len < best.len) best = b;
  }
  return best;
}

std::string span_label(const Span &span) {
  return std::to_string(span.start) + "," + std::to_string(span.len);
}

}  // namespace

std::optional<ParseMode> parse_mode_from_string(std::string_view name) {
  if (name == "left") return ParseMode::kLeftChain;
  if (name == "right") return ParseMode::kRightChain;
  if (name == "algD") return ParseMode::kAlgorithmD;
  if (name == "algR") return ParseMode::kAlgorithmR;
  return std::nullopt;
}

std::string_view to_string(ParseMode mode) {
  switch (mode) {
    case ParseMode::kLeftChain: return "left";
    case ParseMode::kRightChain: return "right";
    case ParseMode::kAlgorithmD: return "algD";
    case ParseMode::kAlgorithmR: return "algR";
  }
  return "?";
}

std::optional<ROrientation> orientation_from_string(std::string_view name) {
  if (name == "constraint") return ROrientation::kConstraint;
  if (name == "literal") return ROrientation::kLiteral;
  return std::nullopt;
}

std::string_view to_string(ROrientation orientation) {
  return orientation == ROrientation::kConstraint ? "constraint" : "literal";
}

DependencyTree left_chain(int n) {
  DependencyTree tree;
  for (int i = 1; i <= n; ++i) tree.heads.push_back(i - 1);
  return tree;
}

DependencyTree right_chain(int n) {
  DependencyTree tree;
  for (int i = 1; i <= n; ++i) tree.heads.push_back(i < n ? i + 1 : 0);
  return tree;
}

DependencyTree algorithm_r(std::span<const double> word_scores,
                           ROrientation orientation) {
  const int n = static_cast<int>(word_scores.size());
  DependencyTree tree;
  if (n == 0) return tree;
  const auto root = static_cast<int>(
      std::max_element(word_scores.begin(), word_scores.end()) - word_scores.begin());
  auto better_parent = [&](double candidate, double child) {
    return orientation == ROrientation::kConstraint ? candidate > child
                                                    : candidate < child;
  };
  tree.heads.assign(static_cast<std::size_t>(n), root + 1);
  tree.heads[static_cast<std::size_t>(root)] = 0;
  for (int i = 0; i < n; ++i) {
    if (i == root) continue;
    const double own = word_scores[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      if (better_parent(word_scores[static_cast<std::size_t>(j)], own)) {
        tree.heads[static_cast<std::size_t>(i)] = j + 1;
        break;
      }
    }
  }
  return tree;
}

std::optional<std::string> insertion_violation(std::span<const Span> brackets,
                                               const Span &candidate, int n) {
  if (candidate == Span{0, n}) return "duplicate";
  for (const Span &b : brackets) {
    if (b == candidate) return "duplicate";
    if (crosses(b, candidate)) return "crossing";
  }
  std::vector<Span> after(brackets.begin(), brackets.end());
  after.push_back(candidate);
  // Only the candidate and its new parent change their bare-word sets.
  if (direct_words(candidate, after).empty()) {
    return "headless " + span_label(candidate);
  }
  const Span parent = enclosing(candidate, after, n);
  if (direct_words(parent, after).empty()) return "headless " + span_label(parent);
  return std::nullopt;
}

HeadedBracketing algorithm_d(const ScoreTable &table,
                             std::vector<BracketDecision> *trace) {
  const int n = table.n;
  const std::vector<double> word_scores = table.word_scores();

  std::vector<std::pair<Span, double>> candidates;
  for (const auto &[span, score] : table.scores) {
    if (span.len >= 1 && span.len < n) candidates.emplace_back(span, score);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto &a, const auto &b) {
                     if (a.second != b.second) return a.second < b.second;
                     if (a.first.len != b.first.len) return a.first.len < b.first.len;
                     return a.first.start < b.first.start;
                   });

  HeadedBracketing result;
  result.n = n;
  for (const auto &[span, score] : candidates) {
    std::optional<std::string> violation =
        insertion_violation(result.brackets, span, n);
    if (!violation) result.brackets.push_back(span);
    if (trace) trace->push_back({span, score, !violation, violation.value_or("")});
  }
  std::sort(result.brackets.begin(), result.brackets.end());

  auto pick_head = [&](const Span &bracket) {
    const std::vector<int> bare = direct_words(bracket, result.brackets);
    int head = bare.front();
    for (int w : bare) {
      if (word_scores[static_cast<std::size_t>(w)] >
          word_scores[static_cast<std::size_t>(head)]) {
        head = w;
      }
    }
    result.head_of[bracket] = head;
  };
  if (n > 0) pick_head(result.outer());
  for (const Span &bracket : result.brackets) pick_head(bracket);
  return result;
}

DependencyTree brackets_to_tree(const HeadedBracketing &bracketing) {
  const int n = bracketing.n;
  if (n < 1) throw Error(ErrorKind::kStructure, "bracketing over an empty sentence");
  const std::span<const Span> brackets(bracketing.brackets);
  const Span outer = bracketing.outer();
  for (std::size_t a = 0; a < brackets.size(); ++a) {
    if (!valid_span(brackets[a], n) || brackets[a] == outer) {
      throw Error(ErrorKind::kStructure, "bracket " + span_label(brackets[a]) +
                                             " is not a proper sub-span");
    }
    for (std::size_t b = a + 1; b < brackets.size(); ++b) {
      if (brackets[a] == brackets[b] || crosses(brackets[a], brackets[b])) {
        throw Error(ErrorKind::kStructure, "brackets " + span_label(brackets[a]) +
                                               " and " + span_label(brackets[b]) +
                                               " overlap");
      }
    }
  }
  auto head_of = [&](const Span &bracket) {
    auto it = bracketing.head_of.find(bracket);
    if (it == bracketing.head_of.end()) {
      throw Error(ErrorKind::kStructure, "bracket " + span_label(bracket) + " has no head");
    }
    const std::vector<int> bare = direct_words(bracket, brackets);
    if (std::find(bare.begin(), bare.end(), it->second) == bare.end()) {
      throw Error(ErrorKind::kStructure, "head of bracket " + span_label(bracket) +
                                             " is not a bare word inside it");
    }
    return it->second;
  };

  DependencyTree tree;
  tree.heads.resize(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    const Span own = enclosing(Span{w, 1}, brackets, n);
    // A singleton bracket around w is its own innermost bracket.
    const bool singleton =
        std::find(brackets.begin(), brackets.end(), Span{w, 1}) != brackets.end();
    const Span innermost = singleton ? Span{w, 1} : own;
    const int head = head_of(innermost);
    int parent = 0;
    if (head != w) {
      parent = head + 1;
    } else if (innermost != outer) {
      parent = head_of(enclosing(innermost, brackets, n)) + 1;
    }
    tree.heads[static_cast<std::size_t>(w)] = parent;
  }
  if (auto violation = tree_violation(tree.heads)) {
    throw Error(ErrorKind::kStructure, "bracketing yields an invalid tree: " + *violation);
  }
  return tree;
}

TreeMap parse_corpus(std::span<const ScoreTable> tables, const Corpus &corpus,
                     const ParseOptions &options, std::ostream *trace) {
  TreeMap trees;
  const bool chain = options.mode == ParseMode::kLeftChain ||
                     options.mode == ParseMode::kRightChain;
  std::vector<const ScoreTable *> aligned;
  if (!chain) aligned = align_tables(tables, corpus);

  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const Sentence &sentence = corpus.sentences[i];
    const int n = sentence.size();
    DependencyTree tree;
    if (options.mode == ParseMode::kLeftChain) {
      tree = left_chain(n);
    } else if (options.mode == ParseMode::kRightChain) {
      tree = right_chain(n);
    } else {
      ScoreTable table = options.punct_override ? punct_override(*aligned[i], sentence)
                                                : *aligned[i];
      const bool fallback =
          options.mode == ParseMode::kAlgorithmD && n > options.max_sentence_len;
      if (options.mode == ParseMode::kAlgorithmR || fallback) {
        tree = algorithm_r(table.word_scores(), options.orientation);
      } else {
        std::vector<BracketDecision> decisions;
        HeadedBracketing bracketing =
            algorithm_d(table, trace ? &decisions : nullptr);
        tree = brackets_to_tree(bracketing);
        if (trace) {
          nlohmann::ordered_json line;
          line["sent_id"] = sentence.sent_id;
          line["n"] = n;
          nlohmann::ordered_json steps = nlohmann::ordered_json::array();
          for (const BracketDecision &d : decisions) {
            nlohmann::ordered_json step;
            step["start"] = d.span.start;
            step["len"] = d.span.len;
            step["score"] = d.score;
            step["accepted"] = d.accepted;
            step["violation"] = d.accepted ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(d.violation);
            steps.push_back(std::move(step));
          }
          line["candidates"] = std::move(steps);
          line["heads"] = tree.heads;
          *trace << line.dump() << '\n';
        }
      }
      if (fallback && trace) {
        nlohmann::ordered_json line;
        line["sent_id"] = sentence.sent_id;
        line["n"] = n;
        line["fallback"] = "algR";
        line["heads"] = tree.heads;
        *trace << line.dump() << '\n';
      }
    }
    trees.emplace(sentence.sent_id, std::move(tree));
  }
  return trees;
}

}  // namespace redparse
