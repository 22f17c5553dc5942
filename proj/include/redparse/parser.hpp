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

#ifndef REDPARSE_PARSER_HPP_
#define REDPARSE_PARSER_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redparse/reducibility.hpp"
#include "redparse/treebank.hpp"
#include "redparse/variants.hpp"

namespace redparse {

enum class ParseMode { kLeftChain, kRightChain, kAlgorithmD, kAlgorithmR };

// How Algorithm R picks a parent. kConstraint: the nearest following word
// with a strictly higher score. kLiteral: the nearest following word with a
// strictly lower score. Both put the leftmost maximum at the root.
enum class ROrientation { kConstraint, kLiteral };

std::optional<ParseMode> parse_mode_from_string(std::string_view name);
std::string_view to_string(ParseMode mode);
std::optional<ROrientation> orientation_from_string(std::string_view name);
std::string_view to_string(ROrientation orientation);

DependencyTree left_chain(int n);
DependencyTree right_chain(int n);

DependencyTree algorithm_r(std::span<const double> word_scores,
                           ROrientation orientation = ROrientation::kConstraint);

// Nested, non-crossing spans, each with one head word directly inside it.
// The full-sentence bracket is implicit and never listed in |brackets|.
// Heads are 0-based word positions.
struct HeadedBracketing {
  int n = 0;
  std::vector<Span> brackets;
  std::map<Span, int> head_of;  // includes the outer span {0, n}

  Span outer() const { return {0, n}; }
};

// One step of the greedy pass, for --trace output.
struct BracketDecision {
  Span span;
  double score = 0.0;
  bool accepted = false;
  std::string violation;  // "crossing" or "headless <start>,<len>"
};

// Why inserting |candidate| into |brackets| would break the bracketing
// (crossing brackets, or a bracket left without a bare word); nullopt if
// the insertion is legal.
std::optional<std::string> insertion_violation(std::span<const Span> brackets,
                                               const Span &candidate, int n);

// Greedy headed bracketing: spans in ascending score order (shorter, then
// leftmost on ties) are inserted whenever the result stays well formed.
HeadedBracketing algorithm_d(const ScoreTable &table,
                             std::vector<BracketDecision> *trace = nullptr);

// Throws Error(kStructure) if |bracketing| breaks its invariants.
DependencyTree brackets_to_tree(const HeadedBracketing &bracketing);

struct ParseOptions {
  ParseMode mode = ParseMode::kAlgorithmR;
  bool punct_override = false;
  ROrientation orientation = ROrientation::kConstraint;
  // Above this length only single-word scores exist and Algorithm D falls
  // back to Algorithm R.
  int max_sentence_len = 30;
};

// One tree per corpus sentence. Chain modes ignore |tables| (pass {}). When
// |trace| is set, Algorithm D writes one JSON line per sentence.
TreeMap parse_corpus(std::span<const ScoreTable> tables, const Corpus &corpus,
                     const ParseOptions &options,
                     std::ostream *trace = nullptr);

}  // namespace redparse

#endif  // REDPARSE_PARSER_HPP_
