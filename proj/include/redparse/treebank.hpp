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

#ifndef REDPARSE_TREEBANK_HPP_
#define REDPARSE_TREEBANK_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace redparse {

// One syntactic word of a CoNLL-U sentence. Columns the pipeline does not
// interpret are kept verbatim so that emission preserves them.
struct Word {
  int index = 0;      // 1-based position in the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int gold_head = 0;  // 0 = root, else 1-based head index
  std::string deprel;
  std::string deps;
  std::string misc;
  bool is_punct = false;
};

struct Sentence {
  std::string sent_id;
  std::vector<std::string> comments;  // raw comment lines, '#' included
  std::vector<Word> words;

  int size() const { return static_cast<int>(words.size()); }
};

// Counts collected while reading a treebank. Excluded sentences never reach
// the Corpus.
struct ParseSummary {
  std::size_t blocks = 0;
  std::size_t kept = 0;
  std::size_t excluded_multiword = 0;
  std::size_t excluded_empty_node = 0;
  std::size_t words = 0;
  int max_length = 0;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string source_path;
  ParseSummary summary;

  std::size_t word_count() const;
};

// heads[i] is the head of word i+1: 0 for the root, otherwise a 1-based index.
struct DependencyTree {
  std::vector<int> heads;

  int size() const { return static_cast<int>(heads.size()); }
  bool operator==(const DependencyTree &) const = default;
};

using TreeMap = std::map<std::string, DependencyTree>;
using Vocabulary = std::unordered_set<std::string>;

// Returns a description of the first violated tree invariant (exactly one
// root, heads in range, no self loops, no cycles), or nullopt for a valid tree.
std::optional<std::string> tree_violation(std::span<const int> heads);

DependencyTree gold_tree(const Sentence &sentence);
TreeMap gold_trees(const Corpus &corpus);

// True iff the word is punctuation: UPOS "PUNCT", or when UPOS is the "_"
// placeholder, every code point of the form is in a Unicode P* category.
bool is_punctuation(std::string_view form, std::string_view upos);

// Simple (one-to-one) Unicode lowercase mapping of a UTF-8 string.
std::string lowercase(std::string_view utf8);

// Reads CoNLL-U. Sentences with multiword-token ranges or empty nodes are
// dropped and counted in Corpus::summary. Throws Error(kParse) on malformed
// lines and Error(kValidation) on broken gold trees or duplicate sent_ids.
Corpus parse_conllu(std::string_view text, std::string source_path = {});
Corpus read_conllu_file(const std::string &path);

Vocabulary read_vocabulary(std::string_view text);
Vocabulary read_vocabulary_file(const std::string &path);

struct FilterResult {
  Corpus corpus;
  std::size_t excluded = 0;
  std::map<std::string, std::size_t> oov_forms;  // form -> sentences it removed
};

// Keeps the sentences whose every form (lowercased when |lowercase|) is in
// |vocab|, in their original order.
FilterResult filter_by_vocab(const Corpus &corpus, const Vocabulary &vocab,
                             bool lowercase);

// Writes the corpus back out with every column as read.
std::string write_conllu(const Corpus &corpus);

// Writes the corpus with HEAD replaced by |predicted| and DEPREL set to "_".
// Throws Error(kMissing) listing absent sent_ids and Error(kValidation) on
// length mismatches.
std::string emit_conllu(const Corpus &corpus, const TreeMap &predicted);

}  // namespace redparse

#endif  // REDPARSE_TREEBANK_HPP_
