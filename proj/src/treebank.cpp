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

#include "redparse/treebank.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "redparse/error.hpp"

namespace redparse {
namespace {

constexpr std::size_t kColumns = 10;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

std::optional<int> to_int(std::string_view text) {
  int value = 0;
  const char *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Calls fn(line, line_number) for every line, with any trailing '\r' removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn &&fn) {
  std::size_t begin = 0;
  std::size_t number = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++number);
    begin = end + 1;
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

struct Block {
  std::vector<std::string> comments;
  std::vector<Word> words;
  bool multiword = false;
  bool empty_node = false;
  std::size_t first_line = 0;

  bool started() const {
    return !words.empty() || multiword || empty_node;
  }
};

std::string sent_id_from_comments(const std::vector<std::string> &comments) {
  for (const std::string &comment : comments) {
    std::string_view body(comment);
    body.remove_prefix(1);
    const std::size_t key = body.find_first_not_of(' ');
    if (key == std::string_view::npos) continue;
    body.remove_prefix(key);
    if (body.substr(0, 7) != "sent_id") continue;
    body.remove_prefix(7);
    const std::size_t eq = body.find_first_not_of(' ');
    if (eq == std::string_view::npos || body[eq] != '=') continue;
    body.remove_prefix(eq + 1);
    const std::size_t value = body.find_first_not_of(' ');
    if (value == std::string_view::npos) continue;
    body.remove_prefix(value);
    while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
    return std::string(body);
  }
  return {};
}

void write_sentence(std::ostringstream &out, const Sentence &sentence,
                    const DependencyTree *predicted) {
  for (const std::string &comment : sentence.comments) out << comment << '\n';
  for (const Word &w : sentence.words) {
    const int head =
        predicted ? predicted->heads[static_cast<std::size_t>(w.index - 1)]
                  : w.gold_head;
    out << w.index << '\t' << w.form << '\t' << w.lemma << '\t' << w.upos
        << '\t' << w.xpos << '\t' << w.feats << '\t' << head << '\t'
        << (predicted ? std::string_view("_") : std::string_view(w.deprel))
        << '\t' << w.deps << '\t' << w.misc << '\n';
  }
  out << '\n';
}

}  // namespace

std::size_t Corpus::word_count() const {
  std::size_t total = 0;
  for (const Sentence &s : sentences) total += s.words.size();
  return total;
}

std::optional<std::string> tree_violation(std::span<const int> heads) {
  const int n = static_cast<int>(heads.size());
  if (n == 0) return "empty tree";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const int head = heads[static_cast<std::size_t>(i)];
    if (head < 0 || head > n) {
      return "word " + std::to_string(i + 1) + " has out-of-range head " +
             std::to_string(head);
    }
    if (head == i + 1) return "word " + std::to_string(i + 1) + " heads itself";
    if (head == 0) ++roots;
  }
  if (roots != 1) return std::to_string(roots) + " roots (expected 1)";
  // A walk longer than n steps without reaching the root is a cycle.
  for (int i = 0; i < n; ++i) {
    int node = i + 1;
    for (int steps = 0; node != 0; ++steps) {
      if (steps > n) {
        return "cycle through word " + std::to_string(i + 1);
      }
      node = heads[static_cast<std::size_t>(node - 1)];
    }
  }
  return std::nullopt;
}

DependencyTree gold_tree(const Sentence &sentence) {
  DependencyTree tree;
  tree.heads.reserve(sentence.words.size());
  for (const Word &w : sentence.words) tree.heads.push_back(w.gold_head);
  return tree;
}

TreeMap gold_trees(const Corpus &corpus) {
  TreeMap trees;
  for (const Sentence &s : corpus.sentences) trees.emplace(s.sent_id, gold_tree(s));
  return trees;
}

bool is_punctuation(std::string_view form, std::string_view upos) {
  if (upos == "PUNCT") return true;
  if (upos != "_" || form.empty()) return false;
  const auto *bytes = reinterpret_cast<const std::uint8_t *>(form.data());
  const auto length = static_cast<std::int32_t>(form.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
    const std::int8_t type = u_charType(c);
    switch (type) {
      case U_DASH_PUNCTUATION:
      case U_START_PUNCTUATION:
      case U_END_PUNCTUATION:
      case U_CONNECTOR_PUNCTUATION:
      case U_OTHER_PUNCTUATION:
      case U_INITIAL_PUNCTUATION:
      case U_FINAL_PUNCTUATION:
        break;
      default:
        return false;
    }
  }
  return true;
}

std::string lowercase(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  const auto *bytes = reinterpret_cast<const std::uint8_t *>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      // Invalid sequences pass through untouched.
      out.append(utf8.substr(static_cast<std::size_t>(start),
                             static_cast<std::size_t>(i - start)));
      continue;
    }
    const UChar32 lower = u_tolower(c);
    std::uint8_t buffer[U8_MAX_LENGTH];
    std::int32_t written = 0;
    U8_APPEND_UNSAFE(buffer, written, lower);
    out.append(reinterpret_cast<const char *>(buffer),
               static_cast<std::size_t>(written));
  }
  return out;
}

Corpus parse_conllu(std::string_view text, std::string source_path) {
  Corpus corpus;
  corpus.source_path = std::move(source_path);
  std::unordered_map<std::string, std::size_t> seen_ids;
  const std::string where =
      corpus.source_path.empty() ? std::string("line ") : corpus.source_path + ":";

  Block block;
  auto finish = [&]() {
    if (!block.started()) {
      block = Block{};
      return;
    }
    ParseSummary &summary = corpus.summary;
    ++summary.blocks;
    std::string sent_id = sent_id_from_comments(block.comments);
    if (sent_id.empty()) sent_id = "s" + std::to_string(summary.blocks);

    if (block.multiword) {
      ++summary.excluded_multiword;
    } else if (block.empty_node) {
      ++summary.excluded_empty_node;
    } else {
      Sentence sentence;
      sentence.sent_id = sent_id;
      sentence.comments = std::move(block.comments);
      sentence.words = std::move(block.words);
      const int n = sentence.size();
      for (int i = 0; i < n; ++i) {
        if (sentence.words[static_cast<std::size_t>(i)].index != i + 1) {
          throw Error(ErrorKind::kValidation,
                      "sentence " + sent_id + ": word IDs are not 1.." +
                          std::to_string(n) + " in order");
        }
      }
      const DependencyTree tree = gold_tree(sentence);
      if (auto violation = tree_violation(tree.heads)) {
        throw Error(ErrorKind::kValidation,
                    "sentence " + sent_id + ": invalid gold tree: " + *violation);
      }
      if (auto [it, inserted] = seen_ids.emplace(sent_id, block.first_line);
          !inserted) {
        throw Error(ErrorKind::kValidation, "duplicate sent_id " + sent_id);
      }
      ++summary.kept;
      summary.words += sentence.words.size();
      summary.max_length = std::max(summary.max_length, n);
      corpus.sentences.push_back(std::move(sentence));
    }
    block = Block{};
  };

  for_each_line(text, [&](std::string_view line, std::size_t number) {
    if (is_blank(line)) {
      finish();
      return;
    }
    if (block.comments.empty() && !block.started()) block.first_line = number;
    if (line.front() == '#') {
      block.comments.emplace_back(line);
      return;
    }
    const std::vector<std::string_view> fields = split_tabs(line);
    if (fields.size() != kColumns) {
      throw Error(ErrorKind::kParse,
                  where + std::to_string(number) + ": expected 10 tab-separated "
                  "columns, found " + std::to_string(fields.size()));
    }
    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos) {
      block.multiword = true;
      return;
    }
    if (id.find('.') != std::string_view::npos) {
      block.empty_node = true;
      return;
    }
    const std::optional<int> index = to_int(id);
    if (!index || *index < 1) {
      throw Error(ErrorKind::kParse, where + std::to_string(number) +
                                         ": bad word ID '" + std::string(id) + "'");
    }
    const std::optional<int> head = to_int(fields[6]);
    if (!head || *head < 0) {
      throw Error(ErrorKind::kParse, where + std::to_string(number) +
                                         ": non-integer HEAD '" +
                                         std::string(fields[6]) + "'");
    }
    Word w;
    w.index = *index;
    w.form = fields[1];
    w.lemma = fields[2];
    w.upos = fields[3];
    w.xpos = fields[4];
    w.feats = fields[5];
    w.gold_head = *head;
    w.deprel = fields[7];
    w.deps = fields[8];
    w.misc = fields[9];
    w.is_punct = is_punctuation(w.form, w.upos);
    block.words.push_back(std::move(w));
  });
  finish();
  return corpus;
}

Corpus read_conllu_file(const std::string &path) {
  return parse_conllu(read_file(path), path);
}

Vocabulary read_vocabulary(std::string_view text) {
  Vocabulary vocab;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    if (!line.empty()) vocab.emplace(line);
  });
  return vocab;
}

Vocabulary read_vocabulary_file(const std::string &path) {
  return read_vocabulary(read_file(path));
}

FilterResult filter_by_vocab(const Corpus &corpus, const Vocabulary &vocab,
                             bool lowercase_forms) {
  if (vocab.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "vocabulary is empty");
  }
  FilterResult result;
  result.corpus.source_path = corpus.source_path;
  result.corpus.summary = corpus.summary;
  for (const Sentence &sentence : corpus.sentences) {
    bool keep = true;
    for (const Word &w : sentence.words) {
      const std::string key = lowercase_forms ? lowercase(w.form) : w.form;
      if (!vocab.contains(key)) {
        keep = false;
        ++result.oov_forms[key];
      }
    }
    if (keep) {
      result.corpus.sentences.push_back(sentence);
    } else {
      ++result.excluded;
    }
  }
  result.corpus.summary.words = result.corpus.word_count();
  return result;
}

std::string write_conllu(const Corpus &corpus) {
  std::ostringstream out;
  for (const Sentence &sentence : corpus.sentences) {
    write_sentence(out, sentence, nullptr);
  }
  return std::move(out).str();
}

std::string emit_conllu(const Corpus &corpus, const TreeMap &predicted) {
  std::string missing;
  for (const Sentence &sentence : corpus.sentences) {
    if (!predicted.contains(sentence.sent_id)) {
      missing += (missing.empty() ? "" : ", ") + sentence.sent_id;
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kMissing, "no predicted tree for: " + missing);
  }
  std::ostringstream out;
  for (const Sentence &sentence : corpus.sentences) {
    const DependencyTree &tree = predicted.at(sentence.sent_id);
    if (tree.size() != sentence.size()) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + sentence.sent_id + ": predicted tree has " +
                      std::to_string(tree.size()) + " heads for " +
                      std::to_string(sentence.size()) + " words");
    }
    write_sentence(out, sentence, &tree);
  }
  return std::move(out).str();
}

}  // namespace redparse
