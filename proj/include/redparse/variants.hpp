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

#ifndef REDPARSE_VARIANTS_HPP_
#define REDPARSE_VARIANTS_HPP_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redparse/treebank.hpp"

namespace redparse {

// A contiguous run of words, as a 0-based offset and a length.
struct Span {
  int start = 0;
  int len = 1;

  int end() const { return start + len; }
  bool contains(int position) const {
    return position >= start && position < end();
  }
  bool contains(const Span &other) const {
    return other.start >= start && other.end() <= end();
  }
  auto operator<=>(const Span &) const = default;
};

bool valid_span(const Span &span, int n);

// A sentence with one span deleted; span == nullopt marks the BASE variant.
struct Variant {
  int sent_index = 0;
  std::string sent_id;
  std::optional<Span> span;
  std::vector<std::string> words;

  bool is_base() const { return !span.has_value(); }
};

struct VariantLimits {
  std::optional<int> max_phrase_len;  // nullopt = unlimited
  int max_sentence_len = 30;          // longer sentences get single-word spans
};

// BASE first, then every deletable span ordered by (start, len). The whole
// sentence is never deleted.
std::vector<Variant> enumerate_variants(const Sentence &sentence,
                                        int sent_index,
                                        const VariantLimits &limits = {});

// result[j] is the original position of the word at variant position j.
std::vector<int> remaining_alignment(int n, const Span &span);

// Variant manifest, one JSON object per line.
std::string manifest_line(const Variant &variant);
Variant parse_manifest_line(std::string_view line);
std::vector<Variant> read_manifest(std::string_view text);
std::vector<Variant> read_manifest_file(const std::string &path);

}  // namespace redparse

#endif  // REDPARSE_VARIANTS_HPP_
