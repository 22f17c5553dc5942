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

#include "redparse/variants.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "redparse/error.hpp"

namespace redparse {

bool valid_span(const Span &span, int n) {
  return span.start >= 0 && span.len >= 1 && span.end() <= n;
}

std::vector<Variant> enumerate_variants(const Sentence &sentence,
                                        int sent_index,
                                        const VariantLimits &limits) {
  const int n = sentence.size();
  std::vector<std::string> forms;
  forms.reserve(sentence.words.size());
  for (const Word &w : sentence.words) forms.push_back(w.form);

  std::vector<Variant> variants;
  variants.push_back({sent_index, sentence.sent_id, std::nullopt, forms});

  int cap = n - 1;
  if (limits.max_phrase_len) cap = std::min(cap, *limits.max_phrase_len);
  if (n > limits.max_sentence_len) cap = std::min(cap, 1);
  for (int start = 0; start < n; ++start) {
    for (int len = 1; len <= cap && start + len <= n; ++len) {
      Variant v{sent_index, sentence.sent_id, Span{start, len}, {}};
      v.words.reserve(static_cast<std::size_t>(n - len));
      v.words.insert(v.words.end(), forms.begin(), forms.begin() + start);
      v.words.insert(v.words.end(), forms.begin() + start + len, forms.end());
      variants.push_back(std::move(v));
    }
  }
  return variants;
}

std::vector<int> remaining_alignment(int n, const Span &span) {
  std::vector<int> map;
  map.reserve(static_cast<std::size_t>(std::max(0, n - span.len)));
  for (int j = 0; j < n - span.len; ++j) {
    map.push_back(j < span.start ? j : j + span.len);
  }
  return map;
}

std::string manifest_line(const Variant &variant) {
  nlohmann::ordered_json j;
  j["sent_index"] = variant.sent_index;
  j["sent_id"] = variant.sent_id;
  if (variant.span) {
    j["span"] = {variant.span->start, variant.span->len};
  } else {
    j["span"] = nullptr;
  }
  j["words"] = variant.words;
  return j.dump();
}

Variant parse_manifest_line(std::string_view line) {
  Variant v;
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    v.sent_index = j.at("sent_index").get<int>();
    v.sent_id = j.at("sent_id").get<std::string>();
    const nlohmann::json &span = j.at("span");
    if (!span.is_null()) {
      if (!span.is_array() || span.size() != 2) {
        throw Error(ErrorKind::kParse, "manifest span must be null or [start, len]");
      }
      v.span = Span{span[0].get<int>(), span[1].get<int>()};
    }
    v.words = j.at("words").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("bad manifest line: ") + e.what());
  }
  if (v.sent_index < 0) {
    throw Error(ErrorKind::kParse, "manifest sent_index must be nonnegative");
  }
  if (v.span && (v.span->start < 0 || v.span->len < 1)) {
    throw Error(ErrorKind::kParse, "manifest span out of range");
  }
  return v;
}

std::vector<Variant> read_manifest(std::string_view text) {
  std::vector<Variant> variants;
  std::size_t begin = 0;
  std::size_t number = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(begin, end - begin);
    ++number;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        variants.push_back(parse_manifest_line(line));
      } catch (const Error &e) {
        throw Error(e.kind(), "manifest line " + std::to_string(number) + ": " +
                                  e.what());
      }
    }
    begin = end + 1;
  }
  return variants;
}

std::vector<Variant> read_manifest_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_manifest(buffer.str());
}

}  // namespace redparse
