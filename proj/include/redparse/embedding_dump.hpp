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

#ifndef REDPARSE_EMBEDDING_DUMP_HPP_
#define REDPARSE_EMBEDDING_DUMP_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redparse/variants.hpp"

namespace redparse {

// Word vectors of one variant, row-major n_words x dim.
struct EmbeddingBlock {
  int sent_index = 0;
  std::optional<Span> span;  // nullopt = BASE
  int n_words = 0;
  int dim = 0;
  std::vector<float> values;

  bool is_base() const { return !span.has_value(); }
  std::span<const float> row(int i) const {
    return {values.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<float> row(int i) {
    return {values.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
  bool operator==(const EmbeddingBlock &) const = default;
};

// Binary dump layout, all little-endian:
//   "RDCB" | u32 version (1) | u32 dim
//   per record: u32 sent_index | i32 span_start (-1 = BASE)
//               | u32 span_len (0 = BASE) | u32 n_words | n_words*dim f32
inline constexpr char kDumpMagic[4] = {'R', 'D', 'C', 'B'};
inline constexpr std::uint32_t kDumpVersion = 1;

class DumpWriter {
 public:
  // Writes the header immediately.
  DumpWriter(std::ostream &out, int dim);

  void write(const EmbeddingBlock &block);
  int dim() const { return dim_; }
  std::size_t written() const { return written_; }

 private:
  std::ostream &out_;
  int dim_;
  std::size_t written_ = 0;
};

class DumpReader {
 public:
  // Reads and checks the header; throws Error(kFormat) on a bad one.
  explicit DumpReader(std::istream &in);

  // Next record, or nullopt at a clean end of file. A record cut short
  // throws Error(kFormat) naming the byte offset.
  std::optional<EmbeddingBlock> next();
  int dim() const { return dim_; }

 private:
  bool read_exact(void *dst, std::size_t n, bool allow_eof);

  std::istream &in_;
  int dim_ = 0;
  std::uint64_t offset_ = 0;
};

std::string write_dump(std::span<const EmbeddingBlock> blocks, int dim);
std::vector<EmbeddingBlock> read_dump(const std::string &bytes);

// Deterministic, model-free stand-in for a contextual encoder: the vector of
// each word is a function of the word and its two neighbours only.
EmbeddingBlock mock_embed(const Variant &variant, int dim,
                          std::uint64_t corpus_seed);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace redparse

#endif  // REDPARSE_EMBEDDING_DUMP_HPP_
