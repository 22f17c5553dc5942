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

#include <random>

#include "redparse/embedding_dump.hpp"
#include "redparse/error.hpp"

namespace redparse {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

EmbeddingBlock mock_embed(const Variant &variant, int dim,
                          std::uint64_t corpus_seed) {
  if (dim < 1) throw Error(ErrorKind::kInvalidArgument, "mock dim must be >= 1");
  const int n = static_cast<int>(variant.words.size());
  EmbeddingBlock block;
  block.sent_index = variant.sent_index;
  block.span = variant.span;
  block.n_words = n;
  block.dim = dim;
  block.values.resize(static_cast<std::size_t>(n) * dim);

  std::string seed_bytes(8, '\0');
  for (int b = 0; b < 8; ++b) {
    seed_bytes[static_cast<std::size_t>(b)] =
        static_cast<char>((corpus_seed >> (8 * b)) & 0xFFu);
  }
  for (int j = 0; j < n; ++j) {
    // word \x1f left \x1f right \x1f seed
    std::string key = lowercase(variant.words[static_cast<std::size_t>(j)]);
    key += '\x1f';
    key += j > 0 ? lowercase(variant.words[static_cast<std::size_t>(j - 1)])
                 : std::string("<s>");
    key += '\x1f';
    key += j + 1 < n ? lowercase(variant.words[static_cast<std::size_t>(j + 1)])
                     : std::string("</s>");
    key += '\x1f';
    key += seed_bytes;
    std::mt19937_64 stream(fnv1a64(key));
    std::span<float> row = block.row(j);
    for (float &component : row) {
      const double unit = static_cast<double>(stream() >> 11) * 0x1.0p-53;
      component = static_cast<float>(2.0 * unit - 1.0);
    }
  }
  return block;
}

}  // namespace redparse
