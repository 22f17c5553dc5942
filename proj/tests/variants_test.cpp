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
#include <cstring>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "redparse/embedding_dump.hpp"
#include "redparse/error.hpp"
#include "test_support.hpp"

namespace redparse {
namespace {

using testing::make_sentence;

Sentence chain_sentence(int n) {
  std::vector<std::string> forms;
  std::vector<int> heads;
  for (int i = 1; i <= n; ++i) {
    forms.push_back("w" + std::to_string(i));
    heads.push_back(i < n ? i + 1 : 0);
  }
  return make_sentence(forms, heads);
}

std::vector<std::optional<Span>> spans_of(const std::vector<Variant> &variants) {
  std::vector<std::optional<Span>> spans;
  for (const Variant &v : variants) spans.push_back(v.span);
  return spans;
}

TEST(EnumerateVariants, ThreeWordsUnlimited) {
  const std::vector<Variant> variants = enumerate_variants(chain_sentence(3), 0);
  const std::vector<std::optional<Span>> expected = {
      std::nullopt, Span{0, 1}, Span{0, 2}, Span{1, 1}, Span{1, 2}, Span{2, 1}};
  EXPECT_EQ(spans_of(variants), expected);
  EXPECT_EQ(variants[0].words, (std::vector<std::string>{"w1", "w2", "w3"}));
  EXPECT_EQ(variants[2].words, (std::vector<std::string>{"w3"}));
  EXPECT_EQ(variants[4].words, (std::vector<std::string>{"w1"}));
}

TEST(EnumerateVariants, SingleWordSentenceHasOnlyBase) {
  const std::vector<Variant> variants = enumerate_variants(chain_sentence(1), 4);
  ASSERT_EQ(variants.size(), 1u);
  EXPECT_TRUE(variants[0].is_base());
  EXPECT_EQ(variants[0].sent_index, 4);
}

TEST(EnumerateVariants, PhraseCap) {
  VariantLimits limits;
  limits.max_phrase_len = 1;
  const std::vector<Variant> variants = enumerate_variants(chain_sentence(3), 0, limits);
  const std::vector<std::optional<Span>> expected = {std::nullopt, Span{0, 1}, Span{1, 1},
                                                     Span{2, 1}};
  EXPECT_EQ(spans_of(variants), expected);
}

TEST(EnumerateVariants, LongSentencesKeepSingleWordSpans) {
  VariantLimits limits;
  limits.max_sentence_len = 4;
  EXPECT_EQ(enumerate_variants(chain_sentence(4), 0, limits).size(), 1u + 4 * 5 / 2 - 1);
  EXPECT_EQ(enumerate_variants(chain_sentence(5), 0, limits).size(), 1u + 5);
}

// Count is 1 + n(n+1)/2 - 1 and every variant drops exactly its span.
TEST(EnumerateVariants, CountAndContentProperty) {
  for (int n = 1; n <= 12; ++n) {
    const Sentence s = chain_sentence(n);
    const std::vector<Variant> variants = enumerate_variants(s, 0);
    ASSERT_EQ(variants.size(), static_cast<std::size_t>(1 + n * (n + 1) / 2 - 1)) << n;
    for (const Variant &v : variants) {
      if (v.is_base()) continue;
      ASSERT_EQ(static_cast<int>(v.words.size()), n - v.span->len);
      const std::vector<int> map = remaining_alignment(n, *v.span);
      for (std::size_t j = 0; j < v.words.size(); ++j) {
        EXPECT_EQ(v.words[j], s.words[static_cast<std::size_t>(map[j])].form);
      }
    }
  }
}

TEST(RemainingAlignment, Examples) {
  EXPECT_EQ(remaining_alignment(5, {1, 2}), (std::vector<int>{0, 3, 4}));
  EXPECT_EQ(remaining_alignment(4, {0, 1}), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(remaining_alignment(3, {2, 1}), (std::vector<int>{0, 1}));
}

// Strictly increasing, never lands inside the span, covers every survivor.
TEST(RemainingAlignment, Property) {
  for (int n = 1; n <= 15; ++n) {
    for (int start = 0; start < n; ++start) {
      for (int len = 1; start + len <= n; ++len) {
        const Span span{start, len};
        const std::vector<int> map = remaining_alignment(n, span);
        ASSERT_EQ(static_cast<int>(map.size()), n - len);
        for (std::size_t j = 0; j < map.size(); ++j) {
          EXPECT_FALSE(span.contains(map[j]));
          if (j > 0) EXPECT_LT(map[j - 1], map[j]);
        }
      }
    }
  }
}

TEST(Manifest, LineFormat) {
  Variant v{3, "s-3", Span{1, 2}, {"a", "d\"q"}};
  EXPECT_EQ(manifest_line(v),
            R"({"sent_index":3,"sent_id":"s-3","span":[1,2],"words":["a","d\"q"]})");
  Variant base{0, "x", std::nullopt, {"hi"}};
  EXPECT_EQ(manifest_line(base), R"({"sent_index":0,"sent_id":"x","span":null,"words":["hi"]})");
  const Variant back = parse_manifest_line(manifest_line(v));
  EXPECT_EQ(back.sent_index, 3);
  EXPECT_EQ(back.span, v.span);
  EXPECT_EQ(back.words, v.words);
  EXPECT_TRUE(parse_manifest_line(manifest_line(base)).is_base());
}

TEST(Manifest, Errors) {
  EXPECT_THROW(read_manifest("{\"sent_index\":0}\n"), Error);
  EXPECT_THROW(read_manifest("not json\n"), Error);
  EXPECT_THROW(
      read_manifest(R"({"sent_index":0,"sent_id":"x","span":[1],"words":[]})"), Error);
}

// --- embedding dump -------------------------------------------------------

TEST(Dump, RoundTripTwoBlocks) {
  std::mt19937_64 rng(1);
  const std::vector<EmbeddingBlock> blocks = {
      testing::random_block(rng, 0, std::nullopt, 3, 4),
      testing::random_block(rng, 0, Span{1, 1}, 2, 4)};
  EXPECT_EQ(read_dump(write_dump(blocks, 4)), blocks);
}

TEST(Dump, EmptyBlockListIsHeaderOnly) {
  const std::string bytes = write_dump({}, 7);
  ASSERT_EQ(bytes.size(), 12u);
  EXPECT_EQ(bytes.substr(0, 4), "RDCB");
  EXPECT_TRUE(read_dump(bytes).empty());
}

TEST(Dump, ExactByteLayout) {
  EmbeddingBlock block{2, std::nullopt, 1, 1, {1.0f}};
  const std::string bytes = write_dump(std::vector<EmbeddingBlock>{block}, 1);
  const std::string expected("RDCB\x01\0\0\0\x01\0\0\0"
                             "\x02\0\0\0\xff\xff\xff\xff\0\0\0\0\x01\0\0\0"
                             "\0\0\x80\x3f",
                             32);
  EXPECT_EQ(bytes, expected);
}

TEST(Dump, BadMagicAndVersion) {
  std::string bytes = write_dump({}, 2);
  bytes[0] = 'X';
  try {
    read_dump(bytes);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
  bytes = write_dump({}, 2);
  bytes[4] = 2;
  EXPECT_THROW(read_dump(bytes), Error);
  EXPECT_THROW(read_dump("RDC"), Error);
}

TEST(Dump, TruncatedRecordReportsOffset) {
  std::mt19937_64 rng(2);
  const std::vector<EmbeddingBlock> blocks = {testing::random_block(rng, 0, std::nullopt, 2, 3)};
  std::string bytes = write_dump(blocks, 3);
  bytes.resize(bytes.size() - 5);
  try {
    read_dump(bytes);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    EXPECT_NE(std::string(e.what()).find(std::to_string(bytes.size())), std::string::npos)
        << e.what();
  }
}

TEST(Dump, DimMismatchRejectedOnWrite) {
  std::mt19937_64 rng(3);
  const std::vector<EmbeddingBlock> blocks = {testing::random_block(rng, 0, std::nullopt, 2, 3)};
  try {
    write_dump(blocks, 4);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
}

// Bit-exact round trip over random dims 1..64 and word counts 1..30.
TEST(Dump, RandomRoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = std::uniform_int_distribution<int>(1, 64)(rng);
    std::vector<EmbeddingBlock> blocks;
    const int count = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int b = 0; b < count; ++b) {
      const int n = std::uniform_int_distribution<int>(1, 30)(rng);
      std::optional<Span> span;
      if (b % 2 == 1) span = Span{std::uniform_int_distribution<int>(0, 9)(rng), 1 + b};
      EmbeddingBlock block = testing::random_block(rng, trial, span, n, dim);
      if (b == 1) block.values[0] = -0.0f;
      blocks.push_back(std::move(block));
    }
    const std::vector<EmbeddingBlock> back = read_dump(write_dump(blocks, dim));
    ASSERT_EQ(back.size(), blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      ASSERT_EQ(back[b].values.size(), blocks[b].values.size());
      EXPECT_EQ(std::memcmp(back[b].values.data(), blocks[b].values.data(),
                            blocks[b].values.size() * sizeof(float)),
                0);
      EXPECT_EQ(back[b].span, blocks[b].span);
      EXPECT_EQ(back[b].sent_index, blocks[b].sent_index);
    }
  }
}

// --- mock embedder --------------------------------------------------------

TEST(MockEmbed, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(MockEmbed, Deterministic) {
  const Variant v{0, "x", std::nullopt, {"The", "dog", "runs"}};
  EXPECT_EQ(mock_embed(v, 16, 5), mock_embed(v, 16, 5));
  EXPECT_NE(mock_embed(v, 16, 5), mock_embed(v, 16, 6));
}

TEST(MockEmbed, SingleWordInRange) {
  for (int dim : {1, 3, 257}) {
    const EmbeddingBlock block = mock_embed({0, "x", std::nullopt, {"hello"}}, dim, 9);
    ASSERT_EQ(block.n_words, 1);
    ASSERT_EQ(block.values.size(), static_cast<std::size_t>(dim));
    for (float x : block.values) {
      EXPECT_GE(x, -1.0f);
      EXPECT_LE(x, 1.0f);
    }
  }
}

TEST(MockEmbed, MatchesDocumentedRecipe) {
  const Variant v{0, "x", std::nullopt, {"The", "Dog", "runs"}};
  const EmbeddingBlock block = mock_embed(v, 8, 42);
  const std::vector<float> expected[] = {
      testing::mock_vector("the", "<s>", "dog", 8, 42),
      testing::mock_vector("dog", "the", "runs", 8, 42),
      testing::mock_vector("runs", "dog", "</s>", 8, 42)};
  for (int j = 0; j < 3; ++j) {
    auto row = block.row(j);
    EXPECT_EQ(std::vector<float>(row.begin(), row.end()), expected[j]) << j;
  }
}

// Deleting a span changes the paired vectors of at most the two words next
// to it.
TEST(MockEmbed, LocalityProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const std::vector<std::string> words = testing::random_words(rng, n);
    const Variant base{0, "x", std::nullopt, words};
    const EmbeddingBlock base_block = mock_embed(base, 6, 1);
    const int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int len = std::uniform_int_distribution<int>(1, std::min(n - 1, n - start))(rng);
    if (start == 0 && len == n) continue;
    Variant deleted{0, "x", Span{start, len}, {}};
    const std::vector<int> map = remaining_alignment(n, {start, len});
    for (int original : map) deleted.words.push_back(words[static_cast<std::size_t>(original)]);
    const EmbeddingBlock block = mock_embed(deleted, 6, 1);
    for (std::size_t j = 0; j < map.size(); ++j) {
      const auto a = base_block.row(map[j]);
      const auto b = block.row(static_cast<int>(j));
      const bool same = std::equal(a.begin(), a.end(), b.begin());
      const bool adjacent = map[j] == start - 1 || map[j] == start + len;
      if (!adjacent) EXPECT_TRUE(same) << "trial " << trial << " position " << map[j];
    }
  }
}

}  // namespace
}  // namespace redparse
