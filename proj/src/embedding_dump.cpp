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

#include "redparse/embedding_dump.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "redparse/error.hpp"

namespace redparse {
namespace {

void put_u32(std::ostream &out, std::uint32_t value) {
  const char bytes[4] = {
      static_cast<char>(value & 0xFFu), static_cast<char>((value >> 8) & 0xFFu),
      static_cast<char>((value >> 16) & 0xFFu),
      static_cast<char>((value >> 24) & 0xFFu)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(const unsigned char *bytes) {
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

DumpWriter::DumpWriter(std::ostream &out, int dim) : out_(out), dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::kInvalidArgument, "dump dim must be >= 1");
  out_.write(kDumpMagic, 4);
  put_u32(out_, kDumpVersion);
  put_u32(out_, static_cast<std::uint32_t>(dim));
  if (!out_) throw Error(ErrorKind::kIo, "failed to write dump header");
}

void DumpWriter::write(const EmbeddingBlock &block) {
  if (block.dim != dim_) {
    throw Error(ErrorKind::kFormat, "block dim " + std::to_string(block.dim) +
                                        " does not match dump dim " +
                                        std::to_string(dim_));
  }
  if (block.values.size() !=
      static_cast<std::size_t>(block.n_words) * static_cast<std::size_t>(dim_)) {
    throw Error(ErrorKind::kFormat, "block value count does not match n_words x dim");
  }
  put_u32(out_, static_cast<std::uint32_t>(block.sent_index));
  put_u32(out_, block.span ? static_cast<std::uint32_t>(block.span->start)
                           : static_cast<std::uint32_t>(-1));
  put_u32(out_, block.span ? static_cast<std::uint32_t>(block.span->len) : 0u);
  put_u32(out_, static_cast<std::uint32_t>(block.n_words));
  for (float value : block.values) put_u32(out_, std::bit_cast<std::uint32_t>(value));
  if (!out_) throw Error(ErrorKind::kIo, "failed to write dump record");
  ++written_;
}

DumpReader::DumpReader(std::istream &in) : in_(in) {
  unsigned char header[12];
  if (!read_exact(header, sizeof header, false)) {
    throw Error(ErrorKind::kFormat, "dump header truncated");
  }
  if (std::memcmp(header, kDumpMagic, 4) != 0) {
    throw Error(ErrorKind::kFormat, "bad dump magic (expected RDCB)");
  }
  const std::uint32_t version = get_u32(header + 4);
  if (version != kDumpVersion) {
    throw Error(ErrorKind::kFormat,
                "unsupported dump version " + std::to_string(version));
  }
  const std::uint32_t dim = get_u32(header + 8);
  if (dim == 0 || dim > (1u << 20)) {
    throw Error(ErrorKind::kFormat, "bad dump dim " + std::to_string(dim));
  }
  dim_ = static_cast<int>(dim);
}

bool DumpReader::read_exact(void *dst, std::size_t n, bool allow_eof) {
  in_.read(static_cast<char *>(dst), static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (got == n) {
    offset_ += n;
    return true;
  }
  if (got == 0 && allow_eof) return false;
  throw Error(ErrorKind::kFormat, "truncated dump record at byte offset " +
                                      std::to_string(offset_ + got));
}

std::optional<EmbeddingBlock> DumpReader::next() {
  const std::uint64_t record_offset = offset_;
  unsigned char head[16];
  if (!read_exact(head, sizeof head, true)) return std::nullopt;
  EmbeddingBlock block;
  block.sent_index = static_cast<int>(get_u32(head));
  const auto span_start = static_cast<std::int32_t>(get_u32(head + 4));
  const std::uint32_t span_len = get_u32(head + 8);
  const std::uint32_t n_words = get_u32(head + 12);
  if (span_start == -1 && span_len == 0) {
    block.span = std::nullopt;
  } else if (span_start >= 0 && span_len >= 1) {
    block.span = Span{span_start, static_cast<int>(span_len)};
  } else {
    throw Error(ErrorKind::kFormat, "inconsistent span fields in record at byte offset " +
                                        std::to_string(record_offset));
  }
  if (n_words > (1u << 20)) {
    throw Error(ErrorKind::kFormat, "implausible n_words in record at byte offset " +
                                        std::to_string(record_offset));
  }
  block.n_words = static_cast<int>(n_words);
  block.dim = dim_;
  const std::size_t count = static_cast<std::size_t>(n_words) * dim_;
  std::vector<unsigned char> raw(count * 4);
  if (count > 0) read_exact(raw.data(), raw.size(), false);
  block.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    block.values[i] = std::bit_cast<float>(get_u32(raw.data() + 4 * i));
  }
  return block;
}

std::string write_dump(std::span<const EmbeddingBlock> blocks, int dim) {
  std::ostringstream out;
  DumpWriter writer(out, dim);
  for (const EmbeddingBlock &block : blocks) writer.write(block);
  return std::move(out).str();
}

std::vector<EmbeddingBlock> read_dump(const std::string &bytes) {
  std::istringstream in(bytes);
  DumpReader reader(in);
  std::vector<EmbeddingBlock> blocks;
  while (auto block = reader.next()) blocks.push_back(std::move(*block));
  return blocks;
}

}  // namespace redparse
