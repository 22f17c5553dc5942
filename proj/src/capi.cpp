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

#include "redparse/redparse.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <string>
#include <type_traits>

#include "json.hpp"
#include "redparse/embedding_dump.hpp"
#include "redparse/error.hpp"
#include "redparse/evaluation.hpp"
#include "redparse/parser.hpp"
#include "redparse/reducibility.hpp"
#include "redparse/treebank.hpp"
#include "redparse/variants.hpp"

static_assert(std::is_same_v<int, std::int32_t>,
              "tree heads are handed out as int32_t arrays");

struct rp_corpus {
  redparse::Corpus corpus;
  bool filtered = false;
  std::size_t filter_excluded = 0;
  std::map<std::string, std::size_t> oov_forms;
};

struct rp_vocab {
  redparse::Vocabulary vocab;
};

struct rp_scores {
  std::vector<redparse::ScoreTable> tables;
};

struct rp_trees {
  redparse::TreeMap trees;
};

namespace {

thread_local std::string g_last_error;

rp_status to_status(redparse::ErrorKind kind) {
  using redparse::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return RP_E_INVALID_ARGUMENT;
    case ErrorKind::kIo: return RP_E_IO;
    case ErrorKind::kParse: return RP_E_PARSE;
    case ErrorKind::kValidation: return RP_E_VALIDATION;
    case ErrorKind::kFormat: return RP_E_FORMAT;
    case ErrorKind::kAlignment: return RP_E_ALIGNMENT;
    case ErrorKind::kStructure: return RP_E_STRUCTURE;
    case ErrorKind::kMissing: return RP_E_MISSING;
  }
  return RP_E_INTERNAL;
}

template <typename Fn>
rp_status guarded(Fn &&fn) {
  try {
    g_last_error.clear();
    fn();
    return RP_OK;
  } catch (const redparse::Error &e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return RP_E_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return RP_E_INTERNAL;
  }
}

void require(bool condition, const char *what) {
  if (!condition) {
    throw redparse::Error(redparse::ErrorKind::kInvalidArgument, what);
  }
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void write_file(const char *path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw redparse::Error(redparse::ErrorKind::kIo, std::string("cannot write ") + path);
  out << contents;
  if (!out) throw redparse::Error(redparse::ErrorKind::kIo, std::string("write failed: ") + path);
}

redparse::ParseOptions to_parse_options(const rp_parse_options &o) {
  redparse::ParseOptions options;
  switch (o.mode) {
    case RP_MODE_LEFT: options.mode = redparse::ParseMode::kLeftChain; break;
    case RP_MODE_RIGHT: options.mode = redparse::ParseMode::kRightChain; break;
    case RP_MODE_ALG_D: options.mode = redparse::ParseMode::kAlgorithmD; break;
    case RP_MODE_ALG_R: options.mode = redparse::ParseMode::kAlgorithmR; break;
    default: require(false, "unknown parse mode");
  }
  require(o.orientation == RP_R_CONSTRAINT || o.orientation == RP_R_LITERAL,
          "unknown r orientation");
  options.orientation = o.orientation == RP_R_CONSTRAINT
                            ? redparse::ROrientation::kConstraint
                            : redparse::ROrientation::kLiteral;
  options.punct_override = o.punct_override != 0;
  require(o.max_sentence_len >= 1, "max_sentence_len must be >= 1");
  options.max_sentence_len = static_cast<int>(o.max_sentence_len);
  return options;
}

}  // namespace

extern "C" {

const char *rp_version(void) { return "0.1.0"; }

const char *rp_last_error(void) { return g_last_error.c_str(); }

const char *rp_status_name(rp_status status) {
  switch (status) {
    case RP_OK: return "ok";
    case RP_E_INVALID_ARGUMENT: return "invalid argument";
    case RP_E_IO: return "i/o error";
    case RP_E_PARSE: return "parse error";
    case RP_E_VALIDATION: return "validation error";
    case RP_E_FORMAT: return "format error";
    case RP_E_ALIGNMENT: return "alignment error";
    case RP_E_STRUCTURE: return "structural error";
    case RP_E_MISSING: return "missing data";
    case RP_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rp_string_free(char *s) { std::free(s); }

void rp_variant_options_init(rp_variant_options *options) {
  if (!options) return;
  options->max_phrase_len = 0;
  options->max_sentence_len = 30;
}

void rp_parse_options_init(rp_parse_options *options) {
  if (!options) return;
  options->mode = RP_MODE_ALG_R;
  options->punct_override = 0;
  options->orientation = RP_R_CONSTRAINT;
  options->max_sentence_len = 30;
  options->trace_path = nullptr;
}

void rp_eval_options_init(rp_eval_options *options) {
  if (!options) return;
  options->leaf_factor = 1.2;
  options->punct_override = 0;
}

rp_status rp_corpus_read(const char *path, rp_corpus **out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto handle = std::make_unique<rp_corpus>();
    handle->corpus = redparse::read_conllu_file(path);
    *out = handle.release();
  });
}

rp_status rp_corpus_parse(const char *text, size_t length, rp_corpus **out) {
  return guarded([&] {
    require((text || length == 0) && out, "null argument");
    auto handle = std::make_unique<rp_corpus>();
    handle->corpus = redparse::parse_conllu(std::string_view(text ? text : "", length));
    *out = handle.release();
  });
}

void rp_corpus_free(rp_corpus *corpus) { delete corpus; }

size_t rp_corpus_size(const rp_corpus *corpus) {
  return corpus ? corpus->corpus.sentences.size() : 0;
}

size_t rp_corpus_sentence_length(const rp_corpus *corpus, size_t i) {
  if (!corpus || i >= corpus->corpus.sentences.size()) return 0;
  return corpus->corpus.sentences[i].words.size();
}

rp_status rp_corpus_summary(const rp_corpus *corpus, char **json) {
  return guarded([&] {
    require(corpus && json, "null argument");
    const redparse::ParseSummary &s = corpus->corpus.summary;
    nlohmann::ordered_json j;
    j["source_path"] = corpus->corpus.source_path;
    j["blocks"] = s.blocks;
    j["parsed"] = s.kept;
    j["excluded_multiword"] = s.excluded_multiword;
    j["excluded_empty_node"] = s.excluded_empty_node;
    j["max_length"] = s.max_length;
    j["sentences"] = corpus->corpus.sentences.size();
    j["words"] = corpus->corpus.word_count();
    if (corpus->filtered) {
      j["excluded_oov"] = corpus->filter_excluded;
      j["oov_forms"] = corpus->oov_forms.size();
    }
    *json = copy_string(j.dump());
  });
}

rp_status rp_vocab_read(const char *path, rp_vocab **out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto handle = std::make_unique<rp_vocab>();
    handle->vocab = redparse::read_vocabulary_file(path);
    *out = handle.release();
  });
}

void rp_vocab_free(rp_vocab *vocab) { delete vocab; }

size_t rp_vocab_size(const rp_vocab *vocab) { return vocab ? vocab->vocab.size() : 0; }

rp_status rp_corpus_filter(const rp_corpus *corpus, const rp_vocab *vocab,
                           int lowercase, rp_corpus **out) {
  return guarded([&] {
    require(corpus && vocab && out, "null argument");
    redparse::FilterResult result =
        redparse::filter_by_vocab(corpus->corpus, vocab->vocab, lowercase != 0);
    auto handle = std::make_unique<rp_corpus>();
    handle->corpus = std::move(result.corpus);
    handle->filtered = true;
    handle->filter_excluded = result.excluded;
    handle->oov_forms = std::move(result.oov_forms);
    *out = handle.release();
  });
}

rp_status rp_corpus_write(const rp_corpus *corpus, const rp_trees *trees,
                          const char *path) {
  return guarded([&] {
    require(corpus && path, "null argument");
    write_file(path, trees ? redparse::emit_conllu(corpus->corpus, trees->trees)
                           : redparse::write_conllu(corpus->corpus));
  });
}

rp_status rp_write_manifest(const rp_corpus *corpus, const rp_variant_options *options,
                            const char *path, size_t *n_variants) {
  return guarded([&] {
    require(corpus && path, "null argument");
    rp_variant_options o;
    rp_variant_options_init(&o);
    if (options) o = *options;
    require(o.max_sentence_len >= 1, "max_sentence_len must be >= 1");
    redparse::VariantLimits limits;
    if (o.max_phrase_len > 0) limits.max_phrase_len = static_cast<int>(o.max_phrase_len);
    limits.max_sentence_len = static_cast<int>(o.max_sentence_len);

    std::string text;
    std::size_t count = 0;
    const auto &sentences = corpus->corpus.sentences;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      for (const redparse::Variant &v :
           redparse::enumerate_variants(sentences[i], static_cast<int>(i), limits)) {
        text += redparse::manifest_line(v);
        text += '\n';
        ++count;
      }
    }
    write_file(path, text);
    if (n_variants) *n_variants = count;
  });
}

rp_status rp_mock_embed(const char *manifest_path, uint32_t dim, uint64_t seed,
                        const char *dump_path, size_t *n_blocks) {
  return guarded([&] {
    require(manifest_path && dump_path, "null argument");
    require(dim >= 1, "dim must be >= 1");
    const std::vector<redparse::Variant> variants =
        redparse::read_manifest_file(manifest_path);
    int last_index = -1;
    for (const redparse::Variant &v : variants) {
      if (v.sent_index < last_index || (v.sent_index > last_index && !v.is_base())) {
        throw redparse::Error(redparse::ErrorKind::kValidation,
                              "manifest must list each sentence's BASE first, in "
                              "corpus order (sent_index " +
                                  std::to_string(v.sent_index) + ")");
      }
      last_index = v.sent_index;
    }
    std::ofstream out(dump_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw redparse::Error(redparse::ErrorKind::kIo,
                            std::string("cannot write ") + dump_path);
    }
    redparse::DumpWriter writer(out, static_cast<int>(dim));
    for (const redparse::Variant &v : variants) {
      writer.write(redparse::mock_embed(v, static_cast<int>(dim), seed));
    }
    out.flush();
    if (!out) throw redparse::Error(redparse::ErrorKind::kIo, "dump write failed");
    if (n_blocks) *n_blocks = writer.written();
  });
}

rp_status rp_scores_from_dump(const char *dump_path, const rp_corpus *corpus,
                              rp_scores **out) {
  return guarded([&] {
    require(dump_path && corpus && out, "null argument");
    std::ifstream in(dump_path, std::ios::binary);
    if (!in) {
      throw redparse::Error(redparse::ErrorKind::kIo,
                            std::string("cannot open ") + dump_path);
    }
    auto handle = std::make_unique<rp_scores>();
    handle->tables = redparse::score_dump(in, corpus->corpus);
    *out = handle.release();
  });
}

rp_status rp_scores_read(const char *path, rp_scores **out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto handle = std::make_unique<rp_scores>();
    handle->tables = redparse::read_scores_file(path);
    *out = handle.release();
  });
}

rp_status rp_scores_write(const rp_scores *scores, const char *path) {
  return guarded([&] {
    require(scores && path, "null argument");
    std::string text;
    for (const redparse::ScoreTable &t : scores->tables) {
      text += redparse::score_line(t);
      text += '\n';
    }
    write_file(path, text);
  });
}

void rp_scores_free(rp_scores *scores) { delete scores; }

size_t rp_scores_size(const rp_scores *scores) {
  return scores ? scores->tables.size() : 0;
}

rp_status rp_parse(const rp_scores *scores, const rp_corpus *corpus,
                   const rp_parse_options *options, rp_trees **out) {
  return guarded([&] {
    require(corpus && out, "null argument");
    rp_parse_options o;
    rp_parse_options_init(&o);
    if (options) o = *options;
    const redparse::ParseOptions parse_options = to_parse_options(o);
    const bool chain = parse_options.mode == redparse::ParseMode::kLeftChain ||
                       parse_options.mode == redparse::ParseMode::kRightChain;
    require(chain || scores, "this parse mode needs scores");
    std::span<const redparse::ScoreTable> tables;
    if (scores) tables = scores->tables;

    auto handle = std::make_unique<rp_trees>();
    if (o.trace_path) {
      std::ofstream trace(o.trace_path, std::ios::binary | std::ios::trunc);
      if (!trace) {
        throw redparse::Error(redparse::ErrorKind::kIo,
                              std::string("cannot write ") + o.trace_path);
      }
      handle->trees = redparse::parse_corpus(tables, corpus->corpus, parse_options, &trace);
    } else {
      handle->trees = redparse::parse_corpus(tables, corpus->corpus, parse_options);
    }
    *out = handle.release();
  });
}

rp_status rp_trees_from_corpus(const rp_corpus *corpus, rp_trees **out) {
  return guarded([&] {
    require(corpus && out, "null argument");
    auto handle = std::make_unique<rp_trees>();
    handle->trees = redparse::gold_trees(corpus->corpus);
    *out = handle.release();
  });
}

void rp_trees_free(rp_trees *trees) { delete trees; }

size_t rp_trees_size(const rp_trees *trees) { return trees ? trees->trees.size() : 0; }

rp_status rp_trees_get(const rp_trees *trees, const char *sent_id,
                       const int32_t **heads, size_t *n) {
  return guarded([&] {
    require(trees && sent_id && heads && n, "null argument");
    auto it = trees->trees.find(sent_id);
    if (it == trees->trees.end()) {
      throw redparse::Error(redparse::ErrorKind::kMissing,
                            std::string("no tree for sentence ") + sent_id);
    }
    *heads = it->second.heads.data();
    *n = it->second.heads.size();
  });
}

rp_status rp_evaluate(const rp_corpus *gold, const rp_trees *trees,
                      const rp_scores *scores, const rp_eval_options *options,
                      char **json) {
  return guarded([&] {
    require(gold && json, "null argument");
    require(trees || scores, "evaluation needs predicted trees or scores");
    rp_eval_options o;
    rp_eval_options_init(&o);
    if (options) o = *options;
    require(o.leaf_factor > 0.0, "leaf_factor must be > 0");
    redparse::ReportOptions report_options;
    report_options.leaf_factor = o.leaf_factor;
    report_options.punct_override = o.punct_override != 0;
    const redparse::EvalReport report = redparse::full_report(
        gold->corpus, trees ? &trees->trees : nullptr,
        scores ? &scores->tables : nullptr, report_options);
    *json = copy_string(redparse::to_json(report));
  });
}

rp_status rp_write_figure_data(const rp_scores *scores, const rp_corpus *gold,
                               const char *words_csv_path, const char *tags_csv_path) {
  return guarded([&] {
    require(scores && gold && (words_csv_path || tags_csv_path), "null argument");
    const auto aligned = redparse::align_tables(scores->tables, gold->corpus);
    const redparse::PosAggregate aggregate = redparse::pos_aggregate(aligned, gold->corpus);
    if (words_csv_path) write_file(words_csv_path, redparse::words_csv(aggregate));
    if (tags_csv_path) write_file(tags_csv_path, redparse::tags_csv(aggregate));
  });
}

rp_status rp_table1(const rp_scores *scores, const rp_corpus *gold,
                    const rp_parse_options *options, rp_table_format format,
                    char **out) {
  return guarded([&] {
    require(scores && gold && out, "null argument");
    rp_parse_options o;
    rp_parse_options_init(&o);
    if (options) o = *options;
    const std::vector<redparse::Table1Row> rows =
        redparse::table1(scores->tables, gold->corpus, to_parse_options(o));
    *out = copy_string(format == RP_TABLE_CSV ? redparse::table1_csv(rows)
                                              : redparse::table1_markdown(rows));
  });
}

}  // extern "C"
