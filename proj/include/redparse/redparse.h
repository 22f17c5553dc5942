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

/* C interface to the redparse library. Every function returns an rp_status;
 * on failure a description is available from rp_last_error() on the calling
 * thread. Objects returned through out-parameters are owned by the caller
 * and released with the matching rp_*_free function. */

#ifndef REDPARSE_REDPARSE_H_
#define REDPARSE_REDPARSE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(REDPARSE_BUILDING)
#    define RP_API __declspec(dllexport)
#  else
#    define RP_API __declspec(dllimport)
#  endif
#else
#  define RP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rp_status {
  RP_OK = 0,
  RP_E_INVALID_ARGUMENT = 1,
  RP_E_IO = 2,
  RP_E_PARSE = 3,
  RP_E_VALIDATION = 4,
  RP_E_FORMAT = 5,
  RP_E_ALIGNMENT = 6,
  RP_E_STRUCTURE = 7,
  RP_E_MISSING = 8,
  RP_E_INTERNAL = 9
} rp_status;

typedef enum rp_parse_mode {
  RP_MODE_LEFT = 0,
  RP_MODE_RIGHT = 1,
  RP_MODE_ALG_D = 2,
  RP_MODE_ALG_R = 3
} rp_parse_mode;

typedef enum rp_r_orientation {
  RP_R_CONSTRAINT = 0,
  RP_R_LITERAL = 1
} rp_r_orientation;

typedef enum rp_table_format {
  RP_TABLE_MARKDOWN = 0,
  RP_TABLE_CSV = 1
} rp_table_format;

typedef struct rp_corpus rp_corpus;
typedef struct rp_vocab rp_vocab;
typedef struct rp_scores rp_scores;
typedef struct rp_trees rp_trees;

typedef struct rp_variant_options {
  uint32_t max_phrase_len;   /* 0 = unlimited */
  uint32_t max_sentence_len; /* longer sentences keep single-word spans */
} rp_variant_options;

typedef struct rp_parse_options {
  rp_parse_mode mode;
  int punct_override;
  rp_r_orientation orientation;
  uint32_t max_sentence_len;
  const char *trace_path; /* NULL: no trace */
} rp_parse_options;

typedef struct rp_eval_options {
  double leaf_factor;
  int punct_override;
} rp_eval_options;

RP_API const char *rp_version(void);
RP_API const char *rp_last_error(void);
RP_API const char *rp_status_name(rp_status status);
RP_API void rp_string_free(char *s);

RP_API void rp_variant_options_init(rp_variant_options *options);
RP_API void rp_parse_options_init(rp_parse_options *options);
RP_API void rp_eval_options_init(rp_eval_options *options);

/* Treebank */
RP_API rp_status rp_corpus_read(const char *path, rp_corpus **out);
RP_API rp_status rp_corpus_parse(const char *text, size_t length,
                                 rp_corpus **out);
RP_API void rp_corpus_free(rp_corpus *corpus);
RP_API size_t rp_corpus_size(const rp_corpus *corpus);
RP_API size_t rp_corpus_sentence_length(const rp_corpus *corpus, size_t i);
/* Allocated JSON object with the parse (and filter) counts. */
RP_API rp_status rp_corpus_summary(const rp_corpus *corpus, char **json);

RP_API rp_status rp_vocab_read(const char *path, rp_vocab **out);
RP_API void rp_vocab_free(rp_vocab *vocab);
RP_API size_t rp_vocab_size(const rp_vocab *vocab);

RP_API rp_status rp_corpus_filter(const rp_corpus *corpus,
                                  const rp_vocab *vocab, int lowercase,
                                  rp_corpus **out);

/* Writes CoNLL-U with heads from |trees|, or the gold heads when NULL. */
RP_API rp_status rp_corpus_write(const rp_corpus *corpus,
                                 const rp_trees *trees, const char *path);

/* Variants, mock embeddings, scores */
RP_API rp_status rp_write_manifest(const rp_corpus *corpus,
                                   const rp_variant_options *options,
                                   const char *path, size_t *n_variants);
RP_API rp_status rp_mock_embed(const char *manifest_path, uint32_t dim,
                               uint64_t seed, const char *dump_path,
                               size_t *n_blocks);
RP_API rp_status rp_scores_from_dump(const char *dump_path,
                                     const rp_corpus *corpus,
                                     rp_scores **out);
RP_API rp_status rp_scores_read(const char *path, rp_scores **out);
RP_API rp_status rp_scores_write(const rp_scores *scores, const char *path);
RP_API void rp_scores_free(rp_scores *scores);
RP_API size_t rp_scores_size(const rp_scores *scores);

/* Parsing */
RP_API rp_status rp_parse(const rp_scores *scores, const rp_corpus *corpus,
                          const rp_parse_options *options, rp_trees **out);
/* The heads stored in |corpus| (e.g. a parsed CoNLL-U file) as trees. */
RP_API rp_status rp_trees_from_corpus(const rp_corpus *corpus,
                                      rp_trees **out);
RP_API void rp_trees_free(rp_trees *trees);
RP_API size_t rp_trees_size(const rp_trees *trees);
/* Heads of the tree for |sent_id|; the pointer stays valid until the trees
 * object is freed. */
RP_API rp_status rp_trees_get(const rp_trees *trees, const char *sent_id,
                              const int32_t **heads, size_t *n);

/* Evaluation. |trees| and |scores| may each be NULL, not both. */
RP_API rp_status rp_evaluate(const rp_corpus *gold, const rp_trees *trees,
                             const rp_scores *scores,
                             const rp_eval_options *options, char **json);
RP_API rp_status rp_write_figure_data(const rp_scores *scores,
                                      const rp_corpus *gold,
                                      const char *words_csv_path,
                                      const char *tags_csv_path);
RP_API rp_status rp_table1(const rp_scores *scores, const rp_corpus *gold,
                           const rp_parse_options *options,
                           rp_table_format format, char **out);

#ifdef __cplusplus
}
#endif

#endif /* REDPARSE_REDPARSE_H_ */
