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

// redparse: command-line driver for the reducibility pipeline. Each
// subcommand reads and writes files so stages can be rerun independently:
//
//   filter -> variants -> mock-embed (or an external encoder) -> score
//          -> parse -> eval / table1

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "redparse/redparse.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rp_status status) {
  if (status != RP_OK) {
    throw DataError(std::string(rp_status_name(status)) + ": " + rp_last_error());
  }
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<rp_corpus, Deleter<rp_corpus, rp_corpus_free>>;
using VocabPtr = std::unique_ptr<rp_vocab, Deleter<rp_vocab, rp_vocab_free>>;
using ScoresPtr = std::unique_ptr<rp_scores, Deleter<rp_scores, rp_scores_free>>;
using TreesPtr = std::unique_ptr<rp_trees, Deleter<rp_trees, rp_trees_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, rp_string_free>>;

CorpusPtr read_corpus(const std::string &path) {
  rp_corpus *raw = nullptr;
  check(rp_corpus_read(path.c_str(), &raw));
  return CorpusPtr(raw);
}

ScoresPtr read_scores(const std::string &path) {
  rp_scores *raw = nullptr;
  check(rp_scores_read(path.c_str(), &raw));
  return ScoresPtr(raw);
}

void emit(const std::string &path, const char *text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::FILE *f = std::fopen(path.c_str(), "wb");
  if (!f) throw DataError("cannot write " + path);
  std::fputs(text, f);
  if (std::fclose(f) != 0) throw DataError("write failed: " + path);
}

std::string summary_of(const rp_corpus *corpus) {
  char *json = nullptr;
  check(rp_corpus_summary(corpus, &json));
  StringPtr owned(json);
  return json;
}

uint32_t parse_max_phrase_len(const std::string &text) {
  if (text == "unlimited" || text == "UNLIMITED") return 0;
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used == text.size() && value >= 1) return static_cast<uint32_t>(value);
  } catch (const std::exception &) {
  }
  throw UsageError("--max-phrase-len must be a positive integer or 'unlimited'");
}

struct Config {
  std::string vocab_path;
  bool lowercase = true;
  uint32_t max_sentence_len = 30;
  std::string max_phrase_len = "unlimited";
  double leaf_factor = 1.2;
  bool punct_override = false;
  std::string mode = "algR";
  std::string r_orientation = "constraint";
  uint64_t seed = 0;
  uint32_t dim = 32;
};

rp_parse_options parse_options_from(const Config &config) {
  rp_parse_options options;
  rp_parse_options_init(&options);
  if (config.mode == "left") {
    options.mode = RP_MODE_LEFT;
  } else if (config.mode == "right") {
    options.mode = RP_MODE_RIGHT;
  } else if (config.mode == "algD") {
    options.mode = RP_MODE_ALG_D;
  } else if (config.mode == "algR") {
    options.mode = RP_MODE_ALG_R;
  } else {
    throw UsageError("--mode must be one of left, right, algD, algR");
  }
  if (config.r_orientation == "constraint") {
    options.orientation = RP_R_CONSTRAINT;
  } else if (config.r_orientation == "literal") {
    options.orientation = RP_R_LITERAL;
  } else {
    throw UsageError("--r-orientation must be constraint or literal");
  }
  if (config.max_sentence_len < 1) throw UsageError("--max-sentence-len must be >= 1");
  options.max_sentence_len = config.max_sentence_len;
  options.punct_override = config.punct_override ? 1 : 0;
  return options;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Reducibility scores from deletion-perturbed word vectors, and "
               "unsupervised dependency parsing with them"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rp_version());
  Config config;

  std::string in, out, dump_path, conllu, scores_path, parsed_path, trace_path;
  std::string words_csv, tags_csv, format = "markdown";

  auto *filter = app.add_subcommand("filter", "Keep sentences whose words are all in a vocabulary");
  filter->add_option("in,--in", in, "Input CoNLL-U")->required();
  filter->add_option("out,--out", out, "Filtered CoNLL-U (default stdout)");
  filter->add_option("--vocab-path", config.vocab_path, "One token per line")->required();
  filter->add_flag("--lowercase,!--no-lowercase", config.lowercase,
                   "Lowercase forms before the lookup (uncased models)")
      ->default_val(true);

  auto *variants = app.add_subcommand("variants", "Write the deletion-variant manifest");
  variants->add_option("in,--in", in, "Filtered CoNLL-U")->required();
  variants->add_option("out,--out", out, "Manifest JSON Lines (default stdout)");
  variants->add_option("--max-phrase-len", config.max_phrase_len,
                       "Longest deleted span, or 'unlimited'")
      ->default_val("unlimited");
  variants->add_option("--max-sentence-len", config.max_sentence_len,
                       "Longer sentences get single-word deletions only")
      ->default_val(30);

  auto *mock = app.add_subcommand("mock-embed", "Embed a manifest with the deterministic mock encoder");
  mock->add_option("in,--in", in, "Manifest JSON Lines")->required();
  mock->add_option("out,--out", out, "Embedding dump")->required();
  mock->add_option("--dim", config.dim, "Vector size")->default_val(32);
  mock->add_option("--seed", config.seed, "Corpus seed")->default_val(0);

  auto *score = app.add_subcommand("score", "Compute span reducibility scores from a dump");
  score->add_option("dump,--dump", dump_path, "Embedding dump")->required();
  score->add_option("conllu,--conllu", conllu, "The CoNLL-U the manifest came from")->required();
  score->add_option("out,--out", out, "Score JSON Lines")->required();

  auto *parse = app.add_subcommand("parse", "Build dependency trees");
  parse->add_option("scores,--scores", scores_path, "Score JSON Lines (not needed for chains)");
  parse->add_option("conllu,--conllu", conllu, "Sentences to parse");
  parse->add_option("out,--out", out, "Parsed CoNLL-U (default stdout)");
  parse->add_option("--mode", config.mode, "left, right, algD or algR")->default_val("algR");
  parse->add_flag("--punct-override,--punct", config.punct_override,
                  "Zero the scores of punctuation words first");
  parse->add_option("--r-orientation", config.r_orientation, "constraint or literal")
      ->default_val("constraint");
  parse->add_option("--max-sentence-len", config.max_sentence_len,
                    "Algorithm D falls back to Algorithm R above this length")
      ->default_val(30);
  parse->add_option("--trace", trace_path, "Write the Algorithm D decisions as JSON Lines");

  auto *eval = app.add_subcommand("eval", "Score trees and reducibility diagnostics against gold");
  eval->add_option("gold,--gold", conllu, "Gold CoNLL-U")->required();
  eval->add_option("--parsed", parsed_path, "Parsed CoNLL-U");
  eval->add_option("--scores", scores_path, "Score JSON Lines");
  eval->add_option("out,--out", out, "Report JSON (default stdout)");
  eval->add_option("--words-csv", words_csv, "Per-word scores (needs --scores)");
  eval->add_option("--tags-csv", tags_csv, "Per-UPOS aggregates (needs --scores)");
  eval->add_option("--leaf-factor", config.leaf_factor, "Leaf threshold factor")->default_val(1.2);
  eval->add_flag("--punct-override,--punct", config.punct_override,
                 "Zero the scores of punctuation words first");

  auto *table = app.add_subcommand("table1", "UAS of all six parser configurations");
  table->add_option("scores,--scores", scores_path, "Score JSON Lines")->required();
  table->add_option("gold,--gold", conllu, "Gold CoNLL-U")->required();
  table->add_option("out,--out", out, "Output (default stdout)");
  table->add_option("--format", format, "markdown or csv")->default_val("markdown");
  table->add_option("--r-orientation", config.r_orientation, "constraint or literal")
      ->default_val("constraint");
  table->add_option("--max-sentence-len", config.max_sentence_len,
                    "Algorithm D falls back to Algorithm R above this length")
      ->default_val(30);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*filter) {
      CorpusPtr corpus = read_corpus(in);
      rp_vocab *raw_vocab = nullptr;
      check(rp_vocab_read(config.vocab_path.c_str(), &raw_vocab));
      VocabPtr vocab(raw_vocab);
      rp_corpus *raw = nullptr;
      check(rp_corpus_filter(corpus.get(), vocab.get(), config.lowercase ? 1 : 0, &raw));
      CorpusPtr kept(raw);
      if (out.empty() || out == "-") {
        check(rp_corpus_write(kept.get(), nullptr, "/dev/stdout"));
      } else {
        check(rp_corpus_write(kept.get(), nullptr, out.c_str()));
      }
      std::cerr << summary_of(kept.get()) << '\n';
    } else if (*variants) {
      rp_variant_options options;
      rp_variant_options_init(&options);
      options.max_phrase_len = parse_max_phrase_len(config.max_phrase_len);
      if (config.max_sentence_len < 1) throw UsageError("--max-sentence-len must be >= 1");
      options.max_sentence_len = config.max_sentence_len;
      CorpusPtr corpus = read_corpus(in);
      std::size_t count = 0;
      const std::string target = out.empty() || out == "-" ? "/dev/stdout" : out;
      check(rp_write_manifest(corpus.get(), &options, target.c_str(), &count));
      std::cerr << "{\"sentences\":" << rp_corpus_size(corpus.get())
                << ",\"variants\":" << count << "}\n";
    } else if (*mock) {
      if (config.dim < 1) throw UsageError("--dim must be >= 1");
      std::size_t blocks = 0;
      check(rp_mock_embed(in.c_str(), config.dim, config.seed, out.c_str(), &blocks));
      std::cerr << "{\"embedder\":\"mock\",\"dim\":" << config.dim
                << ",\"seed\":" << config.seed << ",\"blocks\":" << blocks
                << ",\"boundary_tokens\":\"none\"}\n";
    } else if (*score) {
      CorpusPtr corpus = read_corpus(conllu);
      rp_scores *raw = nullptr;
      check(rp_scores_from_dump(dump_path.c_str(), corpus.get(), &raw));
      ScoresPtr scores(raw);
      check(rp_scores_write(scores.get(), out.c_str()));
      std::cerr << "{\"sentences\":" << rp_scores_size(scores.get()) << "}\n";
    } else if (*parse) {
      rp_parse_options options = parse_options_from(config);
      const bool chain = options.mode == RP_MODE_LEFT || options.mode == RP_MODE_RIGHT;
      if (conllu.empty()) {
        if (!chain || scores_path.empty()) {
          throw UsageError("parse needs SCORES and CONLLU (chain modes: --conllu only)");
        }
        conllu = scores_path;  // a lone positional in chain mode is the treebank
        scores_path.clear();
      }
      if (!chain && scores_path.empty()) throw UsageError("--mode " + config.mode + " needs scores");
      if (!trace_path.empty()) options.trace_path = trace_path.c_str();
      CorpusPtr corpus = read_corpus(conllu);
      ScoresPtr scores;
      if (!scores_path.empty()) scores = read_scores(scores_path);
      rp_trees *raw = nullptr;
      check(rp_parse(scores.get(), corpus.get(), &options, &raw));
      TreesPtr trees(raw);
      const std::string target = out.empty() || out == "-" ? "/dev/stdout" : out;
      check(rp_corpus_write(corpus.get(), trees.get(), target.c_str()));
    } else if (*eval) {
      if (parsed_path.empty() && scores_path.empty()) {
        throw UsageError("eval needs --parsed and/or --scores");
      }
      if ((!words_csv.empty() || !tags_csv.empty()) && scores_path.empty()) {
        throw UsageError("--words-csv/--tags-csv need --scores");
      }
      if (!(config.leaf_factor > 0.0)) throw UsageError("--leaf-factor must be > 0");
      CorpusPtr gold = read_corpus(conllu);
      TreesPtr trees;
      if (!parsed_path.empty()) {
        CorpusPtr parsed = read_corpus(parsed_path);
        rp_trees *raw = nullptr;
        check(rp_trees_from_corpus(parsed.get(), &raw));
        trees.reset(raw);
      }
      ScoresPtr scores;
      if (!scores_path.empty()) scores = read_scores(scores_path);
      rp_eval_options options;
      rp_eval_options_init(&options);
      options.leaf_factor = config.leaf_factor;
      options.punct_override = config.punct_override ? 1 : 0;
      char *json = nullptr;
      check(rp_evaluate(gold.get(), trees.get(), scores.get(), &options, &json));
      StringPtr report(json);
      emit(out, report.get());
      if (!words_csv.empty() || !tags_csv.empty()) {
        check(rp_write_figure_data(scores.get(), gold.get(),
                                   words_csv.empty() ? nullptr : words_csv.c_str(),
                                   tags_csv.empty() ? nullptr : tags_csv.c_str()));
      }
    } else if (*table) {
      rp_table_format table_format;
      if (format == "markdown") {
        table_format = RP_TABLE_MARKDOWN;
      } else if (format == "csv") {
        table_format = RP_TABLE_CSV;
      } else {
        throw UsageError("--format must be markdown or csv");
      }
      rp_parse_options options = parse_options_from(config);
      ScoresPtr scores = read_scores(scores_path);
      CorpusPtr gold = read_corpus(conllu);
      char *text = nullptr;
      check(rp_table1(scores.get(), gold.get(), &options, table_format, &text));
      StringPtr owned(text);
      emit(out, owned.get());
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
