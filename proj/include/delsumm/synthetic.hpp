#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "delsumm/corpus.hpp"

namespace delsumm {

// Template-driven generator of labeled judgments, used for tests, demos and
// structural runs of the comparison and robustness commands.
struct SyntheticOptions {
  std::size_t min_sentences = 30;
  std::size_t max_sentences = 70;
  std::size_t annotators = 2;
  // reference summaries aim at this fraction of the document's tokens
  double summary_fraction = 0.3;
};

struct SyntheticCorpus {
  std::vector<LabeledDocument> documents;
  // one entry per annotator, each holding a summary of every document
  std::vector<std::vector<TextSummary>> reference_files;
  Lexicons lexicons;
};

// Uniform integer in [0, bound) without relying on library distributions, so
// the same seed gives the same corpus on every standard library.
std::size_t draw_index(std::mt19937_64& gen, std::size_t bound);

std::vector<std::string> default_stopwords();
std::vector<std::string> default_legal_keywords();
std::vector<std::string> default_statute_names();
Lexicons default_lexicons();

LabeledDocument generate_document(const std::string& doc_id, std::mt19937_64& gen,
                                  const SyntheticOptions& options = {});

// Annotator-style extract: every Final judgement and Issue sentence, then a
// random pick of the rest until the length target is reached.
TextSummary generate_reference(const LabeledDocument& doc, std::mt19937_64& gen, double fraction);

SyntheticCorpus generate_corpus(std::size_t documents, std::uint64_t seed, const SyntheticOptions& options = {});

}  // namespace delsumm
