#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "delsumm/corpus.hpp"

namespace delsumm {

// Ordered by precedence: a span claimed by an earlier kind is not reused by a
// later one.
enum class ContentKind { StatuteMention, LegalKeyword, NounPhrase };

std::string_view kind_name(ContentKind kind);

struct ContentWord {
  std::string surface;  // canonical lowercased phrase
  ContentKind kind = ContentKind::NounPhrase;
  int score = 1;

  friend bool operator==(const ContentWord&, const ContentWord&) = default;
};

// Half-open range of word indices into scan_words(sentence.text).
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;

  bool overlaps(const WordSpan& other) const {
    return begin < other.end && other.begin < end;
  }
};

// Statute mentions in a sentence: lexicon act names at token boundaries,
// "section|sec.|article" followed within three tokens by a number, and
// capitalized runs ending in "Act" with an optional four-digit year.
std::vector<WordSpan> find_statute_spans(std::string_view text, const Lexicons& lexicons);

// Legal-dictionary phrases at token boundaries.
std::vector<WordSpan> find_keyword_spans(std::string_view text, const Lexicons& lexicons);

bool detect_statute(const Sentence& sentence, const Lexicons& lexicons);

// "<Capitalized run> v.|vs.|vs|versus <Capitalized run>".
bool detect_precedent(const Sentence& sentence);

// Noun-phrase source for content words. The default is a capitalization
// heuristic; a tagger-backed extractor can be swapped in.
class NounPhraseExtractor {
 public:
  virtual ~NounPhraseExtractor() = default;

  // `claimed` are spans already taken by higher-precedence content words;
  // returned spans must not overlap them.
  virtual std::vector<WordSpan> extract(std::string_view text, const Lexicons& lexicons,
                                        const std::vector<WordSpan>& claimed) const = 0;
};

// Maximal runs of capitalized words, minus a lone sentence-initial word, minus
// runs overlapping a claimed span. Leading stopwords of a run are dropped
// ("The Supreme Court" -> "supreme court").
class CapitalizedRunExtractor final : public NounPhraseExtractor {
 public:
  std::vector<WordSpan> extract(std::string_view text, const Lexicons& lexicons,
                                const std::vector<WordSpan>& claimed) const override;
};

// Noun phrases of a sentence with statute mentions claimed first.
std::set<std::string> extract_noun_phrases(const Sentence& sentence, const Lexicons& lexicons);

struct ContentScores {
  int statute = 5;
  int keyword = 3;
  int noun_phrase = 1;

  int of(ContentKind kind) const;
};

// Inverted index between sentences and content words. Sentence indices are
// positions in doc.sentences (0-based), word indices are positions in `words`.
struct ContentIndex {
  std::vector<ContentWord> words;
  std::vector<std::vector<std::size_t>> per_sentence;  // C(i), sorted
  std::vector<std::vector<std::size_t>> per_word;      // T_j, sorted
  std::vector<bool> statute_flag;                      // a_i
  std::vector<bool> precedent_flag;                    // p_i

  std::size_t word_count() const { return words.size(); }
};

ContentIndex build_content_index(const LabeledDocument& doc, const Lexicons& lexicons,
                                 const ContentScores& scores = {},
                                 const NounPhraseExtractor* extractor = nullptr);

}  // namespace delsumm
