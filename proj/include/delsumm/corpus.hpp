#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace delsumm {

// Rhetorical roles of a case-document sentence. The enumeration order is the
// canonical order used for tie-breaking everywhere (relaxation ladder, tables).
enum class RhetoricalRole {
  Fact,
  Issue,
  RulingByLowerCourt,
  Precedent,
  Statute,
  Argument,
  Ratio,
  FinalJudgement,
};

inline constexpr std::size_t kRoleCount = 8;

inline constexpr std::array<RhetoricalRole, kRoleCount> kAllRoles = {
    RhetoricalRole::Fact,      RhetoricalRole::Issue,
    RhetoricalRole::RulingByLowerCourt, RhetoricalRole::Precedent,
    RhetoricalRole::Statute,   RhetoricalRole::Argument,
    RhetoricalRole::Ratio,     RhetoricalRole::FinalJudgement,
};

constexpr std::size_t role_index(RhetoricalRole role) {
  return static_cast<std::size_t>(role);
}

// Canonical wire name, e.g. "final_judgement".
std::string_view role_name(RhetoricalRole role);

// Case-insensitive; accepts "final_judgement", "FinalJudgement",
// "final judgement" and "final-judgement". Throws UnknownRole otherwise.
RhetoricalRole parse_role(std::string_view label);

// Errors ---------------------------------------------------------------------

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownRole : public CorpusError {
 public:
  explicit UnknownRole(std::string label, std::size_t line = 0);
  const std::string& label() const { return label_; }
  std::size_t line() const { return line_; }

 private:
  std::string label_;
  std::size_t line_;
};

class EmptySentence : public CorpusError {
 public:
  explicit EmptySentence(std::size_t index);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class MalformedRecord : public CorpusError {
 public:
  MalformedRecord(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class FileUnreadable : public CorpusError {
 public:
  explicit FileUnreadable(const std::string& path);
};

// Tokens ---------------------------------------------------------------------

// A word as it appears in the source text. `lower` is what tokenize() yields;
// `raw` keeps the original casing for capitalization heuristics.
struct Word {
  std::string raw;
  std::string lower;
  std::size_t begin = 0;  // byte offsets into the text
  std::size_t end = 0;
};

// Splits on every non-alphanumeric ASCII byte. Bytes >= 0x80 are kept inside
// words so UTF-8 letters do not fragment tokens.
std::vector<Word> scan_words(std::string_view text);

std::vector<std::string> tokenize(std::string_view text);

// Domain types ---------------------------------------------------------------

struct Sentence {
  int id = 0;
  std::string text;
  RhetoricalRole role = RhetoricalRole::Fact;
  int position = 1;
  int word_count = 0;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct LabeledDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }

  // Indices (into `sentences`) of every sentence with the given role.
  std::vector<std::size_t> segment(RhetoricalRole role) const;

  friend bool operator==(const LabeledDocument&, const LabeledDocument&) = default;
};

// Builds a document from (sent_id, text, role) triples; assigns positions
// 1..n in the given order and computes word counts.
LabeledDocument make_document(std::string doc_id,
                              const std::vector<std::tuple<int, std::string, RhetoricalRole>>& rows);

struct Lexicons {
  std::set<std::string> legal_keywords;
  std::vector<std::string> statute_names;
  std::set<std::string> stopwords;
  std::vector<std::string> warnings;
};

enum class SolverStatus { Optimal, FeasibleTimeout, RelaxedQuotas };

std::string_view status_name(SolverStatus status);

struct QuotaRelaxation {
  RhetoricalRole role;
  int requested = 0;
  int granted = 0;
};

struct Summary {
  std::string doc_id;
  std::vector<int> selected;  // sentence ids, document order
  int word_count = 0;
  std::map<RhetoricalRole, int> per_segment_counts;
  double objective = 0.0;
  SolverStatus solver_status = SolverStatus::Optimal;
  // false when the search stopped on a node or time budget
  bool proven_optimal = true;
  std::vector<QuotaRelaxation> relaxations;
};

// A summary as plain text sentences, used for references and for candidate
// summaries read back from disk. Roles are optional.
struct SummarySentence {
  std::optional<RhetoricalRole> role;
  std::string text;
};

struct TextSummary {
  std::string doc_id;
  std::vector<SummarySentence> sentences;

  std::string joined_text() const;
};

// Reference summaries per doc_id; one entry per annotator.
using ReferenceIndex = std::map<std::string, std::vector<TextSummary>>;

// Merges reference files (each holding one summary per document) by doc_id.
ReferenceIndex index_references(const std::vector<std::vector<TextSummary>>& files);

// Text of the selected sentences, in summary order, with their roles.
TextSummary to_text_summary(const Summary& summary, const LabeledDocument& doc);

// Parsing / serialization ----------------------------------------------------

// Parses a single document. Accepts either JSON lines with one sentence record
// per line ({"doc_id","sent_id","text","role"}) or a single document record
// {"doc_id", "sentences": [{"sent_id","text","role"}, ...]}. All records must
// share one doc_id.
LabeledDocument parse_document(std::istream& in);
LabeledDocument parse_document(std::string_view text);

// Parses a whole corpus: documents are runs of consecutive records with the
// same doc_id.
std::vector<LabeledDocument> parse_corpus(std::istream& in);
std::vector<LabeledDocument> load_corpus(const std::string& path);

// Reference summaries use the same record layout; role and sent_id are
// optional.
std::vector<TextSummary> parse_summaries(std::istream& in);
std::vector<TextSummary> load_summaries(const std::string& path);

// Writes one JSON line per sentence.
void serialize_document(const LabeledDocument& doc, std::ostream& out);
std::string serialize_document(const LabeledDocument& doc);
void serialize_summary_text(const TextSummary& summary, std::ostream& out);

// Lexicon files: UTF-8, one entry per line, '#' comment lines skipped.
// Entries are lowercased and deduplicated; an empty stopword list adds a
// warning instead of failing.
Lexicons load_lexicons(const std::string& keyword_path,
                       const std::string& statute_path,
                       const std::string& stopword_path);

// keywords.txt, statutes.txt and stopwords.txt inside `dir`.
Lexicons load_lexicon_dir(const std::string& dir);

std::vector<std::string> read_list_file(const std::string& path);

}  // namespace delsumm
