#include "delsumm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace delsumm {

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "fact",      "issue",    "ruling_by_lower_court", "precedent",
    "statute",   "argument", "ratio",                 "final_judgement",
};

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// One sentence-level record, whichever layout it came from.
struct Record {
  std::size_t line = 0;
  std::string doc_id;
  std::optional<int> sent_id;
  std::string text;
  std::optional<std::string> role;
};

std::string required_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw MalformedRecord(line, std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

std::optional<int> optional_int(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer())
    throw MalformedRecord(line, std::string("field '") + key + "' must be an integer");
  return it->get<int>();
}

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key,
                                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw MalformedRecord(line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Record sentence_record(const nlohmann::json& obj, std::string doc_id, std::size_t line) {
  if (!obj.is_object()) throw MalformedRecord(line, "sentence record is not an object");
  Record r;
  r.line = line;
  r.doc_id = std::move(doc_id);
  r.sent_id = optional_int(obj, "sent_id", line);
  r.text = required_string(obj, "text", line);
  r.role = optional_string(obj, "role", line);
  return r;
}

std::vector<Record> read_records(std::istream& in) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!obj.is_object()) throw MalformedRecord(line_no, "record is not a JSON object");
    std::string doc_id = required_string(obj, "doc_id", line_no);
    if (auto it = obj.find("sentences"); it != obj.end()) {
      if (!it->is_array()) throw MalformedRecord(line_no, "'sentences' must be an array");
      for (const auto& s : *it) records.push_back(sentence_record(s, doc_id, line_no));
    } else {
      records.push_back(sentence_record(obj, std::move(doc_id), line_no));
    }
  }
  return records;
}

// Groups consecutive records by doc_id.
std::vector<std::vector<Record>> group_records(std::vector<Record> records) {
  std::vector<std::vector<Record>> groups;
  std::unordered_set<std::string> seen;
  for (auto& r : records) {
    if (groups.empty() || groups.back().front().doc_id != r.doc_id) {
      if (!seen.insert(r.doc_id).second)
        throw MalformedRecord(r.line, "sentences of document '" + r.doc_id + "' are not contiguous");
      groups.emplace_back();
    }
    groups.back().push_back(std::move(r));
  }
  return groups;
}

LabeledDocument build_document(const std::vector<Record>& records) {
  LabeledDocument doc;
  doc.doc_id = records.front().doc_id;
  std::unordered_set<int> ids;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const Record& r = records[k];
    if (!r.role) throw MalformedRecord(r.line, "missing string field 'role'");
    if (!r.sent_id) throw MalformedRecord(r.line, "missing integer field 'sent_id'");
    Sentence s;
    s.id = *r.sent_id;
    if (s.id < 0) throw MalformedRecord(r.line, "sent_id must be non-negative");
    if (!ids.insert(s.id).second)
      throw MalformedRecord(r.line, "duplicate sent_id " + std::to_string(s.id));
    s.text = trim(r.text);
    try {
      s.role = parse_role(*r.role);
    } catch (const UnknownRole&) {
      throw UnknownRole(*r.role, r.line);
    }
    s.position = static_cast<int>(k) + 1;
    s.word_count = static_cast<int>(tokenize(s.text).size());
    if (s.word_count == 0) throw EmptySentence(k);
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

TextSummary build_summary(const std::vector<Record>& records) {
  TextSummary summary;
  summary.doc_id = records.front().doc_id;
  for (const auto& r : records) {
    SummarySentence s;
    if (r.role) {
      try {
        s.role = parse_role(*r.role);
      } catch (const UnknownRole&) {
        throw UnknownRole(*r.role, r.line);
      }
    }
    s.text = trim(r.text);
    summary.sentences.push_back(std::move(s));
  }
  return summary;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileUnreadable(path);
  return in;
}

}  // namespace

std::string_view role_name(RhetoricalRole role) { return kRoleNames[role_index(role)]; }

RhetoricalRole parse_role(std::string_view label) {
  std::string key;
  for (char c : label) {
    if (c == '_' || c == '-' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (RhetoricalRole role : kAllRoles) {
    std::string canonical;
    for (char c : role_name(role))
      if (c != '_') canonical.push_back(c);
    if (key == canonical) return role;
  }
  throw UnknownRole(std::string(label));
}

UnknownRole::UnknownRole(std::string label, std::size_t line)
    : CorpusError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                  "unknown rhetorical role '" + label + "'"),
      label_(std::move(label)),
      line_(line) {}

EmptySentence::EmptySentence(std::size_t index)
    : CorpusError("sentence " + std::to_string(index) + " has no words"), index_(index) {}

MalformedRecord::MalformedRecord(std::size_t line, const std::string& what)
    : CorpusError("line " + std::to_string(line) + ": " + what), line_(line) {}

FileUnreadable::FileUnreadable(const std::string& path)
    : CorpusError("cannot read file '" + path + "'") {}

std::vector<Word> scan_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
    Word w;
    w.raw = std::string(text.substr(i, j - i));
    w.lower = lowercase(w.raw);
    w.begin = i;
    w.end = j;
    words.push_back(std::move(w));
    i = j;
  }
  return words;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto& w : scan_words(text)) tokens.push_back(std::move(w.lower));
  return tokens;
}

std::vector<std::size_t> LabeledDocument::segment(RhetoricalRole role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    if (sentences[i].role == role) out.push_back(i);
  return out;
}

LabeledDocument make_document(
    std::string doc_id, const std::vector<std::tuple<int, std::string, RhetoricalRole>>& rows) {
  LabeledDocument doc;
  doc.doc_id = std::move(doc_id);
  int position = 1;
  for (const auto& [id, text, role] : rows) {
    Sentence s;
    s.id = id;
    s.text = text;
    s.role = role;
    s.position = position++;
    s.word_count = static_cast<int>(tokenize(text).size());
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

std::string_view status_name(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return "Optimal";
    case SolverStatus::FeasibleTimeout: return "FeasibleTimeout";
    case SolverStatus::RelaxedQuotas: return "RelaxedQuotas";
  }
  return "Unknown";
}

std::string TextSummary::joined_text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s.text;
  }
  return out;
}

ReferenceIndex index_references(const std::vector<std::vector<TextSummary>>& files) {
  ReferenceIndex index;
  for (const auto& file : files)
    for (const auto& summary : file) index[summary.doc_id].push_back(summary);
  return index;
}

TextSummary to_text_summary(const Summary& summary, const LabeledDocument& doc) {
  TextSummary out;
  out.doc_id = summary.doc_id;
  for (int id : summary.selected) {
    auto it = std::find_if(doc.sentences.begin(), doc.sentences.end(),
                           [id](const Sentence& s) { return s.id == id; });
    if (it == doc.sentences.end())
      throw std::out_of_range("summary references unknown sentence id " + std::to_string(id));
    out.sentences.push_back({it->role, it->text});
  }
  return out;
}

LabeledDocument parse_document(std::istream& in) {
  auto groups = group_records(read_records(in));
  if (groups.empty()) throw MalformedRecord(0, "no records");
  if (groups.size() > 1)
    throw MalformedRecord(groups[1].front().line, "more than one doc_id in a single-document stream");
  return build_document(groups.front());
}

LabeledDocument parse_document(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_document(in);
}

std::vector<LabeledDocument> parse_corpus(std::istream& in) {
  std::vector<LabeledDocument> docs;
  for (const auto& group : group_records(read_records(in))) {
    try {
      docs.push_back(build_document(group));
    } catch (const EmptySentence& e) {
      throw MalformedRecord(group[e.index()].line, e.what());
    }
  }
  return docs;
}

std::vector<LabeledDocument> load_corpus(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_corpus(in);
}

std::vector<TextSummary> parse_summaries(std::istream& in) {
  std::vector<TextSummary> out;
  for (const auto& group : group_records(read_records(in))) out.push_back(build_summary(group));
  return out;
}

std::vector<TextSummary> load_summaries(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_summaries(in);
}

void serialize_document(const LabeledDocument& doc, std::ostream& out) {
  for (const auto& s : doc.sentences) {
    nlohmann::ordered_json obj;
    obj["doc_id"] = doc.doc_id;
    obj["sent_id"] = s.id;
    obj["text"] = s.text;
    obj["role"] = role_name(s.role);
    out << obj.dump() << '\n';
  }
}

std::string serialize_document(const LabeledDocument& doc) {
  std::ostringstream out;
  serialize_document(doc, out);
  return out.str();
}

void serialize_summary_text(const TextSummary& summary, std::ostream& out) {
  for (const auto& s : summary.sentences) {
    nlohmann::ordered_json obj;
    obj["doc_id"] = summary.doc_id;
    obj["text"] = s.text;
    if (s.role) obj["role"] = role_name(*s.role);
    out << obj.dump() << '\n';
  }
}

std::vector<std::string> read_list_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<std::string> entries;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = lowercase(trim(line));
    if (entry.empty() || entry.front() == '#') continue;
    if (seen.insert(entry).second) entries.push_back(std::move(entry));
  }
  return entries;
}

Lexicons load_lexicons(const std::string& keyword_path, const std::string& statute_path,
                       const std::string& stopword_path) {
  Lexicons lex;
  for (auto& k : read_list_file(keyword_path)) lex.legal_keywords.insert(std::move(k));
  lex.statute_names = read_list_file(statute_path);
  for (auto& w : read_list_file(stopword_path)) lex.stopwords.insert(std::move(w));
  if (lex.stopwords.empty()) lex.warnings.push_back("stopword list '" + stopword_path + "' is empty");
  if (lex.legal_keywords.empty()) lex.warnings.push_back("keyword list '" + keyword_path + "' is empty");
  if (lex.statute_names.empty()) lex.warnings.push_back("statute list '" + statute_path + "' is empty");
  return lex;
}

Lexicons load_lexicon_dir(const std::string& dir) {
  return load_lexicons(dir + "/keywords.txt", dir + "/statutes.txt", dir + "/stopwords.txt");
}

}  // namespace delsumm
